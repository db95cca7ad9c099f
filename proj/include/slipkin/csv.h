// Copyright 2026 The slipkin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLIPKIN_CSV_H_
#define SLIPKIN_CSV_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace slipkin {

// A numeric CSV table with a single header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of `name` in the header; throws std::out_of_range if absent.
  std::size_t Column(const std::string& name) const;
};

// Parses a numeric CSV document. Throws std::runtime_error on ragged rows or
// non-numeric cells.
CsvTable ReadCsv(std::istream& in);
CsvTable ReadCsvFile(const std::string& path);

// Shortest round-trippable formatting (17 significant digits).
std::string FormatDouble(double value);

void WriteCsvHeader(std::ostream& out, std::span<const std::string> header);
void WriteCsvRow(std::ostream& out, std::span<const double> values);

}  // namespace slipkin

#endif  // SLIPKIN_CSV_H_
