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

#include "slipkin/csv.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

namespace slipkin {
namespace {

TEST(CsvTest, RoundTripIsLossless) {
  const std::vector<std::string> header{"a", "b", "c"};
  const std::vector<std::vector<double>> rows{
      {0.1, -1.0 / 3.0, 1e-300},
      {std::numbers::pi, 12345678.901234567, -0.0},
  };
  std::stringstream buffer;
  WriteCsvHeader(buffer, header);
  for (const auto& row : rows) WriteCsvRow(buffer, row);
  const CsvTable table = ReadCsv(buffer);
  EXPECT_EQ(table.header, header);
  EXPECT_EQ(table.rows, rows);
  EXPECT_EQ(table.Column("c"), 2u);
  EXPECT_THROW(table.Column("d"), std::out_of_range);
}

TEST(CsvTest, FormatsInfinity) {
  const double inf = std::numeric_limits<double>::infinity();
  std::stringstream buffer;
  buffer << "F\n" << FormatDouble(inf) << "\n";
  const CsvTable table = ReadCsv(buffer);
  EXPECT_TRUE(std::isinf(table.rows[0][0]));
}

TEST(CsvTest, RejectsMalformedInput) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(ReadCsv(ragged), std::runtime_error);
  std::istringstream text("a\nhello\n");
  EXPECT_THROW(ReadCsv(text), std::runtime_error);
  EXPECT_THROW(ReadCsvFile("/nonexistent/file.csv"), std::runtime_error);
}

}  // namespace
}  // namespace slipkin
