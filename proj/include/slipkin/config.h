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

#ifndef SLIPKIN_CONFIG_H_
#define SLIPKIN_CONFIG_H_

#include <string>

#include "slipkin/controller.h"
#include "slipkin/simulator.h"
#include "slipkin/tuning.h"

namespace slipkin {

inline constexpr int kSchemaVersion = 1;

struct StabilityOptions {
  double sample_step = 0.1;
  double margin = 0.0;
  double t_final = 70.0;
  // Bounds reported by the assumption check on the reference input.
  double mu1 = 0.1;
  double mu2 = 0.1;
};

// Declarative description of one run. Every subcommand reads the sections
// it needs and ignores the rest.
struct RunConfig {
  SimulationConfig simulation;
  CostWeights weights;
  // Start of the window over which the ultimate bound is measured.
  double transient = 45.0;
  std::vector<double> k1_grid = LogGrid(0.1, 10.0, 20);
  std::vector<double> k2_grid = LogGrid(0.1, 10.0, 20);
  std::vector<double> k3_grid = LogGrid(0.1, 10.0, 20);
  StabilityOptions stability;
  ControllerGains compare_nkc_gains{0.26, 10.0, 0.1, 0.0, 0.0};

  TuningSpec MakeTuningSpec() const;
};

// Parses a JSON document. Relative table paths resolve against `base_dir`.
// Unknown keys and invalid physical values raise ConfigError.
RunConfig ParseRunConfig(const std::string& text,
                         const std::string& base_dir = ".");

// Reads and parses a config file. Unreadable files raise std::runtime_error.
RunConfig LoadRunConfig(const std::string& path);

}  // namespace slipkin

#endif  // SLIPKIN_CONFIG_H_
