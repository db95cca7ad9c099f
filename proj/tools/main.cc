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

// Command-line front end: simulate, tune, stability, reference, compare.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slipkin/config.h"
#include "slipkin/csv.h"
#include "slipkin/errors.h"
#include "slipkin/reference.h"
#include "slipkin/simulator.h"
#include "slipkin/stability.h"
#include "slipkin/tuning.h"

namespace {

using nlohmann::ordered_json;
using namespace slipkin;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;
  int jobs = 0;
  std::optional<double> step;
  std::optional<double> margin;
};

RunConfig LoadConfig(const Options& options) {
  RunConfig config;
  if (!options.config_path.empty()) {
    try {
      config = LoadRunConfig(options.config_path);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  if (options.step) {
    config.simulation.step = *options.step;
  }
  if (options.margin) {
    config.stability.margin = *options.margin;
  }
  try {
    config.simulation.Validate();
    if (!(config.stability.margin >= 0.0)) {
      throw DomainError("margin must be nonnegative");
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return config;
}

std::ofstream OpenOutput(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void Finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

// foo/bar.csv -> foo/bar.<suffix>
std::string SiblingPath(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string() + "." + suffix;
}

void WriteJson(const ordered_json& j, const std::string& path) {
  std::ofstream out = OpenOutput(path);
  out << j.dump(2) << "\n";
  Finish(out, path);
}

ordered_json GainsJson(const ControllerGains& g) {
  return {{"k1", g.k1}, {"k2", g.k2}, {"k3", g.k3},
          {"gamma1", g.gamma1}, {"gamma2", g.gamma2}};
}

double NonNegativeOrNull(double x) { return std::isfinite(x) ? x : -1.0; }

int RunSimulate(const Options& options) {
  const RunConfig config = LoadConfig(options);
  const TrajectoryLog log = Simulate(config.simulation);
  std::ofstream out = OpenOutput(options.out_path);
  WriteTrajectoryCsv(log, out);
  Finish(out, options.out_path);

  const LogRow& last = log.rows.back();
  ordered_json summary = {
      {"mode", ControllerModeName(log.mode)},
      {"rows", log.rows.size()},
      {"final_error_norm",
       std::hypot(last.error.e1, last.error.e2, last.error.e3)},
      {"final_augmented_error_norm", AugmentedErrorNorm(last)},
      {"cost_F", CostF(log, config.weights, config.simulation.geom)},
      {"floor_events", log.floor_events},
  };
  if (config.transient < last.t) {
    const UltimateBound ub = MeasureUltimateBound(log, config.transient);
    summary["transient"] = config.transient;
    summary["ultimate_bound"] = ub.bound;
    summary["settle_time"] = ub.settle_time;
  }
  WriteJson(summary, SiblingPath(options.out_path, "summary.json"));
  return kExitOk;
}

ordered_json AxisJson(const std::vector<double>& v) {
  return {{"min", v.front()}, {"max", v.back()}, {"count", v.size()},
          {"values", v}};
}

int RunTune(const Options& options) {
  const RunConfig config = LoadConfig(options);
  TuningSpec spec;
  try {
    spec = config.MakeTuningSpec();
    spec.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const int jobs =
      options.jobs > 0
          ? options.jobs
          : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  const TuningResult result = GridSearch(spec, jobs);

  std::ofstream out = OpenOutput(options.out_path);
  WriteCostTableCsv(result, out);
  Finish(out, options.out_path);

  ordered_json summary = {
      {"mode", ControllerModeName(result.mode)},
      {"best_gains", GainsJson(result.best_gains)},
      {"best_F", NonNegativeOrNull(result.best_cost)},
      {"best_index",
       {result.best_index[0], result.best_index[1], result.best_index[2]}},
      {"grid_spec",
       {{"k1", AxisJson(result.k1_values)},
        {"k2", AxisJson(result.k2_values)},
        {"k3", AxisJson(result.k3_values)},
        {"gamma1", spec.gamma1},
        {"gamma2", spec.gamma2},
        {"step", spec.scenario.step},
        {"t_final", spec.scenario.t_final}}},
  };
  if (!std::isfinite(result.best_cost)) {
    summary["best_F"] = nullptr;
    WriteJson(summary, SiblingPath(options.out_path, "summary.json"));
    std::cerr << "every grid point failed to simulate\n";
    return kExitNumeric;
  }
  WriteJson(summary, SiblingPath(options.out_path, "summary.json"));

  // Cost surface over the other two gains at the optimal k2.
  const CostSlice slice = CostSurfaceSlice(result, 1, result.best_gains.k2);
  const std::string slice_path = SiblingPath(options.out_path, "slice_k2.csv");
  std::ofstream slice_out = OpenOutput(slice_path);
  WriteCostSliceCsv(slice, slice_out);
  Finish(slice_out, slice_path);
  return kExitOk;
}

int RunStability(const Options& options) {
  const RunConfig config = LoadConfig(options);
  const StabilityOptions& s = config.stability;
  const double gen_step = std::min(config.simulation.step, s.sample_step);
  if (std::abs(s.sample_step / gen_step - std::round(s.sample_step / gen_step)) >
      1e-6) {
    throw ConfigError("stability.sample_step must be a multiple of step");
  }
  const ReferenceTrajectory trajectory =
      Subsample(GenerateReference(s.t_final, gen_step), s.sample_step);
  const std::vector<ScanSample> scan =
      StabilityScan(trajectory, config.simulation.slip, config.simulation.gains,
                    config.simulation.geom, s.margin);

  std::ofstream out = OpenOutput(options.out_path);
  WriteStabilityCsv(scan, out);
  Finish(out, options.out_path);

  long stable = 0, marginal = 0, unstable = 0, flagged = 0;
  double worst_re = -std::numeric_limits<double>::infinity();
  double max_a_dot = 0.0;
  for (const ScanSample& sample : scan) {
    if (sample.flagged) {
      ++flagged;
      continue;
    }
    worst_re = std::max(worst_re, sample.max_re_lambda);
    max_a_dot = std::max(max_a_dot, sample.max_abs_a_dot);
    switch (sample.criterion.verdict) {
      case Verdict::kStable: ++stable; break;
      case Verdict::kMarginal: ++marginal; break;
      case Verdict::kUnstable: ++unstable; break;
    }
  }
  const AssumptionReport bounds =
      CheckAssumptionBounds(0.0, s.t_final, s.sample_step, s.mu1, s.mu2,
                            config.simulation.geom.wheel_spacing);
  ordered_json violations = ordered_json::array();
  for (const TimeInterval& v : bounds.violations) {
    violations.push_back({v.start, v.end});
  }
  ordered_json summary = {
      {"samples", scan.size()},
      {"stable", stable},
      {"marginal", marginal},
      {"unstable", unstable},
      {"flagged", flagged},
      {"margin", s.margin},
      {"max_re_lambda_unflagged", stable + marginal + unstable > 0
                                      ? ordered_json(worst_re)
                                      : ordered_json(nullptr)},
      {"max_abs_a_dot", max_a_dot},
      {"assumption_bounds",
       {{"mu1", s.mu1},
        {"mu2", s.mu2},
        {"inf_v_ref", bounds.inf_v},
        {"inf_two_v_plus_b_omega", bounds.inf_two_v_plus_b_omega},
        {"inf_two_v_minus_b_omega", bounds.inf_two_v_minus_b_omega},
        {"violations", violations}}},
  };
  WriteJson(summary, SiblingPath(options.out_path, "summary.json"));
  return kExitOk;
}

int RunReference(const Options& options) {
  const RunConfig config = LoadConfig(options);
  const ReferenceTrajectory trajectory = GenerateReference(
      config.simulation.t_final, config.simulation.step);
  std::ofstream out = OpenOutput(options.out_path);
  const std::vector<std::string> header = {"t",        "x_ref", "y_ref",
                                           "theta_ref", "v_ref", "omega_ref"};
  WriteCsvHeader(out, header);
  for (const ReferenceSample& s : trajectory) {
    const double row[] = {s.t,           s.pose.x,  s.pose.y,
                          s.pose.theta,  s.input.v, s.input.omega};
    WriteCsvRow(out, row);
  }
  Finish(out, options.out_path);
  return kExitOk;
}

double PositionError(const LogRow& row) {
  return std::hypot(row.error.e1, row.error.e2);
}

double RmsPositionError(const TrajectoryLog& log, double from) {
  double sum = 0.0;
  long n = 0;
  for (const LogRow& row : log.rows) {
    if (row.t >= from) {
      sum += PositionError(row) * PositionError(row);
      ++n;
    }
  }
  return n > 0 ? std::sqrt(sum / static_cast<double>(n)) : 0.0;
}

int RunCompare(const Options& options) {
  const RunConfig config = LoadConfig(options);
  SimulationConfig akc = config.simulation;
  akc.mode = ControllerMode::kAdaptive;
  SimulationConfig nkc = config.simulation;
  nkc.mode = ControllerMode::kNonAdaptive;
  nkc.gains = config.compare_nkc_gains;
  try {
    akc.Validate();
    nkc.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const TrajectoryLog a = Simulate(akc);
  const TrajectoryLog n = Simulate(nkc);

  std::ofstream out = OpenOutput(options.out_path);
  const std::vector<std::string> header = {
      "t",       "e1_akc",  "e2_akc",  "e3_akc",  "pos_err_akc",
      "e1_nkc",  "e2_nkc",  "e3_nkc",  "pos_err_nkc"};
  WriteCsvHeader(out, header);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const LogRow& ra = a.rows[i];
    const LogRow& rn = n.rows[i];
    const double row[] = {ra.t,        ra.error.e1, ra.error.e2,
                          ra.error.e3, PositionError(ra), rn.error.e1,
                          rn.error.e2, rn.error.e3, PositionError(rn)};
    WriteCsvRow(out, row);
  }
  Finish(out, options.out_path);

  const double window = 10.0;
  ordered_json summary = {
      {"akc_gains", GainsJson(akc.gains)},
      {"nkc_gains", GainsJson(nkc.gains)},
      {"rms_window_start", window},
      {"rms_position_error_akc", RmsPositionError(a, window)},
      {"rms_position_error_nkc", RmsPositionError(n, window)},
      {"cost_F_akc", CostF(a, config.weights, akc.geom)},
      {"cost_F_nkc", CostF(n, config.weights, nkc.geom)},
  };
  WriteJson(summary, SiblingPath(options.out_path, "summary.json"));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slip-aware differential-drive tracking simulator"};
  app.require_subcommand(1);
  Options options;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", options.config_path,
                              "JSON run configuration");
    if (config_required) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_path, "Output CSV path")->required();
    sub->add_option("--step", options.step, "Integration step override [s]")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Run one simulation");
  add_common(simulate, true);
  CLI::App* tune = app.add_subcommand("tune", "Grid-search controller gains");
  add_common(tune, true);
  tune->add_option("--jobs", options.jobs, "Worker threads (default: all)")
      ->check(CLI::NonNegativeNumber);
  CLI::App* stability =
      app.add_subcommand("stability", "Frozen-time stability scan");
  add_common(stability, true);
  stability->add_option("--margin", options.margin,
                        "Strict Lienard-Chipart margin");
  CLI::App* reference =
      app.add_subcommand("reference", "Export the reference trajectory");
  add_common(reference, false);
  CLI::App* compare = app.add_subcommand(
      "compare", "Run AKC and NKC on one scenario side by side");
  add_common(compare, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return RunSimulate(options);
    if (tune->parsed()) return RunTune(options);
    if (stability->parsed()) return RunStability(options);
    if (reference->parsed()) return RunReference(options);
    if (compare->parsed()) return RunCompare(options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
