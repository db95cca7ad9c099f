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

#include "slipkin/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "slipkin/errors.h"

namespace slipkin {
namespace {

using nlohmann::json;

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
}

void RejectUnknown(const json& j, const std::string& where,
                   std::initializer_list<const char*> allowed) {
  RequireObject(j, where);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double Number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) throw ConfigError(where + " must be finite");
  return value;
}

void ReadNumber(const json& parent, const char* key, const std::string& where,
                double& out) {
  if (parent.contains(key)) out = Number(parent.at(key), where + "." + key);
}

std::string String(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + " must be a string");
  return j.get<std::string>();
}

ControllerMode ParseMode(const json& j, const std::string& where) {
  const std::string mode = String(j, where);
  if (mode == "AKC") return ControllerMode::kAdaptive;
  if (mode == "NKC") return ControllerMode::kNonAdaptive;
  throw ConfigError(where + " must be \"AKC\" or \"NKC\"");
}

void ParseGains(const json& j, const std::string& where,
                ControllerGains& gains) {
  RejectUnknown(j, where, {"k1", "k2", "k3", "gamma1", "gamma2"});
  ReadNumber(j, "k1", where, gains.k1);
  ReadNumber(j, "k2", where, gains.k2);
  ReadNumber(j, "k3", where, gains.k3);
  ReadNumber(j, "gamma1", where, gains.gamma1);
  ReadNumber(j, "gamma2", where, gains.gamma2);
}

SlipProfile ParseSlip(const json& j, const std::string& base_dir) {
  const std::string where = "slip";
  RejectUnknown(j, where, {"kind", "a_l", "a_r", "sigma_scale", "path"});
  if (!j.contains("kind")) throw ConfigError("slip.kind is required");
  const std::string kind = String(j.at("kind"), "slip.kind");
  auto only = [&](std::initializer_list<const char*> keys) {
    RejectUnknown(j, "slip (kind " + kind + ")", keys);
  };
  if (kind == "none") {
    only({"kind"});
    return SlipProfile();
  }
  if (kind == "constant") {
    only({"kind", "a_l", "a_r"});
    double a_l = 1.0;
    double a_r = 1.0;
    ReadNumber(j, "a_l", where, a_l);
    ReadNumber(j, "a_r", where, a_r);
    return SlipProfile::Constant(a_l, a_r);
  }
  if (kind == "training") {
    only({"kind"});
    return SlipProfile::Training();
  }
  if (kind == "validation") {
    only({"kind", "sigma_scale"});
    double scale = 1.0;
    ReadNumber(j, "sigma_scale", where, scale);
    return SlipProfile::Validation(scale);
  }
  if (kind == "table") {
    only({"kind", "path"});
    if (!j.contains("path")) throw ConfigError("slip.path is required");
    std::filesystem::path path = String(j.at("path"), "slip.path");
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    return SlipProfile::LoadCsv(path.string());
  }
  throw ConfigError(
      "slip.kind must be none, constant, training, validation or table");
}

std::vector<double> ParseAxis(const json& j, const std::string& where) {
  if (j.is_array()) {
    std::vector<double> values;
    for (std::size_t i = 0; i < j.size(); ++i) {
      values.push_back(Number(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return values;
  }
  RejectUnknown(j, where, {"min", "max", "count"});
  double lo = 0.1;
  double hi = 10.0;
  double count = 20.0;
  ReadNumber(j, "min", where, lo);
  ReadNumber(j, "max", where, hi);
  ReadNumber(j, "count", where, count);
  if (count != std::floor(count) || count < 1.0) {
    throw ConfigError(where + ".count must be a positive integer");
  }
  return LogGrid(lo, hi, static_cast<int>(count));
}

template <int N>
Eigen::Matrix<double, N, N> ParseMatrix(const json& j,
                                        const std::string& where) {
  Eigen::Matrix<double, N, N> m;
  // A bare number means a multiple of the identity.
  if (j.is_number()) {
    return Number(j, where) * Eigen::Matrix<double, N, N>::Identity();
  }
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(where + " must be a number or an " + std::to_string(N) +
                      "x" + std::to_string(N) + " array");
  }
  for (int r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N) {
      throw ConfigError(where + " rows must have " + std::to_string(N) +
                        " entries");
    }
    for (int c = 0; c < N; ++c) {
      m(r, c) = Number(j[r][c], where);
    }
  }
  return m;
}

void ParseInto(const json& root, const std::string& base_dir,
               RunConfig& config) {
  RejectUnknown(root, "config",
                {"schema_version", "description", "geometry", "controller",
                 "slip", "initial_pose", "initial_estimates", "t_final",
                 "step", "estimate_floor", "cost", "analysis", "tuning",
                 "stability", "compare"});
  if (!root.contains("schema_version")) {
    throw ConfigError("schema_version is required");
  }
  if (!root.at("schema_version").is_number_integer() ||
      root.at("schema_version").get<int>() != kSchemaVersion) {
    throw ConfigError("schema_version must be " +
                      std::to_string(kSchemaVersion));
  }

  SimulationConfig& sim = config.simulation;
  if (root.contains("geometry")) {
    const json& g = root.at("geometry");
    RejectUnknown(g, "geometry", {"wheel_spacing", "wheel_radius"});
    ReadNumber(g, "wheel_spacing", "geometry", sim.geom.wheel_spacing);
    ReadNumber(g, "wheel_radius", "geometry", sim.geom.wheel_radius);
  }
  if (root.contains("controller")) {
    json c = root.at("controller");
    RequireObject(c, "controller");
    if (c.contains("mode")) {
      sim.mode = ParseMode(c.at("mode"), "controller.mode");
      c.erase("mode");
    }
    ParseGains(c, "controller", sim.gains);
  }
  if (root.contains("slip")) sim.slip = ParseSlip(root.at("slip"), base_dir);
  if (root.contains("initial_pose")) {
    const json& p = root.at("initial_pose");
    RejectUnknown(p, "initial_pose", {"x", "y", "theta", "theta_deg"});
    ReadNumber(p, "x", "initial_pose", sim.initial_pose.x);
    ReadNumber(p, "y", "initial_pose", sim.initial_pose.y);
    if (p.contains("theta") && p.contains("theta_deg")) {
      throw ConfigError("initial_pose takes theta or theta_deg, not both");
    }
    ReadNumber(p, "theta", "initial_pose", sim.initial_pose.theta);
    if (p.contains("theta_deg")) {
      sim.initial_pose.theta =
          Number(p.at("theta_deg"), "initial_pose.theta_deg") *
          std::numbers::pi / 180.0;
    }
  }
  if (root.contains("initial_estimates")) {
    const json& e = root.at("initial_estimates");
    RejectUnknown(e, "initial_estimates", {"a_l", "a_r"});
    ReadNumber(e, "a_l", "initial_estimates", sim.initial_estimates.a_left_hat);
    ReadNumber(e, "a_r", "initial_estimates",
               sim.initial_estimates.a_right_hat);
  }
  ReadNumber(root, "t_final", "config", sim.t_final);
  ReadNumber(root, "step", "config", sim.step);
  ReadNumber(root, "estimate_floor", "config", sim.estimate_floor);

  if (root.contains("cost")) {
    const json& c = root.at("cost");
    RejectUnknown(c, "cost", {"Q", "R"});
    if (c.contains("Q")) config.weights.q = ParseMatrix<3>(c.at("Q"), "cost.Q");
    if (c.contains("R")) config.weights.r = ParseMatrix<2>(c.at("R"), "cost.R");
  }
  if (root.contains("analysis")) {
    const json& a = root.at("analysis");
    RejectUnknown(a, "analysis", {"transient"});
    ReadNumber(a, "transient", "analysis", config.transient);
  }
  if (root.contains("tuning")) {
    const json& t = root.at("tuning");
    RejectUnknown(t, "tuning", {"k1", "k2", "k3"});
    if (t.contains("k1")) config.k1_grid = ParseAxis(t.at("k1"), "tuning.k1");
    if (t.contains("k2")) config.k2_grid = ParseAxis(t.at("k2"), "tuning.k2");
    if (t.contains("k3")) config.k3_grid = ParseAxis(t.at("k3"), "tuning.k3");
  }
  if (root.contains("stability")) {
    const json& s = root.at("stability");
    RejectUnknown(s, "stability",
                  {"sample_step", "margin", "t_final", "mu1", "mu2"});
    StabilityOptions& o = config.stability;
    ReadNumber(s, "sample_step", "stability", o.sample_step);
    ReadNumber(s, "margin", "stability", o.margin);
    ReadNumber(s, "t_final", "stability", o.t_final);
    ReadNumber(s, "mu1", "stability", o.mu1);
    ReadNumber(s, "mu2", "stability", o.mu2);
  }
  if (root.contains("compare")) {
    const json& c = root.at("compare");
    RejectUnknown(c, "compare", {"nkc_gains"});
    if (c.contains("nkc_gains")) {
      ParseGains(c.at("nkc_gains"), "compare.nkc_gains",
                 config.compare_nkc_gains);
    }
  }
}

void ValidateConfig(const RunConfig& config) {
  config.simulation.Validate();
  config.weights.Validate();
  if (!(config.transient >= 0.0)) {
    throw DomainError("analysis.transient must be nonnegative");
  }
  const StabilityOptions& s = config.stability;
  if (!(s.sample_step > 0.0) || !(s.t_final > 0.0) || !(s.margin >= 0.0)) {
    throw DomainError(
        "stability needs sample_step > 0, t_final > 0 and margin >= 0");
  }
  config.MakeTuningSpec().Validate();
  ControllerGains nkc = config.compare_nkc_gains;
  nkc.Validate(/*allow_zero_rates=*/true);
}

}  // namespace

TuningSpec RunConfig::MakeTuningSpec() const {
  TuningSpec spec;
  spec.mode = simulation.mode;
  spec.k1_values = k1_grid;
  spec.k2_values = k2_grid;
  spec.k3_values = k3_grid;
  spec.gamma1 = simulation.gains.gamma1;
  spec.gamma2 = simulation.gains.gamma2;
  spec.weights = weights;
  spec.scenario = simulation;
  return spec;
}

RunConfig ParseRunConfig(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  RunConfig config;
  try {
    ParseInto(root, base_dir, config);
    ValidateConfig(config);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const std::runtime_error& e) {
    // Slip table files that fail to load are configuration problems too.
    if (dynamic_cast<const NumericError*>(&e) != nullptr) throw;
    throw ConfigError(e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  return ParseRunConfig(text.str(), parent.empty() ? "." : parent.string());
}

}  // namespace slipkin
