// Copyright 2026 The magnoent Authors
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

// Run configuration files (YAML).
//
// Every physical quantity carries its unit in the key name, e.g.
// kappa_a_over_2pi_hz (ordinary frequency, value = omega / 2pi),
// kappa_a_rad_s, upsilon_over_kappa_a, theta_over_pi, temperature_mk.
// Exactly one spelling per quantity may appear. Unknown keys are rejected.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magnoent/analysis.hpp"
#include "magnoent/model.hpp"
#include "magnoent/sweep.hpp"

namespace magnoent::config {

enum class Format { Csv, Json };

struct AxisUnit {
  std::string column;  // e.g. "upsilon_over_kappa_a"
  double scale;        // SI value = column value * scale
};

struct SweepConfig {
  sweep::SweepSpec spec;
  std::vector<AxisUnit> units;
  std::vector<analysis::ContrastMeasure> thresholds;
};

struct WignerConfig {
  std::vector<double> thetas;  // rad
  std::size_t points = 121;
  double extent_sigma = 6.0;
};

struct OutputConfig {
  std::filesystem::path dir = ".";
  std::string basename;
  Format format = Format::Csv;
};

struct RunConfig {
  model::SystemParams params;
  std::optional<double> kerr_coefficient;  // rad/s
  bool dump_covariance = false;
  std::optional<SweepConfig> sweep;
  WignerConfig wigner;
  OutputConfig output;
  /// "key=value" lines echoing the resolved parameters in SI units.
  std::vector<std::string> parameter_echo;
};

/// Built-in parameter block equal to configs/working_point.yaml.
std::string_view default_parameters_yaml();

/// Parses YAML text. `overrides` are "key=value" strings addressing the
/// parameters section ("upsilon_over_2pi_hz=3.9e6", "coupling.g_m_rad_s=0.2");
/// an override replaces any other spelling of the same quantity.
/// Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view yaml_text, const std::vector<std::string>& overrides = {});

/// Reads and parses a file; throws IoError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

Format parse_format(std::string_view text);

}  // namespace magnoent::config
