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

// Parameter-grid sweeps. sweep() runs grid points in parallel with OpenMP;
// sweep_serial() is the single-threaded reference it is tested against.
// Both produce records in row-major order (first axis slowest).

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "magnoent/analysis.hpp"

namespace magnoent::sweep {

enum class AxisName { Upsilon, Theta, G_a, Temperature, G_m, Delta_a, Delta_m };

std::string_view label(AxisName name) noexcept;
/// Throws ConfigError for unknown names.
AxisName axis_from_label(std::string_view label);

struct Axis {
  AxisName name;
  /// SI values (rad/s, rad, K).
  std::vector<double> values;
};

std::vector<double> linspace(double start, double stop, std::size_t points);

struct SweepSpec {
  std::vector<Axis> axes;
  std::optional<analysis::PhasePairing> pairing;
  std::optional<double> kerr_coefficient;
};

struct SweepRecord {
  std::vector<double> coords;
  analysis::PointResult point;
  std::optional<analysis::ContrastRecord> contrast;
};

struct SweepResult {
  std::vector<Axis> axes;
  std::optional<analysis::PhasePairing> pairing;
  std::vector<SweepRecord> records;

  std::size_t stable_count() const noexcept;
  std::size_t unstable_count() const noexcept { return records.size() - stable_count(); }
  /// Largest Lyapunov residual over every solved point, including paired phases.
  double max_lyapunov_residual() const noexcept;
};

/// Throws ConfigError on an empty axis list, more than two axes, an empty axis,
/// or an axis that does not apply to the coupling/detuning mode in use.
void validate_spec(const model::SystemParams& base, const SweepSpec& spec);

std::size_t grid_size(const SweepSpec& spec) noexcept;

/// Parameters at flat row-major grid index `index`.
model::SystemParams point_params(const model::SystemParams& base, const SweepSpec& spec,
                                 std::size_t index, std::vector<double>* coords = nullptr);

SweepRecord evaluate_record(const model::SystemParams& base, const SweepSpec& spec,
                            std::size_t index);

SweepResult sweep_serial(const model::SystemParams& base, const SweepSpec& spec);

/// OpenMP-parallel sweep; threads <= 0 uses the OpenMP default.
SweepResult sweep(const model::SystemParams& base, const SweepSpec& spec, int threads = 0);

struct Interval {
  double lo;
  double hi;
};

/// Maximal runs of consecutive temperature points whose contrast is >= 0.99.
/// Requires a 1-D temperature sweep with a pairing.
std::vector<Interval> temperature_thresholds(const SweepResult& result,
                                             analysis::ContrastMeasure measure);

}  // namespace magnoent::sweep
