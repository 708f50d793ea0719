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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "magnoent/gaussian.hpp"
#include "magnoent/model.hpp"
#include "magnoent/steady.hpp"

namespace magnoent::analysis {

inline constexpr std::size_t kCavity = 0;
inline constexpr std::size_t kMagnon = 1;
inline constexpr std::size_t kPhonon = 2;

enum class ModePair { CavityMagnon, CavityPhonon, MagnonPhonon };

inline constexpr std::array<ModePair, 3> kAllPairs = {ModePair::CavityMagnon, ModePair::CavityPhonon,
                                                      ModePair::MagnonPhonon};

std::string_view label(ModePair pair) noexcept;
std::pair<std::size_t, std::size_t> indices(ModePair pair) noexcept;
ModePair pair_from_label(std::string_view label);

/// Two squeezing phases whose measures are compared.
struct PhasePairing {
  double forward = 0.0;
  double backward = 0.0;

  /// {pi/2, 3pi/2}: flips the sign of Upsilon sin(theta), keeps cos(theta) = 0.
  static PhasePairing detuning_flip();
  /// {0, pi}: flips the sign of Upsilon cos(theta), keeps sin(theta) = 0.
  static PhasePairing dissipation_flip();

  void validate() const;
};

struct EntanglementMeasures {
  double E_am = 0.0;
  double E_ab = 0.0;
  double E_mb = 0.0;
  double R_min = 0.0;
  /// Unclamped residual contangles with focus a, m, b.
  std::array<double, 3> residuals{};
  double min_physical_eigenvalue = 0.0;

  double bipartite(ModePair pair) const noexcept;
};

struct PointResult {
  bool stable = false;
  double max_real_part = 0.0;
  /// Present only for stable points.
  std::optional<steady::SteadyState> steady;
  std::optional<EntanglementMeasures> measures;
  std::optional<model::ValidityReport> validity;
};

double bipartite_entanglement(const gaussian::CovarianceMatrix& v, ModePair pair);

EntanglementMeasures measure_entanglement(const gaussian::CovarianceMatrix& v);

/// Steady state and all measures at one parameter point. Unstable points come
/// back with stable = false and empty measures rather than throwing. The
/// validity report is filled when the coupling is driven and a Kerr
/// coefficient is given.
PointResult evaluate_point(const model::SystemParams& params,
                           std::optional<double> kerr_coefficient = std::nullopt);

/// |f - b| / (f + b), defined as 0 when f + b < 1e-12.
double contrast_ratio(double forward, double backward);

inline constexpr double kIdealContrast = 0.99;

enum class ContrastMeasure { CE_am, CE_ab, CE_mb, CR };
std::string_view label(ContrastMeasure measure) noexcept;
ContrastMeasure contrast_from_label(std::string_view label);

struct ContrastRecord {
  PointResult forward;
  PointResult backward;
  std::optional<double> CE_am;
  std::optional<double> CE_ab;
  std::optional<double> CE_mb;
  std::optional<double> CR;

  std::optional<double> get(ContrastMeasure measure) const noexcept;
};

/// Contrasts from the same parameters at a pair of phases. Contrasts are null
/// when either phase is unstable.
ContrastRecord contrast_between(PointResult forward, PointResult backward);

/// Solves both phases of the pairing. Throws NoMeasures when both are unstable.
ContrastRecord directional_measures(const model::SystemParams& params, const PhasePairing& pairing);

struct WignerEllipse {
  double var_major;
  double var_minor;
  /// Major-axis angle from the x quadrature, degrees in [0, 180).
  double angle_deg;
};

WignerEllipse wigner_ellipse(const Eigen::Matrix2d& block);

struct WignerGrid {
  double theta;
  Eigen::Matrix2d block;
  std::vector<double> xs;
  std::vector<double> ys;
  /// Row-major: values[iy * xs.size() + ix].
  std::vector<double> values;
  double integral;
  WignerEllipse ellipse;
};

/// Wigner function of the steady magnon mode on a square grid spanning
/// +-extent_sigma times the largest principal standard deviation.
WignerGrid magnon_wigner(const model::SystemParams& params, double theta, std::size_t points,
                         double extent_sigma = 6.0);

/// 2-D trapezoidal rule over a uniform grid, row-major values.
double trapezoid_2d(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values);

}  // namespace magnoent::analysis
