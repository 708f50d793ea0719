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

#include "magnoent/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "magnoent/errors.hpp"

namespace magnoent::analysis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in_phase_range(double theta) { return theta >= 0.0 && theta < kTwoPi; }

}  // namespace

std::string_view label(ModePair pair) noexcept {
  switch (pair) {
    case ModePair::CavityMagnon: return "a-m";
    case ModePair::CavityPhonon: return "a-b";
    case ModePair::MagnonPhonon: return "m-b";
  }
  return "";
}

std::pair<std::size_t, std::size_t> indices(ModePair pair) noexcept {
  switch (pair) {
    case ModePair::CavityMagnon: return {kCavity, kMagnon};
    case ModePair::CavityPhonon: return {kCavity, kPhonon};
    case ModePair::MagnonPhonon: return {kMagnon, kPhonon};
  }
  return {0, 0};
}

ModePair pair_from_label(std::string_view text) {
  for (ModePair p : kAllPairs) {
    if (label(p) == text) return p;
  }
  throw InvalidInput("unknown mode pair '" + std::string(text) + "' (expected a-m, a-b or m-b)");
}

PhasePairing PhasePairing::detuning_flip() {
  return {0.5 * std::numbers::pi, 1.5 * std::numbers::pi};
}

PhasePairing PhasePairing::dissipation_flip() { return {0.0, std::numbers::pi}; }

void PhasePairing::validate() const {
  if (!in_phase_range(forward) || !in_phase_range(backward)) {
    throw InvalidInput("pairing phases must lie in [0, 2pi)");
  }
  if (forward == backward) throw InvalidInput("pairing phases must differ");
}

double EntanglementMeasures::bipartite(ModePair pair) const noexcept {
  switch (pair) {
    case ModePair::CavityMagnon: return E_am;
    case ModePair::CavityPhonon: return E_ab;
    case ModePair::MagnonPhonon: return E_mb;
  }
  return 0.0;
}

double bipartite_entanglement(const gaussian::CovarianceMatrix& v, ModePair pair) {
  if (v.n_modes() != 3) throw InvalidInput("bipartite entanglement expects the three-mode state");
  const auto [i, j] = indices(pair);
  return gaussian::log_negativity(v, {{i}, {j}});
}

EntanglementMeasures measure_entanglement(const gaussian::CovarianceMatrix& v) {
  if (v.n_modes() != 3) throw InvalidInput("entanglement measures expect the three-mode state");
  const auto phys = gaussian::check_physicality(v);
  if (!phys.is_physical) {
    throw InvalidState("steady state is unphysical (min eigenvalue " +
                       std::to_string(phys.min_eigenvalue) + ")");
  }
  EntanglementMeasures m;
  m.min_physical_eigenvalue = phys.min_eigenvalue;
  m.E_am = bipartite_entanglement(v, ModePair::CavityMagnon);
  m.E_ab = bipartite_entanglement(v, ModePair::CavityPhonon);
  m.E_mb = bipartite_entanglement(v, ModePair::MagnonPhonon);
  for (std::size_t focus = 0; focus < 3; ++focus) {
    m.residuals[focus] = gaussian::residual_contangle(v, focus);
  }
  m.R_min = std::max(0.0, *std::min_element(m.residuals.begin(), m.residuals.end()));
  return m;
}

PointResult evaluate_point(const model::SystemParams& params, std::optional<double> kerr_coefficient) {
  PointResult out;
  model::DerivedQuantities derived;
  try {
    derived = model::derive(params);
  } catch (const ParametricResonance&) {
    out.stable = false;
    out.max_real_part = std::numeric_limits<double>::infinity();
    return out;
  }
  const Matrix6d gamma = model::build_drift(params, derived);
  const auto report = steady::stability(gamma);
  out.stable = report.is_stable;
  out.max_real_part = report.max_real_part;
  if (params.is_driven() && kerr_coefficient) {
    out.validity = model::assess_validity(*derived.m_s, *derived.omega_rabi, *derived.total_spins,
                                          params.spin_s, *kerr_coefficient, report.is_stable);
  }
  if (!out.stable) return out;
  out.steady = steady::solve_lyapunov(gamma, model::build_diffusion(params));
  out.measures = measure_entanglement(out.steady->covariance);
  return out;
}

double contrast_ratio(double forward, double backward) {
  if (!(forward >= 0.0) || !(backward >= 0.0)) {
    throw InvalidInput("contrast ratio inputs must be non-negative");
  }
  const double sum = forward + backward;
  if (sum < 1e-12) return 0.0;
  return std::abs(forward - backward) / sum;
}

std::string_view label(ContrastMeasure measure) noexcept {
  switch (measure) {
    case ContrastMeasure::CE_am: return "C_E_am";
    case ContrastMeasure::CE_ab: return "C_E_ab";
    case ContrastMeasure::CE_mb: return "C_E_mb";
    case ContrastMeasure::CR: return "C_R";
  }
  return "";
}

ContrastMeasure contrast_from_label(std::string_view text) {
  for (auto m : {ContrastMeasure::CE_am, ContrastMeasure::CE_ab, ContrastMeasure::CE_mb,
                 ContrastMeasure::CR}) {
    if (label(m) == text) return m;
  }
  throw ConfigError("unknown contrast measure '" + std::string(text) +
                    "' (expected C_E_am, C_E_ab, C_E_mb or C_R)");
}

std::optional<double> ContrastRecord::get(ContrastMeasure measure) const noexcept {
  switch (measure) {
    case ContrastMeasure::CE_am: return CE_am;
    case ContrastMeasure::CE_ab: return CE_ab;
    case ContrastMeasure::CE_mb: return CE_mb;
    case ContrastMeasure::CR: return CR;
  }
  return std::nullopt;
}

ContrastRecord contrast_between(PointResult forward, PointResult backward) {
  ContrastRecord rec{std::move(forward), std::move(backward), {}, {}, {}, {}};
  if (rec.forward.measures && rec.backward.measures) {
    const auto& f = *rec.forward.measures;
    const auto& b = *rec.backward.measures;
    rec.CE_am = contrast_ratio(f.E_am, b.E_am);
    rec.CE_ab = contrast_ratio(f.E_ab, b.E_ab);
    rec.CE_mb = contrast_ratio(f.E_mb, b.E_mb);
    rec.CR = contrast_ratio(f.R_min, b.R_min);
  }
  return rec;
}

ContrastRecord directional_measures(const model::SystemParams& params, const PhasePairing& pairing) {
  pairing.validate();
  model::SystemParams fwd = params;
  fwd.theta = pairing.forward;
  model::SystemParams bwd = params;
  bwd.theta = pairing.backward;
  auto rec = contrast_between(evaluate_point(fwd), evaluate_point(bwd));
  if (!rec.forward.stable && !rec.backward.stable) {
    throw NoMeasures("both phases of the pairing are unstable");
  }
  return rec;
}

WignerEllipse wigner_ellipse(const Eigen::Matrix2d& block) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block);
  const auto& evals = solver.eigenvalues();
  const Eigen::Vector2d major = solver.eigenvectors().col(1);
  double angle = std::atan2(major(1), major(0)) * 180.0 / std::numbers::pi;
  angle = std::fmod(angle + 360.0, 180.0);
  return {evals(1), evals(0), angle};
}

double trapezoid_2d(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values) {
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  if (nx < 2 || ny < 2 || values.size() != nx * ny) {
    throw InvalidInput("trapezoid_2d needs at least a 2x2 grid matching the value count");
  }
  const double hx = (xs.back() - xs.front()) / static_cast<double>(nx - 1);
  const double hy = (ys.back() - ys.front()) / static_cast<double>(ny - 1);
  double sum = 0.0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double wy = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
      sum += wx * wy * values[iy * nx + ix];
    }
  }
  return sum * hx * hy;
}

WignerGrid magnon_wigner(const model::SystemParams& params, double theta, std::size_t points,
                         double extent_sigma) {
  if (points < 2) throw InvalidInput("Wigner grid needs at least 2 points per axis");
  if (!(extent_sigma > 0.0)) throw InvalidInput("Wigner grid extent must be positive");
  model::SystemParams p = params;
  p.theta = theta;
  const auto point = evaluate_point(p);
  if (!point.stable) throw NoSteadyState("no steady state at the requested squeezing phase");

  WignerGrid grid;
  grid.theta = theta;
  grid.block = point.steady->covariance.mode_block(kMagnon);
  grid.ellipse = wigner_ellipse(grid.block);
  const double half = extent_sigma * std::sqrt(grid.ellipse.var_major);
  grid.xs.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid.xs[k] = -half + 2.0 * half * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  grid.ys = grid.xs;

  std::vector<std::pair<double, double>> coords;
  coords.reserve(points * points);
  for (double y : grid.ys) {
    for (double x : grid.xs) coords.emplace_back(x, y);
  }
  grid.values = gaussian::wigner_single_mode(grid.block, coords);
  grid.integral = trapezoid_2d(grid.xs, grid.ys, grid.values);
  return grid;
}

}  // namespace magnoent::analysis
