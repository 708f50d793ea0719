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

#include "magnoent/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magnoent/errors.hpp"
#include "magnoent/steady.hpp"

namespace magnoent::model {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

constexpr double kResonanceTolerance = 1e-6;
constexpr double kSelfConsistencyTolerance = 1e-9;
constexpr int kMaxFixedPointIterations = 200;
constexpr int kMaxBisectionIterations = 200;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

const DrivenCoupling& driven_or_throw(const SystemParams& params, const char* op) {
  const auto* driven = std::get_if<DrivenCoupling>(&params.coupling);
  if (driven == nullptr) {
    throw InvalidInput(std::string(op) +
                       " needs a driven coupling (g_m and drive), not a direct G_m");
  }
  return *driven;
}

}  // namespace

void SystemParams::validate() const {
  require(finite_pos(omega_a) && finite_pos(omega_m) && finite_pos(omega_b),
          "mode frequencies omega_a, omega_m, omega_b must be positive");
  if (omega_drive) require(finite_nonneg(*omega_drive), "drive frequency must be >= 0");
  require(std::isfinite(delta_a) && std::isfinite(delta_m), "detunings must be finite");
  require(finite_pos(kappa_a) && finite_pos(kappa_m) && finite_pos(gamma_b),
          "kappa_a, kappa_m and gamma_b must be positive for a steady state to exist");
  require(finite_nonneg(g_a), "g_a must be >= 0");
  require(finite_nonneg(upsilon), "upsilon must be >= 0");
  require(std::isfinite(theta), "theta must be finite");
  require(finite_nonneg(temperature), "temperature must be >= 0");
  require(finite_pos(spin_density) && finite_pos(spin_s) && finite_pos(gyromagnetic_ratio),
          "spin density, spin number and gyromagnetic ratio must be positive");
  if (const auto* direct = std::get_if<DirectCoupling>(&coupling)) {
    require(finite_nonneg(direct->G_m), "G_m must be >= 0");
  } else {
    const auto& driven = std::get<DrivenCoupling>(coupling);
    require(finite_nonneg(driven.g_m), "g_m must be >= 0");
    require(finite_nonneg(driven.drive_field), "drive field must be >= 0");
    require(finite_pos(driven.sphere_diameter), "sphere diameter must be positive");
    if (driven.rabi_override) require(finite_nonneg(*driven.rabi_override), "Rabi frequency must be >= 0");
  }
}

double SystemParams::detuning_a() const noexcept {
  return omega_drive ? omega_a - *omega_drive : delta_a;
}

double SystemParams::detuning_m() const noexcept {
  return omega_drive ? omega_m - *omega_drive : delta_m;
}

SystemParams working_point() {
  SystemParams p;
  p.omega_m = kTwoPi * 10e9;
  p.omega_a = p.omega_m;
  p.omega_b = kTwoPi * 10e6;
  p.delta_a = p.omega_b;
  p.delta_m = p.omega_b;
  p.kappa_a = kTwoPi * 3e6;
  p.kappa_m = p.kappa_a / 5.0;
  p.gamma_b = kTwoPi * 100.0;
  p.g_a = kTwoPi * 4.8e6;
  p.coupling = DirectCoupling{kTwoPi * 4.8e6};
  p.upsilon = 1.3 * p.kappa_a;
  p.theta = 1.5 * std::numbers::pi;
  p.temperature = 0.01;
  return p;
}

double thermal_occupation(double omega, double temperature) {
  require(std::isfinite(omega) && omega > 0.0, "thermal occupation needs omega > 0");
  require(finite_nonneg(temperature), "thermal occupation needs temperature >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * temperature));
}

double total_spins(double sphere_diameter, double spin_density) {
  require(finite_pos(sphere_diameter), "sphere diameter must be positive");
  require(finite_pos(spin_density), "spin density must be positive");
  return spin_density * (std::numbers::pi / 6.0) * sphere_diameter * sphere_diameter * sphere_diameter;
}

double rabi_frequency(double drive_field, double n_spins, double gyromagnetic_ratio) {
  require(finite_nonneg(drive_field), "drive field must be >= 0");
  require(finite_pos(n_spins) && finite_pos(gyromagnetic_ratio),
          "spin count and gyromagnetic ratio must be positive");
  return std::sqrt(5.0) / 4.0 * gyromagnetic_ratio * std::sqrt(n_spins) * drive_field;
}

double resolve_rabi(const SystemParams& params) {
  const auto& driven = driven_or_throw(params, "Rabi frequency");
  if (driven.rabi_override) return *driven.rabi_override;
  return rabi_frequency(driven.drive_field, total_spins(driven.sphere_diameter, params.spin_density),
                        params.gyromagnetic_ratio);
}

cd magnon_amplitude_exact_at(const SystemParams& params, double delta_m_bar, double rabi) {
  const double da = params.detuning_a();
  const double ka = params.kappa_a;
  const double km = params.kappa_m;
  const double g2 = params.g_a * params.g_a;
  const double cavity_norm = da * da + ka * ka;
  const cd plus = cd(ka, da) * cd(km, delta_m_bar) + g2;
  const cd minus = cd(ka, -da) * cd(km, -delta_m_bar) + g2;
  const double squeeze2 = params.upsilon * params.upsilon * cavity_norm;
  const cd den = minus * plus - squeeze2;
  if (std::abs(den) <= kResonanceTolerance * std::max(std::abs(minus * plus), squeeze2)) {
    throw ParametricResonance("exact steady-amplitude denominator vanishes (parametric resonance)");
  }
  const cd num = minus * cd(ka, da) + params.upsilon * cavity_norm * std::polar(1.0, params.theta);
  return num / den * rabi;
}

cd magnon_amplitude_approx_at(const SystemParams& params, double delta_m_bar, double rabi) {
  const double da = params.detuning_a();
  require(da != 0.0, "approximate amplitude needs a non-zero cavity detuning");
  const double eta = params.g_a * params.g_a / da - delta_m_bar;
  const double u2 = params.upsilon * params.upsilon;
  const double den = eta * eta - u2;
  if (std::abs(den) <= kResonanceTolerance * std::max(eta * eta, u2) || den == 0.0) {
    throw ParametricResonance("approximate steady-amplitude denominator vanishes (Upsilon ~ |eta|)");
  }
  return (params.upsilon * std::polar(1.0, params.theta) + kI * eta) / den * rabi;
}

AmplitudeSolution solve_magnon_amplitude(const SystemParams& params, AmplitudeForm form) {
  const auto& driven = driven_or_throw(params, "steady magnon amplitude");
  const double rabi = resolve_rabi(params);
  const double delta_m = params.detuning_m();
  const double g_m = driven.g_m;

  const auto amplitude = [&](double dm_bar) {
    return form == AmplitudeForm::Exact ? magnon_amplitude_exact_at(params, dm_bar, rabi)
                                        : magnon_amplitude_approx_at(params, dm_bar, rabi);
  };
  // Magnetostrictive shift g_m q_s with q_s = -g_m |m_s|^2 / omega_b.
  const auto shifted = [&](double dm_bar) {
    return delta_m - g_m * g_m * std::norm(amplitude(dm_bar)) / params.omega_b;
  };
  const auto finish = [&](double dm_bar, int iters) {
    const cd m = amplitude(dm_bar);
    return AmplitudeSolution{m, dm_bar, -g_m * std::norm(m) / params.omega_b, iters};
  };

  double x = delta_m;
  for (int it = 1; it <= kMaxFixedPointIterations; ++it) {
    const double next = shifted(x);
    const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
    if (std::abs(next - x) <= kSelfConsistencyTolerance * scale) return finish(next, it);
    x = next;
  }

  // The fixed-point map oscillates for strong shifts; fall back to bisection on
  // f(x) = x - shifted(x), which is >= 0 at x = delta_m and negative far below it.
  const auto f = [&](double dm_bar) { return dm_bar - shifted(dm_bar); };
  double hi = delta_m;
  double step = std::max(delta_m - shifted(delta_m), params.kappa_m);
  double lo = delta_m - step;
  int guard = 0;
  while (f(lo) >= 0.0) {
    hi = lo;
    step *= 2.0;
    lo = delta_m - step;
    if (++guard > 200) throw NumericalError("no self-consistent magnon detuning found", f(lo));
  }
  int it = kMaxFixedPointIterations;
  for (int b = 0; b < kMaxBisectionIterations; ++b, ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) hi = mid; else lo = mid;
    if (hi - lo <= 1e-12 * std::max(std::abs(hi), std::abs(lo))) break;
  }
  return finish(0.5 * (lo + hi), it);
}

cd steady_magnon_amplitude_exact(const SystemParams& params) {
  return solve_magnon_amplitude(params, AmplitudeForm::Exact).m_s;
}

cd steady_magnon_amplitude_approx(const SystemParams& params) {
  return solve_magnon_amplitude(params, AmplitudeForm::Approximate).m_s;
}

double approximation_regime_ratio(const SystemParams& params) {
  double dm_bar = params.detuning_m();
  if (params.is_driven()) dm_bar = solve_magnon_amplitude(params, AmplitudeForm::Exact).delta_m_bar;
  return std::min(std::abs(params.detuning_a()) / params.kappa_a, std::abs(dm_bar) / params.kappa_m);
}

cd effective_coupling(const SystemParams& params) {
  if (const auto* direct = std::get_if<DirectCoupling>(&params.coupling)) return {direct->G_m, 0.0};
  const auto& driven = std::get<DrivenCoupling>(params.coupling);
  return kI * std::sqrt(2.0) * driven.g_m * steady_magnon_amplitude_exact(params);
}

DerivedQuantities derive(const SystemParams& params) {
  params.validate();
  DerivedQuantities d{};
  d.delta_a = params.detuning_a();
  d.delta_m = params.detuning_m();
  d.delta_m_bar = d.delta_m;
  if (const auto* direct = std::get_if<DirectCoupling>(&params.coupling)) {
    d.G_m_effective = {direct->G_m, 0.0};
  } else {
    const auto& driven = std::get<DrivenCoupling>(params.coupling);
    const auto sol = solve_magnon_amplitude(params, AmplitudeForm::Exact);
    d.delta_m_bar = sol.delta_m_bar;
    d.m_s = sol.m_s;
    d.q_s = sol.q_s;
    d.G_m_effective = kI * std::sqrt(2.0) * driven.g_m * sol.m_s;
    d.omega_rabi = resolve_rabi(params);
    d.total_spins = total_spins(driven.sphere_diameter, params.spin_density);
  }
  d.delta_theta = params.upsilon * std::sin(params.theta);
  d.kappa_theta = params.upsilon * std::cos(params.theta);
  d.delta_theta_plus = d.delta_m_bar + d.delta_theta;
  d.delta_theta_minus = d.delta_m_bar - d.delta_theta;
  d.kappa_theta_plus = params.kappa_m + d.kappa_theta;
  d.kappa_theta_minus = params.kappa_m - d.kappa_theta;
  d.n_a = thermal_occupation(params.omega_a, params.temperature);
  d.n_m = thermal_occupation(params.omega_m, params.temperature);
  d.n_b = thermal_occupation(params.omega_b, params.temperature);
  return d;
}

Matrix6d build_drift(const SystemParams& params, const DerivedQuantities& d) {
  // The drift is real; the phase of the complex G_m is absorbed into the
  // mechanical quadrature reference, so only its modulus enters.
  const double g_m = std::abs(d.G_m_effective);
  const double ka = params.kappa_a;
  const double da = d.delta_a;
  const double ga = params.g_a;
  Matrix6d m;
  // clang-format off
  m <<  -ka,   da,                  0.0,                  ga,   0.0,            0.0,
        -da,  -ka,                  -ga,                 0.0,   0.0,            0.0,
        0.0,   ga, -d.kappa_theta_plus,  d.delta_theta_plus,  -g_m,            0.0,
        -ga,  0.0, -d.delta_theta_minus, -d.kappa_theta_minus, 0.0,            0.0,
        0.0,  0.0,                  0.0,                 0.0,   0.0,  params.omega_b,
        0.0,  0.0,                  0.0,                 g_m, -params.omega_b, -params.gamma_b;
  // clang-format on
  return m;
}

Matrix6d build_drift(const SystemParams& params) { return build_drift(params, derive(params)); }

Matrix6d build_diffusion(const SystemParams& params) {
  params.validate();
  const double na = thermal_occupation(params.omega_a, params.temperature);
  const double nm = thermal_occupation(params.omega_m, params.temperature);
  const double nb = thermal_occupation(params.omega_b, params.temperature);
  Matrix6d lambda = Matrix6d::Zero();
  lambda(0, 0) = lambda(1, 1) = params.kappa_a * (2.0 * na + 1.0);
  lambda(2, 2) = lambda(3, 3) = params.kappa_m * (2.0 * nm + 1.0);
  lambda(5, 5) = params.gamma_b * (2.0 * nb + 1.0);
  return lambda;
}

ValidityReport assess_validity(cd m_s, double rabi, double n_spins, double spin_s,
                               double kerr_coefficient, bool stable) {
  ValidityReport r{};
  const double amp = std::abs(m_s);
  r.magnon_occupation = amp * amp;
  r.excitation_bound = 2.0 * n_spins * spin_s;
  r.kerr_coefficient = kerr_coefficient;
  const double kerr_term = kerr_coefficient * amp * amp * amp;
  if (rabi > 0.0) {
    r.kerr_drive_ratio = kerr_term / rabi;
  } else {
    r.kerr_drive_ratio = kerr_term > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.low_excitation_ok = r.magnon_occupation < kLowExcitationFraction * r.excitation_bound;
  r.kerr_ok = r.kerr_drive_ratio < kKerrRatioLimit;
  r.stable = stable;
  return r;
}

ValidityReport validity_report(const SystemParams& params, double kerr_coefficient) {
  driven_or_throw(params, "validity report");
  require(finite_nonneg(kerr_coefficient), "Kerr coefficient must be >= 0");
  const auto d = derive(params);
  const bool stable = steady::stability(build_drift(params, d)).is_stable;
  return assess_validity(*d.m_s, *d.omega_rabi, *d.total_spins, params.spin_s, kerr_coefficient,
                         stable);
}

}  // namespace magnoent::model
