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

// Linearized cavity-magnon-phonon model with a squeezed magnon drive.
//
// All quantities are SI: angular frequencies and rates in rad/s, temperature
// in kelvin, field in tesla, lengths in metres. The quadrature vector is
// (I_a, J_a, I_m, J_m, q, p).

#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <variant>

#include "magnoent/types.hpp"

namespace magnoent::model {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

/// Effective magnomechanical coupling given directly (real, rad/s).
struct DirectCoupling {
  double G_m = 0.0;
};

/// Coupling derived from the coherent drive: G_m = i sqrt2 g_m m_s.
struct DrivenCoupling {
  double g_m = 0.0;              // bare single-magnon coupling, rad/s
  double drive_field = 0.0;      // H_d, tesla
  double sphere_diameter = 0.0;  // m
  /// Overrides the Rabi frequency computed from drive_field when set.
  std::optional<double> rabi_override;
};

using Coupling = std::variant<DirectCoupling, DrivenCoupling>;

struct SystemParams {
  double omega_a = 0.0;
  double omega_m = 0.0;
  double omega_b = 0.0;
  /// When set, detunings are omega_{a,m} - omega_drive and delta_a/delta_m are ignored.
  std::optional<double> omega_drive;
  double delta_a = 0.0;
  double delta_m = 0.0;
  double kappa_a = 0.0;
  double kappa_m = 0.0;
  double gamma_b = 0.0;
  double g_a = 0.0;
  Coupling coupling = DirectCoupling{};
  double upsilon = 0.0;
  double theta = 0.0;
  double temperature = 0.0;
  double spin_density = 4.22e27;
  double spin_s = 2.5;
  double gyromagnetic_ratio = kTwoPi * 28e9;

  /// Throws InvalidInput on negative or non-finite entries and non-dissipative modes.
  void validate() const;

  double detuning_a() const noexcept;
  /// Bare magnon detuning, before the magnetostrictive shift.
  double detuning_m() const noexcept;

  bool is_driven() const noexcept { return std::holds_alternative<DrivenCoupling>(coupling); }
};

/// Delta_a = Delta_m = omega_b, omega_m/2pi = 10 GHz, kappa_a/2pi = 3 MHz,
/// kappa_m = kappa_a/5, G_m/2pi = g_a/2pi = 4.8 MHz, gamma_b/2pi = 100 Hz,
/// T = 10 mK, Upsilon = 1.3 kappa_a, theta = 3pi/2.
SystemParams working_point();

enum class AmplitudeForm { Exact, Approximate };

struct AmplitudeSolution {
  std::complex<double> m_s;
  double delta_m_bar;  // self-consistent magnon detuning
  double q_s;          // steady mechanical displacement
  int iterations;
};

struct DerivedQuantities {
  double delta_a;
  double delta_m;
  double delta_m_bar;
  double delta_theta;  // Upsilon sin(theta)
  double kappa_theta;  // Upsilon cos(theta)
  double delta_theta_plus;
  double delta_theta_minus;
  double kappa_theta_plus;
  double kappa_theta_minus;
  std::optional<std::complex<double>> m_s;
  std::optional<double> q_s;
  std::complex<double> G_m_effective;
  std::optional<double> omega_rabi;
  std::optional<double> total_spins;
  double n_a;
  double n_m;
  double n_b;
};

struct ValidityReport {
  double magnon_occupation;  // |m_s|^2
  double excitation_bound;   // 2 N_0 s
  double kerr_coefficient;
  double kerr_drive_ratio;   // K |m_s|^3 / Omega_0
  bool low_excitation_ok;
  bool kerr_ok;
  bool stable;

  bool all_ok() const noexcept { return low_excitation_ok && kerr_ok && stable; }
};

inline constexpr double kLowExcitationFraction = 0.01;
inline constexpr double kKerrRatioLimit = 0.5;

/// Bose-Einstein occupancy; 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// N_0 = rho (pi/6) d^3.
double total_spins(double sphere_diameter, double spin_density);

/// Omega_0 = (sqrt5/4) gamma sqrt(N_0) H_d.
double rabi_frequency(double drive_field, double n_spins, double gyromagnetic_ratio);

/// Rabi frequency of a driven coupling: override if set, otherwise from H_d.
double resolve_rabi(const SystemParams& params);

/// Self-consistent (m_s, Delta_m_bar) for a driven coupling.
AmplitudeSolution solve_magnon_amplitude(const SystemParams& params, AmplitudeForm form);

std::complex<double> steady_magnon_amplitude_exact(const SystemParams& params);
std::complex<double> steady_magnon_amplitude_approx(const SystemParams& params);

/// Closed forms at a fixed magnon detuning.
std::complex<double> magnon_amplitude_exact_at(const SystemParams& params, double delta_m_bar,
                                               double rabi);
std::complex<double> magnon_amplitude_approx_at(const SystemParams& params, double delta_m_bar,
                                                double rabi);

/// min(|Delta_a|/kappa_a, |Delta_m_bar|/kappa_m); the approximate form wants this >> 1.
double approximation_regime_ratio(const SystemParams& params);
inline constexpr double kApproximationRegimeWarning = 10.0;

/// i sqrt2 g_m m_s for a driven coupling, the configured real G_m otherwise.
std::complex<double> effective_coupling(const SystemParams& params);

DerivedQuantities derive(const SystemParams& params);

Matrix6d build_drift(const SystemParams& params);
Matrix6d build_drift(const SystemParams& params, const DerivedQuantities& derived);
Matrix6d build_diffusion(const SystemParams& params);

ValidityReport validity_report(const SystemParams& params, double kerr_coefficient);

/// Validity from explicit ingredients; used when the amplitude is supplied externally.
ValidityReport assess_validity(std::complex<double> m_s, double rabi, double n_spins,
                               double spin_s, double kerr_coefficient, bool stable);

}  // namespace magnoent::model
