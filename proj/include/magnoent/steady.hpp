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

// Stability and steady-state covariance of linear Gaussian dynamics
//   dV/dt = Gamma V + V Gamma^T + Lambda.

#pragma once

#include <complex>
#include <vector>

#include "magnoent/gaussian.hpp"
#include "magnoent/types.hpp"

namespace magnoent::steady {

struct StabilityReport {
  std::vector<std::complex<double>> eigenvalues;
  double max_real_part;
  double spectral_radius;
  bool is_stable;
};

/// Stable margin, relative to the spectral radius.
inline constexpr double kStabilityMargin = 1e-12;
inline constexpr double kLyapunovResidualLimit = 1e-10;

/// Eigenvalue form of the Routh-Hurwitz test: every Re(lambda) < -margin * rho(Gamma).
StabilityReport stability(const Matrix6d& gamma);

struct SteadyState {
  gaussian::CovarianceMatrix covariance;
  /// ||Gamma V + V Gamma^T + Lambda||_F / ||Lambda||_F
  double residual;
};

double lyapunov_residual(const Matrix6d& gamma, const Matrix6d& lambda, const Matrix6d& v);

/// Solves Gamma V + V Gamma^T = -Lambda through the 36x36 Kronecker system.
/// Throws NoSteadyState for an unstable drift, NumericalError if the residual
/// exceeds kLyapunovResidualLimit.
SteadyState solve_lyapunov(const Matrix6d& gamma, const Matrix6d& lambda);

/// Classical RK4 integration of the covariance flow from v0 to t_final.
/// The step is shrunk so an integer number of steps lands on t_final.
Matrix6d evolve_covariance(const Matrix6d& gamma, const Matrix6d& lambda, const Matrix6d& v0,
                           double t_final, double dt);

}  // namespace magnoent::steady
