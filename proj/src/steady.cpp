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

#include "magnoent/steady.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magnoent/errors.hpp"

namespace magnoent::steady {

StabilityReport stability(const Matrix6d& gamma) {
  if (!gamma.allFinite()) throw InvalidInput("drift matrix has non-finite entries");
  Eigen::EigenSolver<Matrix6d> solver(gamma, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("drift eigensolver failed", 0.0);

  StabilityReport report;
  report.max_real_part = -std::numeric_limits<double>::infinity();
  report.spectral_radius = 0.0;
  for (const auto& ev : solver.eigenvalues()) {
    report.eigenvalues.push_back(ev);
    report.max_real_part = std::max(report.max_real_part, ev.real());
    report.spectral_radius = std::max(report.spectral_radius, std::abs(ev));
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
            });
  report.is_stable = report.spectral_radius > 0.0 &&
                     report.max_real_part < -kStabilityMargin * report.spectral_radius;
  return report;
}

double lyapunov_residual(const Matrix6d& gamma, const Matrix6d& lambda, const Matrix6d& v) {
  const double denom = lambda.norm();
  const double num = (gamma * v + v * gamma.transpose() + lambda).norm();
  return denom > 0.0 ? num / denom : num;
}

SteadyState solve_lyapunov(const Matrix6d& gamma, const Matrix6d& lambda) {
  const auto report = stability(gamma);
  if (!report.is_stable) {
    throw NoSteadyState("drift matrix is unstable (max Re lambda = " +
                        std::to_string(report.max_real_part) + ")");
  }
  if (!lambda.allFinite()) throw InvalidInput("diffusion matrix has non-finite entries");

  // Column-major vec: vec(Gamma V + V Gamma^T) = (I (x) Gamma + Gamma (x) I) vec(V).
  using Matrix36d = Eigen::Matrix<double, 36, 36>;
  Matrix36d kron = Matrix36d::Zero();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      kron.block<6, 6>(6 * i, 6 * j) += gamma(i, j) * Matrix6d::Identity();
      if (i == j) kron.block<6, 6>(6 * i, 6 * j) += gamma;
    }
  }
  const Eigen::Matrix<double, 36, 1> rhs = -Eigen::Map<const Eigen::Matrix<double, 36, 1>>(lambda.data());
  const Eigen::Matrix<double, 36, 1> x = kron.fullPivLu().solve(rhs);

  Matrix6d v = Eigen::Map<const Matrix6d>(x.data());
  v = 0.5 * (v + v.transpose()).eval();
  const double residual = lyapunov_residual(gamma, lambda, v);
  if (!(residual < kLyapunovResidualLimit)) {
    throw NumericalError("Lyapunov residual " + std::to_string(residual) + " exceeds limit",
                         residual);
  }
  return {gaussian::CovarianceMatrix(Eigen::MatrixXd(v)), residual};
}

Matrix6d evolve_covariance(const Matrix6d& gamma, const Matrix6d& lambda, const Matrix6d& v0,
                           double t_final, double dt) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) {
    throw InvalidInput("evolve_covariance needs dt > 0 and t_final >= 0");
  }
  if ((v0 - v0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, v0.cwiseAbs().maxCoeff())) {
    throw InvalidInput("initial covariance is not symmetric");
  }
  if (t_final == 0.0) return v0;

  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  const double h = t_final / static_cast<double>(steps);
  const Matrix6d gamma_t = gamma.transpose();
  const auto flow = [&](const Matrix6d& v) -> Matrix6d {
    return gamma * v + v * gamma_t + lambda;
  };
  const double blowup = 1e12 * std::max({1.0, v0.norm(), lambda.norm() * t_final});

  Matrix6d v = v0;
  for (long long s = 0; s < steps; ++s) {
    const Matrix6d k1 = flow(v);
    const Matrix6d k2 = flow(v + 0.5 * h * k1);
    const Matrix6d k3 = flow(v + 0.5 * h * k2);
    const Matrix6d k4 = flow(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((s & 0x3ff) == 0 && !(v.norm() < blowup)) {
      throw NumericalError("covariance flow diverged; reduce dt", v.norm());
    }
  }
  if (!v.allFinite() || !(v.norm() < blowup)) {
    throw NumericalError("covariance flow diverged; reduce dt", v.norm());
  }
  return 0.5 * (v + v.transpose());
}

}  // namespace magnoent::steady
