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

#include "magnoent/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "magnoent/errors.hpp"

namespace magnoent::gaussian {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_square_even(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw InvalidInput("covariance matrix must be square with even positive dimension, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd data) : data_(std::move(data)) {
  require_square_even(data_);
  if (!data_.allFinite()) {
    throw InvalidInput("covariance matrix has non-finite entries");
  }
  const double scale = std::max(1.0, data_.cwiseAbs().maxCoeff());
  const double asym = (data_ - data_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw InvalidInput("covariance matrix is not symmetric (max |V - V^T| = " +
                       std::to_string(asym) + ")");
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(dim, dim));
}

CovarianceMatrix CovarianceMatrix::restrict_to(std::span<const std::size_t> modes) const {
  const auto k = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd sub(2 * k, 2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    if (modes[r] >= n_modes()) throw InvalidInput("mode index out of range");
    for (Eigen::Index c = 0; c < k; ++c) {
      const auto mr = static_cast<Eigen::Index>(2 * modes[r]);
      const auto mc = static_cast<Eigen::Index>(2 * modes[c]);
      sub.block<2, 2>(2 * r, 2 * c) = data_.block<2, 2>(mr, mc);
    }
  }
  return CovarianceMatrix(std::move(sub));
}

Eigen::Matrix2d CovarianceMatrix::mode_block(std::size_t mode) const {
  if (mode >= n_modes()) throw InvalidInput("mode index out of range");
  const auto m = static_cast<Eigen::Index>(2 * mode);
  return data_.block<2, 2>(m, m);
}

void Partition::validate(std::size_t n_modes) const {
  if (party_a.empty() || party_b.empty()) {
    throw InvalidInput("partition parties must be non-empty");
  }
  std::vector<bool> seen(n_modes, false);
  for (const auto* party : {&party_a, &party_b}) {
    for (std::size_t m : *party) {
      if (m >= n_modes) throw InvalidInput("partition mode index out of range");
      if (seen[m]) throw InvalidInput("partition parties overlap or repeat a mode");
      seen[m] = true;
    }
  }
}

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const std::size_t n = v.n_modes();
  const Eigen::MatrixXcd m =
      std::complex<double>(0.0, 1.0) * (symplectic_form(n) * v.data()).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eigendecomposition of i*Omega*V failed");
  }
  std::vector<double> moduli;
  moduli.reserve(2 * n);
  for (const auto& ev : solver.eigenvalues()) moduli.push_back(std::abs(ev));
  std::sort(moduli.begin(), moduli.end());
  // Eigenvalues come in +-nu pairs, so sorted moduli are pairwise equal.
  std::vector<double> nu(n);
  for (std::size_t k = 0; k < n; ++k) nu[k] = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  return nu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, std::span<const std::size_t> party) {
  if (party.empty()) throw InvalidInput("partial transpose needs a non-empty party");
  Eigen::MatrixXd out = v.data();
  for (std::size_t m : party) {
    if (m >= v.n_modes()) throw InvalidInput("partial transpose mode index out of range");
    const auto p = static_cast<Eigen::Index>(2 * m + 1);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return CovarianceMatrix(std::move(out));
}

PhysicalityReport check_physicality(const CovarianceMatrix& v) {
  const std::size_t n = v.n_modes();
  const Eigen::MatrixXcd h = v.data().cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) *
                                 symplectic_form(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const double min_ev = solver.eigenvalues().minCoeff();
  return {min_ev >= -kPhysicalityTolerance, min_ev};
}

double log_negativity(const CovarianceMatrix& v, const Partition& partition) {
  partition.validate(v.n_modes());
  const std::size_t na = partition.party_a.size();
  const std::size_t nb = partition.party_b.size();
  if (na + nb > 3 || std::min(na, nb) != 1) {
    throw InvalidInput("log negativity supports 1|1 and 1|2 partitions only");
  }
  const auto report = check_physicality(v);
  if (!report.is_physical) {
    throw InvalidState("unphysical covariance matrix (min eigenvalue of V + i Omega/2 = " +
                       std::to_string(report.min_eigenvalue) + ")");
  }
  std::vector<std::size_t> modes(partition.party_a);
  modes.insert(modes.end(), partition.party_b.begin(), partition.party_b.end());
  const CovarianceMatrix sub = v.restrict_to(modes);

  std::vector<std::size_t> local_a(na);
  for (std::size_t k = 0; k < na; ++k) local_a[k] = k;
  const auto nu = symplectic_eigenvalues(partial_transpose(sub, local_a));
  return std::max(0.0, -std::log(2.0 * nu.front()));
}

double contangle(const CovarianceMatrix& v, const Partition& partition) {
  const double e = log_negativity(v, partition);
  return e * e;
}

double residual_contangle(const CovarianceMatrix& v, std::size_t focus_mode) {
  if (v.n_modes() != 3) throw InvalidInput("residual contangle requires exactly three modes");
  if (focus_mode >= 3) throw InvalidInput("focus mode index out of range");
  const std::size_t j = (focus_mode + 1) % 3;
  const std::size_t k = (focus_mode + 2) % 3;
  const double whole = contangle(v, {{focus_mode}, {j, k}});
  return whole - contangle(v, {{focus_mode}, {j}}) - contangle(v, {{focus_mode}, {k}});
}

double clamp_residual(double residual) noexcept {
  return (residual < 0.0 && residual >= -kResidualClampTolerance) ? 0.0 : residual;
}

double min_residual_contangle(const CovarianceMatrix& v) {
  double lowest = residual_contangle(v, 0);
  for (std::size_t focus = 1; focus < 3; ++focus) {
    lowest = std::min(lowest, residual_contangle(v, focus));
  }
  return std::max(0.0, lowest);
}

std::vector<double> wigner_single_mode(const Eigen::Matrix2d& v_sub,
                                       std::span<const std::pair<double, double>> grid) {
  if (!v_sub.allFinite() || std::abs(v_sub(0, 1) - v_sub(1, 0)) >
                                kSymmetryTolerance * std::max(1.0, v_sub.cwiseAbs().maxCoeff())) {
    throw InvalidInput("Wigner block must be finite and symmetric");
  }
  const double det = v_sub.determinant();
  const double scale = v_sub.cwiseAbs().maxCoeff();
  if (!(v_sub(0, 0) > 0.0) || !(det > 1e-14 * scale * scale)) {
    throw InvalidState("Wigner block is singular or not positive definite");
  }
  const Eigen::Matrix2d inv = v_sub.inverse();
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  std::vector<double> w;
  w.reserve(grid.size());
  for (const auto& [x, y] : grid) {
    const double q = inv(0, 0) * x * x + 2.0 * inv(0, 1) * x * y + inv(1, 1) * y * y;
    w.push_back(norm * std::exp(-0.5 * q));
  }
  return w;
}

}  // namespace magnoent::gaussian
