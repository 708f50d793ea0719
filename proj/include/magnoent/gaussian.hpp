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

// Continuous-variable Gaussian state mathematics.
//
// Quadratures are ordered (x_0, p_0, x_1, p_1, ...) with x = (a + a^dag)/sqrt2
// and p = i(a^dag - a)/sqrt2, so the vacuum has covariance I/2.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace magnoent::gaussian {

/// Real symmetric 2n x 2n quadrature covariance matrix.
///
/// Construction checks symmetry (1e-12 relative) and finiteness only.
/// Physicality is a separate question, see check_physicality(); partial
/// transposes are deliberately allowed to be unphysical.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd data);

  static CovarianceMatrix vacuum(std::size_t n_modes);

  std::size_t n_modes() const noexcept { return static_cast<std::size_t>(data_.rows() / 2); }
  const Eigen::MatrixXd& data() const noexcept { return data_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  /// Sub-covariance over the given modes, in the order listed.
  CovarianceMatrix restrict_to(std::span<const std::size_t> modes) const;

  /// 2x2 block of a single mode.
  Eigen::Matrix2d mode_block(std::size_t mode) const;

 private:
  Eigen::MatrixXd data_;
};

struct Partition {
  std::vector<std::size_t> party_a;
  std::vector<std::size_t> party_b;

  /// Throws InvalidInput unless both parties are non-empty, disjoint and < n_modes.
  void validate(std::size_t n_modes) const;
};

struct PhysicalityReport {
  bool is_physical;
  double min_eigenvalue;
};

inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr double kResidualClampTolerance = 1e-8;

/// Block-diagonal symplectic form with [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// Moduli of the eigenvalues of i*Omega*V, one per degenerate pair, ascending.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// P V P with P flipping the momentum sign of every mode in `party`.
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, std::span<const std::size_t> party);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega.
PhysicalityReport check_physicality(const CovarianceMatrix& v);

/// max(0, -ln 2 nu_min) of the partially transposed sub-state over the partition.
double log_negativity(const CovarianceMatrix& v, const Partition& partition);

/// Gaussian contangle: squared logarithmic negativity.
double contangle(const CovarianceMatrix& v, const Partition& partition);

/// C_{i|jk} - C_{i|j} - C_{i|k} for a three-mode state, unclamped.
double residual_contangle(const CovarianceMatrix& v, std::size_t focus_mode);

/// Rounds values in [-kResidualClampTolerance, 0) up to zero; leaves the rest alone.
double clamp_residual(double residual) noexcept;

/// Minimum of the three residual contangles, clamped at zero.
double min_residual_contangle(const CovarianceMatrix& v);

/// Single-mode Gaussian Wigner function exp(-u^T V^-1 u / 2) / (2 pi sqrt(det V)).
std::vector<double> wigner_single_mode(const Eigen::Matrix2d& v_sub,
                                       std::span<const std::pair<double, double>> grid);

}  // namespace magnoent::gaussian
