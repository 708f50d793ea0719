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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "magnoent/errors.hpp"
#include "magnoent/gaussian.hpp"

using namespace magnoent;
using namespace magnoent::gaussian;
using magnoent::testing::Gen;
using magnoent::testing::tmsv;

namespace {

// Two-mode closed form: nu_-^2 = (S - sqrt(S^2 - 4 det V)) / 2 with
// S = det A + det B - 2 det C of the partially transposed state.
double two_mode_closed_form_en(const CovarianceMatrix& v) {
  const Eigen::MatrixXd& m = v.data();
  const double a = m.block<2, 2>(0, 0).determinant();
  const double b = m.block<2, 2>(2, 2).determinant();
  const double c = m.block<2, 2>(0, 2).determinant();
  const double sigma = a + b - 2.0 * c;
  const double nu = std::sqrt(0.5 * (sigma - std::sqrt(sigma * sigma - 4.0 * m.determinant())));
  return std::max(0.0, -std::log(2.0 * nu));
}

Eigen::MatrixXd tmsv_vacuum(double r) {
  Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(6, 6);
  v.block<4, 4>(0, 0) = tmsv(r).data();
  return v;
}

}  // namespace

TEST_SUITE("symplectic eigenvalues") {
  TEST_CASE("vacuum of three modes") {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix::vacuum(3));
    REQUIRE(nu.size() == 3);
    for (double x : nu) CHECK(x == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("thermal single mode with two quanta") {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(2.5 * Eigen::MatrixXd::Identity(2, 2)));
    REQUIRE(nu.size() == 1);
    CHECK(nu[0] == doctest::Approx(2.5).epsilon(1e-14));
  }

  TEST_CASE("two-mode squeezed vacuum is pure") {
    const auto nu = symplectic_eigenvalues(tmsv(0.5));
    CHECK(nu[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nu[1] == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("sorted ascending") {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
    v.diagonal() << 3.0, 3.0, 0.75, 0.75;
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(v));
    CHECK(nu[0] == doctest::Approx(0.75));
    CHECK(nu[1] == doctest::Approx(3.0));
  }

  TEST_CASE("physical states never go below one half") {
    Gen gen(11);
    for (int k = 0; k < 200; ++k) {
      for (double x : symplectic_eigenvalues(gen.physical_state(1 + gen.index(3)))) {
        CHECK(x >= 0.5 - 1e-9);
      }
    }
  }
}

TEST_SUITE("covariance matrix validation") {
  TEST_CASE("rejects asymmetric input") {
    Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    v(0, 1) = 0.1;
    CHECK_THROWS_AS(CovarianceMatrix{v}, InvalidInput);
  }

  TEST_CASE("rejects non-finite entries") {
    Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    v(1, 1) = std::nan("");
    CHECK_THROWS_AS(CovarianceMatrix{v}, InvalidInput);
  }

  TEST_CASE("rejects odd dimensions") {
    CHECK_THROWS_AS(CovarianceMatrix{Eigen::MatrixXd::Identity(3, 3)}, InvalidInput);
  }

  TEST_CASE("restrict_to keeps the listed order") {
    Gen gen(3);
    const auto v = gen.physical_state(3);
    const std::size_t modes[] = {2, 0};
    const auto sub = v.restrict_to(modes);
    CHECK(sub(0, 0) == v(4, 4));
    CHECK(sub(1, 3) == v(5, 1));
    CHECK(sub(2, 3) == v(0, 1));
    CHECK(v.mode_block(1)(0, 1) == v(2, 3));
    CHECK_THROWS_AS(v.mode_block(3), InvalidInput);
  }
}

TEST_SUITE("partial transpose") {
  TEST_CASE("vacuum is unchanged") {
    const std::size_t party[] = {1};
    const auto v = CovarianceMatrix::vacuum(3);
    CHECK(partial_transpose(v, party).data() == v.data());
  }

  TEST_CASE("two-mode squeezed vacuum drops to exp(-2r)/2") {
    const std::size_t party[] = {0};
    const auto pt = partial_transpose(tmsv(0.5), party);
    CHECK(pt(1, 3) == doctest::Approx(0.5 * std::sinh(1.0)));
    CHECK(pt(0, 2) == doctest::Approx(0.5 * std::sinh(1.0)));
    CHECK(symplectic_eigenvalues(pt)[0] == doctest::Approx(0.18393972058572117).epsilon(1e-12));
  }

  TEST_CASE("involution") {
    Gen gen(5);
    for (int k = 0; k < 100; ++k) {
      const auto v = gen.physical_state(3);
      const std::size_t party[] = {gen.index(3)};
      const auto twice = partial_transpose(partial_transpose(v, party), party);
      CHECK((twice.data() - v.data()).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }

  TEST_CASE("out of range index") {
    const std::size_t party[] = {3};
    CHECK_THROWS_AS(partial_transpose(CovarianceMatrix::vacuum(3), party), InvalidInput);
  }
}

TEST_SUITE("physicality") {
  TEST_CASE("vacuum sits on the boundary") {
    const auto r = check_physicality(CovarianceMatrix::vacuum(2));
    CHECK(r.is_physical);
    CHECK(r.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-14));
  }

  TEST_CASE("below-vacuum isotropic state is unphysical") {
    const auto r = check_physicality(CovarianceMatrix(0.4 * Eigen::MatrixXd::Identity(6, 6)));
    CHECK_FALSE(r.is_physical);
    CHECK(r.min_eigenvalue == doctest::Approx(-0.1));
  }

  TEST_CASE("squeezed but physical single mode") {
    Eigen::MatrixXd v(2, 2);
    v << 0.5 * std::exp(-1.0), 0.0, 0.0, 0.5 * std::exp(1.0);
    CHECK(check_physicality(CovarianceMatrix(v)).is_physical);
  }
}

TEST_SUITE("log negativity") {
  TEST_CASE("two-mode squeezed vacuum gives 2r") {
    CHECK(log_negativity(tmsv(0.5), {{0}, {1}}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contangle(tmsv(0.5), {{0}, {1}}) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("product of vacua") {
    const auto v = CovarianceMatrix::vacuum(3);
    CHECK(log_negativity(v, {{0}, {1}}) <= 1e-15);
    CHECK(log_negativity(v, {{2}, {0, 1}}) <= 1e-15);
  }

  TEST_CASE("unphysical state is refused") {
    CHECK_THROWS_AS(log_negativity(CovarianceMatrix(0.4 * Eigen::MatrixXd::Identity(4, 4)), {{0}, {1}}),
                    InvalidState);
  }

  TEST_CASE("partition shape checks") {
    const auto v = CovarianceMatrix::vacuum(3);
    CHECK_THROWS_AS(log_negativity(v, {{0}, {0}}), InvalidInput);
    CHECK_THROWS_AS(log_negativity(v, {{}, {1}}), InvalidInput);
    CHECK_THROWS_AS(log_negativity(CovarianceMatrix::vacuum(4), {{0, 1}, {2, 3}}), InvalidInput);
  }

  TEST_CASE("closed-form two-mode oracle agrees with the eigen route") {
    Gen gen(17);
    for (int k = 0; k < 300; ++k) {
      const auto v = gen.physical_state(2);
      CHECK(log_negativity(v, {{0}, {1}}) == doctest::Approx(two_mode_closed_form_en(v)).epsilon(1e-9));
    }
  }

  TEST_CASE("swap invariance") {
    Gen gen(19);
    for (int k = 0; k < 200; ++k) {
      const auto v = gen.physical_state(3);
      CHECK(log_negativity(v, {{0}, {2}}) == doctest::Approx(log_negativity(v, {{2}, {0}})).epsilon(1e-10));
      CHECK(log_negativity(v, {{1}, {0, 2}}) ==
            doctest::Approx(log_negativity(v, {{0, 2}, {1}})).epsilon(1e-10));
    }
  }

  TEST_CASE("product states carry no entanglement") {
    Gen gen(23);
    for (int k = 0; k < 200; ++k) {
      const auto v = gen.product_state(3);
      CHECK(log_negativity(v, {{0}, {1}}) <= 1e-10);
      CHECK(log_negativity(v, {{2}, {0, 1}}) <= 1e-10);
    }
  }

  TEST_CASE("contangle is the squared log negativity") {
    Gen gen(29);
    for (int k = 0; k < 100; ++k) {
      const auto v = gen.physical_state(3);
      const double e = log_negativity(v, {{1}, {2}});
      CHECK(contangle(v, {{1}, {2}}) == e * e);
    }
  }
}

TEST_SUITE("residual contangle") {
  TEST_CASE("three vacua") {
    const auto v = CovarianceMatrix::vacuum(3);
    for (std::size_t f = 0; f < 3; ++f) CHECK(std::abs(residual_contangle(v, f)) <= 1e-30);
    CHECK(min_residual_contangle(v) == 0.0);
  }

  TEST_CASE("pair entanglement with an idle third mode leaves no residual") {
    const CovarianceMatrix v(tmsv_vacuum(0.5));
    CHECK(contangle(v, {{0}, {1, 2}}) == doctest::Approx(contangle(v, {{0}, {1}})).epsilon(1e-12));
    CHECK(residual_contangle(v, 0) == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("needs three modes") {
    CHECK_THROWS_AS(residual_contangle(CovarianceMatrix::vacuum(2), 0), InvalidInput);
    CHECK_THROWS_AS(residual_contangle(CovarianceMatrix::vacuum(3), 3), InvalidInput);
  }

  TEST_CASE("minimum is below every focus mode and never negative") {
    Gen gen(31);
    for (int k = 0; k < 100; ++k) {
      const auto v = gen.physical_state(3, 0.5);
      const double r = min_residual_contangle(v);
      CHECK(r >= 0.0);
      for (std::size_t f = 0; f < 3; ++f) CHECK(r <= std::max(0.0, residual_contangle(v, f)) + 1e-15);
    }
  }

  TEST_CASE("clamping only erases rounding noise") {
    CHECK(clamp_residual(-5e-9) == 0.0);
    CHECK(clamp_residual(-2e-8) == -2e-8);
    CHECK(clamp_residual(0.3) == 0.3);
  }
}

TEST_SUITE("wigner") {
  TEST_CASE("vacuum peak is 1/pi") {
    const std::pair<double, double> origin[] = {{0.0, 0.0}};
    const auto w = wigner_single_mode(0.5 * Eigen::Matrix2d::Identity(), origin);
    CHECK(w[0] == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  }

  TEST_CASE("singular block") {
    const std::pair<double, double> origin[] = {{0.0, 0.0}};
    Eigen::Matrix2d v;
    v << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(wigner_single_mode(v, origin), InvalidState);
  }

  TEST_CASE("random blocks are positive and normalised") {
    Gen gen(37);
    for (int k = 0; k < 30; ++k) {
      const Eigen::Matrix2d v = gen.physical_state(1).data();
      const double sigma = std::sqrt(v.eigenvalues().real().maxCoeff());
      const int n = 161;
      const double h = 12.0 * sigma / (n - 1);
      std::vector<std::pair<double, double>> grid;
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) grid.emplace_back(-6 * sigma + ix * h, -6 * sigma + iy * h);
      }
      const auto w = wigner_single_mode(v, grid);
      double sum = 0.0;
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
          const double wx = (ix == 0 || ix == n - 1) ? 0.5 : 1.0;
          const double wy = (iy == 0 || iy == n - 1) ? 0.5 : 1.0;
          CHECK(w[static_cast<std::size_t>(iy * n + ix)] >= 0.0);
          sum += wx * wy * w[static_cast<std::size_t>(iy * n + ix)];
        }
      }
      CHECK(sum * h * h == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
}
