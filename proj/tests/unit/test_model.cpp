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

#include "magnoent/errors.hpp"
#include "magnoent/model.hpp"

using namespace magnoent;
using namespace magnoent::model;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams driven_point() {
  auto p = working_point();
  p.theta = 0.5 * kPi;
  p.coupling = DrivenCoupling{0.2, 2.87e-5, 250e-6, 1.48e15};
  return p;
}

// Drift of the unsqueezed three-mode system, written out independently.
Matrix6d unsqueezed_drift(const SystemParams& p, double G) {
  Matrix6d m = Matrix6d::Zero();
  m(0, 0) = -p.kappa_a; m(0, 1) = p.delta_a; m(0, 3) = p.g_a;
  m(1, 0) = -p.delta_a; m(1, 1) = -p.kappa_a; m(1, 2) = -p.g_a;
  m(2, 1) = p.g_a; m(2, 2) = -p.kappa_m; m(2, 3) = p.delta_m; m(2, 4) = -G;
  m(3, 0) = -p.g_a; m(3, 2) = -p.delta_m; m(3, 3) = -p.kappa_m;
  m(4, 5) = p.omega_b;
  m(5, 3) = G; m(5, 4) = -p.omega_b; m(5, 5) = -p.gamma_b;
  return m;
}

}  // namespace

TEST_SUITE("thermal occupation") {
  TEST_CASE("zero temperature") { CHECK(thermal_occupation(kTwoPi * 1e6, 0.0) == 0.0); }

  TEST_CASE("mechanical mode at 10 mK") {
    CHECK(thermal_occupation(kTwoPi * 10e6, 0.01) == doctest::Approx(20.340618351800998).epsilon(1e-12));
  }

  TEST_CASE("microwave mode at 10 mK is frozen out") {
    CHECK(thermal_occupation(kTwoPi * 10e9, 0.01) == doctest::Approx(1.4359925012169562e-21).epsilon(1e-9));
  }

  TEST_CASE("bad frequency") {
    CHECK_THROWS_AS(thermal_occupation(0.0, 0.01), InvalidInput);
    CHECK_THROWS_AS(thermal_occupation(1.0, -1.0), InvalidInput);
  }
}

TEST_SUITE("spins and drive") {
  TEST_CASE("spin count of a 250 um sphere") {
    const double n = total_spins(250e-6, 4.22e27);
    CHECK(n == doctest::Approx(3.4524794266012832e16).epsilon(1e-14));
    CHECK(n == doctest::Approx(3.5e16).epsilon(0.02));
    CHECK(total_spins(500e-6, 4.22e27) == doctest::Approx(8.0 * n).epsilon(1e-14));
    CHECK_THROWS_AS(total_spins(0.0, 4.22e27), InvalidInput);
  }

  TEST_CASE("Rabi frequency") {
    const double n = total_spins(250e-6, 4.22e27);
    const double g = kTwoPi * 28e9;
    CHECK(rabi_frequency(0.0, n, g) == 0.0);
    const double r = rabi_frequency(2.87e-5, n, g);
    CHECK(r == doctest::Approx(5.2445756823232123e14).epsilon(1e-12));
    CHECK(rabi_frequency(2 * 2.87e-5, n, g) == doctest::Approx(2 * r).epsilon(1e-14));
    CHECK(rabi_frequency(2.87e-5, 4 * n, g) == doctest::Approx(2 * r).epsilon(1e-14));
  }

  TEST_CASE("override wins over the field") {
    const auto p = driven_point();
    CHECK(resolve_rabi(p) == 1.48e15);
    auto q = p;
    std::get<DrivenCoupling>(q.coupling).rabi_override.reset();
    CHECK(resolve_rabi(q) == doctest::Approx(5.2445756823232123e14).epsilon(1e-12));
  }
}

TEST_SUITE("steady magnon amplitude") {
  TEST_CASE("exact form with self-consistent detuning") {
    const auto sol = solve_magnon_amplitude(driven_point(), AmplitudeForm::Exact);
    CHECK(std::abs(sol.m_s) == doctest::Approx(20346356.879017335).epsilon(1e-8));
    CHECK(sol.delta_m_bar == doctest::Approx(62568308.886476167).epsilon(1e-10));
    CHECK(sol.q_s == doctest::Approx(-0.2 * std::norm(sol.m_s) / working_point().omega_b).epsilon(1e-14));
    // the magnetostrictive shift is small next to the bare detuning
    CHECK(std::abs(sol.delta_m_bar - working_point().delta_m) < 0.01 * working_point().delta_m);
  }

  TEST_CASE("approximate form") {
    const auto p = driven_point();
    const double approx = std::abs(steady_magnon_amplitude_approx(p));
    CHECK(approx == doctest::Approx(20387017.712969851).epsilon(1e-8));
    CHECK(approx == doctest::Approx(std::abs(steady_magnon_amplitude_exact(p))).epsilon(0.05));
  }

  TEST_CASE("no drive, no amplitude") {
    auto p = driven_point();
    std::get<DrivenCoupling>(p.coupling).rabi_override = 0.0;
    CHECK(std::abs(steady_magnon_amplitude_exact(p)) == 0.0);
    CHECK(std::abs(effective_coupling(p)) == 0.0);
  }

  TEST_CASE("decoupled magnon reduces to a driven single mode") {
    auto p = driven_point();
    p.upsilon = 0.0;
    p.g_a = 0.0;
    std::get<DrivenCoupling>(p.coupling).g_m = 0.0;
    const auto m = steady_magnon_amplitude_exact(p);
    const auto want = 1.48e15 / std::complex<double>(p.kappa_m, p.delta_m);
    CHECK(std::abs(m - want) <= 1e-12 * std::abs(want));
  }

  TEST_CASE("approximate form without squeezing is i Omega / eta") {
    auto p = driven_point();
    p.upsilon = 0.0;
    std::get<DrivenCoupling>(p.coupling).g_m = 0.0;
    const double eta = p.g_a * p.g_a / p.delta_a - p.delta_m;
    const auto m = steady_magnon_amplitude_approx(p);
    CHECK(std::abs(m - std::complex<double>(0.0, 1.48e15 / eta)) <= 1e-12 * std::abs(m));
  }

  TEST_CASE("approximate form at theta = pi/2 is purely imaginary") {
    const auto m = steady_magnon_amplitude_approx(driven_point());
    CHECK(std::abs(m.real()) <= 1e-12 * std::abs(m));
  }

  TEST_CASE("approximate form is the small-decay limit of the exact one") {
    auto p = driven_point();
    std::get<DrivenCoupling>(p.coupling).g_m = 0.0;
    p.kappa_a = p.delta_a * 1e-4;
    p.kappa_m = p.delta_m * 1e-4;
    p.upsilon = 0.3 * std::abs(p.g_a * p.g_a / p.delta_a - p.delta_m);
    for (double theta : {0.0, 0.7, 2.0, 4.4}) {
      p.theta = theta;
      const auto exact = steady_magnon_amplitude_exact(p);
      const auto approx = steady_magnon_amplitude_approx(p);
      CHECK(std::abs(approx - exact) / std::abs(exact) < 1e-3);
    }
  }

  TEST_CASE("parametric resonance") {
    auto p = driven_point();
    std::get<DrivenCoupling>(p.coupling).g_m = 0.0;
    p.upsilon = std::abs(p.g_a * p.g_a / p.delta_a - p.delta_m);
    CHECK_THROWS_AS(steady_magnon_amplitude_approx(p), ParametricResonance);
  }

  TEST_CASE("direct coupling has no amplitude") {
    CHECK_THROWS_AS(steady_magnon_amplitude_exact(working_point()), InvalidInput);
  }

  TEST_CASE("effective coupling modulus") {
    const auto p = driven_point();
    const auto g = effective_coupling(p);
    const double m = std::abs(steady_magnon_amplitude_exact(p));
    CHECK(std::abs(g) == doctest::Approx(std::sqrt(2.0) * 0.2 * m).epsilon(1e-14));
    CHECK(std::abs(g) == doctest::Approx(5754818.768637887).epsilon(1e-8));
    const auto direct = effective_coupling(working_point());
    CHECK(direct.real() == kTwoPi * 4.8e6);
    CHECK(direct.imag() == 0.0);
  }
}

TEST_SUITE("validity") {
  TEST_CASE("working point with the quoted Rabi frequency and Kerr coefficient") {
    const auto r = validity_report(driven_point(), kTwoPi * 6.4e-9);
    CHECK(r.magnon_occupation == doctest::Approx(413974238248336.02).epsilon(1e-8));
    CHECK(r.excitation_bound == doctest::Approx(2.0 * 2.5 * 3.4524794266012832e16).epsilon(1e-14));
    CHECK(r.kerr_drive_ratio == doctest::Approx(0.22885378545539922).epsilon(1e-8));
    CHECK(r.low_excitation_ok);
    CHECK(r.kerr_ok);
    CHECK(r.stable);
    CHECK(r.all_ok());
  }

  TEST_CASE("no drive with a nonzero amplitude diverges the Kerr ratio") {
    const auto r = assess_validity({1e7, 0.0}, 0.0, 3.5e16, 2.5, 1e-8, true);
    CHECK(std::isinf(r.kerr_drive_ratio));
    CHECK_FALSE(r.kerr_ok);
  }

  TEST_CASE("a hundredfold drive field breaks a check") {
    auto p = driven_point();
    auto& d = std::get<DrivenCoupling>(p.coupling);
    d.rabi_override.reset();
    d.drive_field *= 100.0;
    const auto r = validity_report(p, kTwoPi * 6.4e-9);
    CHECK_FALSE((r.low_excitation_ok && r.kerr_ok));
  }

  TEST_CASE("temperature does not move the booleans") {
    auto p = driven_point();
    const auto cold = validity_report(p, kTwoPi * 6.4e-9);
    p.temperature = 5.0;
    const auto hot = validity_report(p, kTwoPi * 6.4e-9);
    CHECK(cold.low_excitation_ok == hot.low_excitation_ok);
    CHECK(cold.kerr_ok == hot.kerr_ok);
    CHECK(cold.magnon_occupation == hot.magnon_occupation);
  }

  TEST_CASE("needs a driven coupling") {
    CHECK_THROWS_AS(validity_report(working_point(), 1.0), InvalidInput);
  }
}

TEST_SUITE("drift matrix") {
  TEST_CASE("no squeezing gives the standard magnomechanical drift") {
    auto p = working_point();
    p.upsilon = 0.0;
    const Matrix6d g = build_drift(p);
    CHECK(g == unsqueezed_drift(p, kTwoPi * 4.8e6));
    CHECK(g(2, 2) == -p.kappa_m);
    CHECK(g(2, 3) == p.delta_m);
    CHECK(g(3, 2) == -p.delta_m);
  }

  TEST_CASE("theta = pi/2 only shifts detunings") {
    auto p = working_point();
    p.theta = 0.5 * kPi;
    const auto d = derive(p);
    CHECK(d.kappa_theta_plus == doctest::Approx(p.kappa_m).epsilon(1e-12));
    CHECK(d.kappa_theta_minus == doctest::Approx(p.kappa_m).epsilon(1e-12));
    CHECK(d.delta_theta_plus != doctest::Approx(d.delta_theta_minus));
  }

  TEST_CASE("theta = 0 only shifts dissipation") {
    auto p = working_point();
    p.theta = 0.0;
    const auto d = derive(p);
    CHECK(d.delta_theta_plus == d.delta_m_bar);
    CHECK(d.delta_theta_minus == d.delta_m_bar);
  }

  TEST_CASE("sign map of the phase shifts at 64 phases") {
    auto p = working_point();
    for (int k = 0; k < 64; ++k) {
      p.theta = 2.0 * kPi * k / 64.0;
      const auto d = derive(p);
      const double tol = 1e-12 * p.upsilon;
      const double t = p.theta;
      if (k == 0 || k == 32) {
        CHECK(std::abs(d.delta_theta) <= tol);
      } else {
        CHECK((d.delta_theta > 0.0) == (t > 0.0 && t < kPi));
      }
      if (k == 16 || k == 48) {
        CHECK(std::abs(d.kappa_theta) <= tol);
      } else {
        CHECK((d.kappa_theta > 0.0) == (t < 0.5 * kPi || t > 1.5 * kPi));
      }
      CHECK(d.delta_theta_plus + d.delta_theta_minus == doctest::Approx(2.0 * d.delta_m_bar).epsilon(1e-12));
      CHECK(d.kappa_theta_plus + d.kappa_theta_minus == doctest::Approx(2.0 * p.kappa_m).epsilon(1e-12));
    }
  }

  TEST_CASE("theta -> 2pi - theta flips the detuning shift and keeps the dissipation shift") {
    auto p = working_point();
    for (int k = 0; k < 64; ++k) {
      p.theta = 2.0 * kPi * (k + 0.37) / 64.0;
      auto q = p;
      q.theta = 2.0 * kPi - p.theta;
      const Matrix6d a = build_drift(p);
      const Matrix6d b = build_drift(q);
      const double dt = p.upsilon * std::sin(p.theta);
      const double tol = 1e-9 * p.upsilon;
      // rows (2, 3) columns (2, 3) carry the squeezing
      CHECK(b(2, 2) == doctest::Approx(a(2, 2)).epsilon(1e-12));
      CHECK(b(3, 3) == doctest::Approx(a(3, 3)).epsilon(1e-12));
      CHECK(std::abs((a(2, 3) - b(2, 3)) - 2.0 * dt) <= tol);
      CHECK(std::abs((a(3, 2) - b(3, 2)) - 2.0 * dt) <= tol);
      for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) {
          const bool squeezed = (r == 2 || r == 3) && (c == 2 || c == 3);
          if (!squeezed) CHECK(a(r, c) == b(r, c));
        }
      }
    }
  }

  TEST_CASE("finite-difference theta derivative") {
    auto p = working_point();
    const double h = 1e-6;
    for (double theta : {0.3, 1.1, 2.5, 3.9, 5.6}) {
      p.theta = theta;
      auto lo = p, hi = p;
      lo.theta -= h;
      hi.theta += h;
      const Matrix6d fd = (build_drift(hi) - build_drift(lo)) / (2.0 * h);
      const double dk = -p.upsilon * std::sin(theta);  // d(kappa_theta)/d(theta)
      const double dd = p.upsilon * std::cos(theta);   // d(delta_theta)/d(theta)
      CHECK(fd(2, 2) == doctest::Approx(-dk).epsilon(1e-6));
      CHECK(fd(3, 3) == doctest::Approx(dk).epsilon(1e-6));
      CHECK(fd(2, 3) == doctest::Approx(dd).epsilon(1e-6));
      CHECK(fd(3, 2) == doctest::Approx(dd).epsilon(1e-6));
    }
  }

  TEST_CASE("drive frequency reproduces explicit detunings") {
    auto p = working_point();
    auto q = p;
    q.omega_drive = p.omega_m - p.omega_b;
    q.delta_a = q.delta_m = -1.0;  // ignored when a drive frequency is set
    CHECK(build_drift(q).isApprox(build_drift(p), 1e-9));
  }
}

TEST_SUITE("diffusion matrix") {
  TEST_CASE("zero temperature") {
    auto p = working_point();
    p.temperature = 0.0;
    const Matrix6d l = build_diffusion(p);
    Matrix6d want = Matrix6d::Zero();
    want.diagonal() << p.kappa_a, p.kappa_a, p.kappa_m, p.kappa_m, 0.0, p.gamma_b;
    CHECK(l == want);
  }

  TEST_CASE("10 mK") {
    const auto p = working_point();
    const Matrix6d l = build_diffusion(p);
    CHECK(l(4, 4) == 0.0);
    CHECK(l(5, 5) == doctest::Approx(p.gamma_b * (2.0 * 20.340618351800998 + 1.0)).epsilon(1e-12));
    CHECK(l(5, 5) / p.gamma_b == doctest::Approx(41.7).epsilon(2e-3));
  }
}

TEST_SUITE("parameter validation") {
  TEST_CASE("non-dissipative modes are refused") {
    auto p = working_point();
    p.kappa_m = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p = working_point();
    p.upsilon = -1.0;
    CHECK_THROWS_AS(build_drift(p), InvalidInput);
  }
}
