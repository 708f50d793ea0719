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
#include <sstream>
#include <string>

#include "magnoent/commands.hpp"
#include "magnoent/config.hpp"
#include "magnoent/sweep.hpp"
#include "magnoent/table.hpp"

using namespace magnoent;

namespace {

constexpr double kPi = std::numbers::pi;

const std::string kSweep = std::string(config::default_parameters_yaml()) + R"(
sweep:
  axes:
    - {name: temperature, unit: mk, values: [0, 50, 100, 150, 200, 250]}
  pairing: {forward_over_pi: 0.5, backward_over_pi: 1.5}
  thresholds: [C_E_ab, C_R]
)";

double close_rel(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("config to table to csv and back agrees with direct evaluation") {
  const auto cfg = config::parse_config(kSweep);
  REQUIRE(cfg.sweep);
  const auto result = sweep::sweep(cfg.params, cfg.sweep->spec, 2);
  const auto t = cli::sweep_table(cfg, result);

  std::stringstream io;
  table::write_csv(t, io);
  const auto back = table::read_csv(io);
  REQUIRE(back.rows.size() == 6);
  REQUIRE(back.columns.size() == t.columns.size());
  CHECK(back.columns.front() == "temperature_mk");

  for (std::size_t r = 0; r < back.rows.size(); ++r) {
    const auto& row = back.rows[r];
    auto p = cfg.params;
    p.temperature = *row[0] * 1e-3;
    const auto direct = analysis::evaluate_point(p);
    CHECK((*row[1] == 1.0) == direct.stable);
    if (!direct.stable) continue;
    CHECK(close_rel(*row[2], direct.measures->E_am));
    CHECK(close_rel(*row[3], direct.measures->E_ab));
    CHECK(close_rel(*row[4], direct.measures->E_mb));
    CHECK(close_rel(*row[5], direct.measures->R_min));

    const auto c = analysis::directional_measures(p, analysis::PhasePairing{0.5 * kPi, 1.5 * kPi});
    if (c.CE_ab) {
      REQUIRE(row[7].has_value());
      CHECK(close_rel(*row[7], *c.CE_ab));
    } else {
      CHECK_FALSE(row[7].has_value());
    }
  }

  bool saw_threshold = false;
  for (const auto& m : back.metadata) {
    if (m.rfind("threshold C_E_ab", 0) == 0) saw_threshold = true;
  }
  CHECK(saw_threshold);
}

TEST_CASE("parameter echo reaches the table metadata") {
  const auto cfg = config::parse_config(kSweep, {"upsilon_over_kappa_a=0.5"});
  const auto result = sweep::sweep_serial(cfg.params, cfg.sweep->spec);
  const auto t = cli::sweep_table(cfg, result);
  bool found = false;
  const double want = 0.5 * cfg.params.kappa_a;
  for (const auto& m : t.metadata) {
    if (m.rfind("param upsilon_rad_s=", 0) == 0) {
      found = true;
      CHECK(close_rel(std::stod(m.substr(20)), want));
    }
  }
  CHECK(found);
}
