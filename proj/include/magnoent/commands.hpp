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

// The magnoent command line: steady, sweep, wigner and validate.

#pragma once

#include <exception>
#include <iosfwd>
#include <vector>

#include "magnoent/analysis.hpp"
#include "magnoent/config.hpp"
#include "magnoent/sweep.hpp"
#include "magnoent/table.hpp"

namespace magnoent::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,  // validate: at least one check failed
  kConfigError = 2,   // bad flags, bad or missing configuration keys
  kUnstable = 3,      // no steady state at the requested point
  kNumerical = 4,     // solver residual too large, singular block, ...
  kIoError = 5,       // unreadable config, unwritable output
};

/// Every row of a sweep, one column per axis (in its configured unit), then
/// stable, E_am, E_ab, E_mb, R_min and the contrast columns when paired.
table::ResultTable sweep_table(const config::RunConfig& cfg, const sweep::SweepResult& result);

/// Rows (theta_over_pi, x, y, W) for each grid in order.
table::ResultTable wigner_table(const config::RunConfig& cfg,
                                const std::vector<analysis::WignerGrid>& grids);

int cmd_steady(const config::RunConfig& cfg, bool write_file, std::ostream& out);
int cmd_sweep(const config::RunConfig& cfg, int threads, std::ostream& out);
int cmd_wigner(const config::RunConfig& cfg, std::ostream& out);
int cmd_validate(const config::RunConfig& cfg, std::ostream& out);

/// Exit code for a library error: ConfigError and InvalidInput -> kConfigError,
/// NoSteadyState and ParametricResonance -> kUnstable, IoError -> kIoError,
/// anything else -> kNumerical.
int exit_code(std::exception_ptr error) noexcept;

/// Parses argv, dispatches, and maps library errors to exit codes. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magnoent::cli
