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

#include "magnoent/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>

#include "magnoent/errors.hpp"

namespace magnoent::cli {

namespace {

using table::format_number;
namespace fs = std::filesystem;

std::string version_line() { return std::string("magnoent ") + MAGNOENT_VERSION; }

std::vector<std::string> base_metadata(const config::RunConfig& cfg, const char* command) {
  std::vector<std::string> meta = {version_line(), std::string("command=") + command};
  for (const auto& line : cfg.parameter_echo) meta.push_back("param " + line);
  return meta;
}

fs::path output_path(const config::RunConfig& cfg, const char* command) {
  const std::string base = cfg.output.basename.empty() ? command : cfg.output.basename;
  return cfg.output.dir / (base + (cfg.output.format == config::Format::Json ? ".json" : ".csv"));
}

// Opened before any computation so an unwritable destination fails fast.
std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create output directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write output file '" + path.string() + "'");
  return out;
}

void write_table(const table::ResultTable& t, config::Format format, std::ofstream& file,
                 const fs::path& path) {
  if (format == config::Format::Json) table::write_json(t, file); else table::write_csv(t, file);
  file.flush();
  if (!file) throw IoError("failed while writing '" + path.string() + "'");
}

table::Cell cell(bool b) { return b ? 1.0 : 0.0; }

void print_validity(const model::ValidityReport& v, std::ostream& out) {
  out << "magnon_occupation: " << format_number(v.magnon_occupation) << '\n'
      << "excitation_bound: " << format_number(v.excitation_bound) << " (limit "
      << format_number(model::kLowExcitationFraction * v.excitation_bound) << ")\n"
      << "low_excitation: " << (v.low_excitation_ok ? "ok" : "FAIL") << '\n'
      << "kerr_coefficient_rad_s: " << format_number(v.kerr_coefficient) << '\n'
      << "kerr_drive_ratio: " << format_number(v.kerr_drive_ratio) << " (limit "
      << format_number(model::kKerrRatioLimit) << ")\n"
      << "kerr: " << (v.kerr_ok ? "ok" : "FAIL") << '\n'
      << "stable: " << (v.stable ? "ok" : "FAIL") << '\n';
}

const char* exit_label(int code) {
  switch (code) {
    case kConfigError: return "config error";
    case kUnstable: return "unstable";
    case kIoError: return "i/o error";
    default: return "numerical failure";
  }
}

std::string describe(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

table::ResultTable sweep_table(const config::RunConfig& cfg, const sweep::SweepResult& result) {
  table::ResultTable t;
  t.metadata = base_metadata(cfg, "sweep");
  std::string grid;
  for (std::size_t k = 0; k < result.axes.size(); ++k) {
    grid += (k ? "x" : "") + std::to_string(result.axes[k].values.size());
  }
  t.metadata.push_back("grid=" + grid + " points=" + std::to_string(result.records.size()));
  if (result.pairing) {
    t.metadata.push_back("pairing_over_pi=" + format_number(result.pairing->forward / std::numbers::pi) +
                         "," + format_number(result.pairing->backward / std::numbers::pi));
  }
  t.metadata.push_back("stable=" + std::to_string(result.stable_count()));
  t.metadata.push_back("unstable=" + std::to_string(result.unstable_count()));
  t.metadata.push_back("max_lyapunov_residual=" + format_number(result.max_lyapunov_residual()));
  if (cfg.sweep) {
    for (const auto m : cfg.sweep->thresholds) {
      const auto intervals = sweep::temperature_thresholds(result, m);
      const auto& unit = cfg.sweep->units.at(0);
      std::string text;
      for (const auto& iv : intervals) {
        text += (text.empty() ? "[" : ",[") + format_number(iv.lo / unit.scale) + "," +
                format_number(iv.hi / unit.scale) + "]";
      }
      t.metadata.push_back("threshold " + std::string(analysis::label(m)) + " " + unit.column + "=" +
                           (text.empty() ? "none" : text));
    }
  }

  for (std::size_t k = 0; k < result.axes.size(); ++k) {
    t.columns.push_back(cfg.sweep ? cfg.sweep->units.at(k).column
                                  : std::string(sweep::label(result.axes[k].name)));
  }
  for (const char* c : {"stable", "E_am", "E_ab", "E_mb", "R_min"}) t.columns.emplace_back(c);
  if (result.pairing) {
    for (auto m : {analysis::ContrastMeasure::CE_am, analysis::ContrastMeasure::CE_ab,
                   analysis::ContrastMeasure::CE_mb, analysis::ContrastMeasure::CR}) {
      t.columns.emplace_back(analysis::label(m));
    }
  }

  for (const auto& rec : result.records) {
    std::vector<table::Cell> row;
    for (std::size_t k = 0; k < rec.coords.size(); ++k) {
      const double scale = cfg.sweep ? cfg.sweep->units.at(k).scale : 1.0;
      row.emplace_back(rec.coords[k] / scale);
    }
    row.push_back(cell(rec.point.stable));
    if (rec.point.measures) {
      const auto& m = *rec.point.measures;
      for (double v : {m.E_am, m.E_ab, m.E_mb, m.R_min}) row.emplace_back(v);
    } else {
      row.insert(row.end(), 4, std::nullopt);
    }
    if (result.pairing) {
      if (rec.contrast) {
        for (const auto& v : {rec.contrast->CE_am, rec.contrast->CE_ab, rec.contrast->CE_mb, rec.contrast->CR}) {
          row.push_back(v);
        }
      } else {
        row.insert(row.end(), 4, std::nullopt);
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

table::ResultTable wigner_table(const config::RunConfig& cfg,
                                const std::vector<analysis::WignerGrid>& grids) {
  table::ResultTable t;
  t.metadata = base_metadata(cfg, "wigner");
  t.metadata.push_back("points=" + std::to_string(cfg.wigner.points) +
                       " extent_sigma=" + format_number(cfg.wigner.extent_sigma));
  t.columns = {"theta_over_pi", "x", "y", "W"};
  for (const auto& g : grids) {
    const double tp = g.theta / std::numbers::pi;
    t.metadata.push_back("theta_over_pi=" + format_number(tp) + " integral=" + format_number(g.integral) +
                         " var_major=" + format_number(g.ellipse.var_major) +
                         " var_minor=" + format_number(g.ellipse.var_minor) +
                         " angle_deg=" + format_number(g.ellipse.angle_deg));
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
      for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
        t.add_row({tp, g.xs[ix], g.ys[iy], g.values[iy * g.xs.size() + ix]});
      }
    }
  }
  return t;
}

int cmd_steady(const config::RunConfig& cfg, bool write_file, std::ostream& out) {
  std::ofstream file;
  const auto path = output_path(cfg, "steady");
  if (write_file) file = open_output(path);

  const auto point = analysis::evaluate_point(cfg.params, cfg.kerr_coefficient);
  out << version_line() << " steady\n";
  out << "max_re_lambda_rad_s: " << format_number(point.max_real_part) << '\n';
  if (!point.stable) {
    out << "stable: no\n";
    throw NoSteadyState("drift matrix is unstable at the requested parameters (max Re lambda = " +
                        format_number(point.max_real_part) + " rad/s)");
  }
  const auto& m = *point.measures;
  out << "stable: yes\n"
      << "lyapunov_residual: " << format_number(point.steady->residual) << '\n'
      << "E_am: " << format_number(m.E_am) << '\n'
      << "E_ab: " << format_number(m.E_ab) << '\n'
      << "E_mb: " << format_number(m.E_mb) << '\n'
      << "R_min: " << format_number(m.R_min) << '\n'
      << "residual_contangles: " << format_number(m.residuals[0]) << ' ' << format_number(m.residuals[1])
      << ' ' << format_number(m.residuals[2]) << '\n'
      << "min_physical_eigenvalue: " << format_number(m.min_physical_eigenvalue) << '\n';
  if (point.validity) {
    print_validity(*point.validity, out);
  } else {
    out << "validity: not assessed (needs a driven coupling and kerr_* parameter)\n";
  }
  const auto& v = point.steady->covariance.data();
  if (cfg.dump_covariance) {
    out << "covariance:\n";
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c) out << (c ? " " : "  ") << format_number(v(r, c));
      out << '\n';
    }
  }

  if (write_file) {
    table::ResultTable t;
    t.metadata = base_metadata(cfg, "steady");
    t.columns = {"stable", "max_re_lambda_rad_s", "lyapunov_residual", "E_am", "E_ab", "E_mb", "R_min"};
    std::vector<table::Cell> row = {1.0, point.max_real_part, point.steady->residual,
                                    m.E_am, m.E_ab, m.E_mb, m.R_min};
    if (cfg.dump_covariance) {
      for (Eigen::Index r = 0; r < v.rows(); ++r) {
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
          t.columns.push_back("V_" + std::to_string(r) + std::to_string(c));
          row.emplace_back(v(r, c));
        }
      }
    }
    t.add_row(std::move(row));
    write_table(t, cfg.output.format, file, path);
    out << "wrote " << path.string() << '\n';
  }
  return kOk;
}

int cmd_sweep(const config::RunConfig& cfg, int threads, std::ostream& out) {
  if (!cfg.sweep) throw ConfigError("missing required key 'sweep' for the sweep command");
  const auto path = output_path(cfg, "sweep");
  auto file = open_output(path);

  const auto result = sweep::sweep(cfg.params, cfg.sweep->spec, threads);
  const auto t = sweep_table(cfg, result);
  write_table(t, cfg.output.format, file, path);

  out << version_line() << " sweep\n"
      << "points: " << result.records.size() << " (stable " << result.stable_count() << ", unstable "
      << result.unstable_count() << ")\n"
      << "max_lyapunov_residual: " << format_number(result.max_lyapunov_residual()) << '\n';
  for (const auto& line : t.metadata) {
    if (line.rfind("threshold ", 0) == 0) out << line << '\n';
  }
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_wigner(const config::RunConfig& cfg, std::ostream& out) {
  const auto path = output_path(cfg, "wigner");
  auto file = open_output(path);

  std::vector<analysis::WignerGrid> grids;
  for (double theta : cfg.wigner.thetas) {
    grids.push_back(analysis::magnon_wigner(cfg.params, theta, cfg.wigner.points, cfg.wigner.extent_sigma));
  }
  const auto t = wigner_table(cfg, grids);
  write_table(t, cfg.output.format, file, path);

  out << version_line() << " wigner\n";
  for (const auto& line : t.metadata) {
    if (line.rfind("theta_over_pi=", 0) == 0) out << line << '\n';
  }
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_validate(const config::RunConfig& cfg, std::ostream& out) {
  if (!cfg.params.is_driven()) {
    throw ConfigError("validate needs a driven coupling (parameters.coupling.g_m_* and drive or Rabi keys)");
  }
  if (!cfg.kerr_coefficient) throw ConfigError("missing required key 'parameters.kerr_over_2pi_hz'");
  const auto amp = model::solve_magnon_amplitude(cfg.params, model::AmplitudeForm::Exact);
  const auto report = model::validity_report(cfg.params, *cfg.kerr_coefficient);

  out << version_line() << " validate\n"
      << "magnon_amplitude_abs: " << format_number(std::abs(amp.m_s)) << '\n'
      << "delta_m_bar_rad_s: " << format_number(amp.delta_m_bar) << '\n'
      << "rabi_frequency_rad_s: " << format_number(model::resolve_rabi(cfg.params)) << '\n'
      << "total_spins: "
      << format_number(model::total_spins(std::get<model::DrivenCoupling>(cfg.params.coupling).sphere_diameter,
                                          cfg.params.spin_density))
      << '\n';
  print_validity(report, out);
  out << "result: " << (report.all_ok() ? "all checks pass" : "checks FAILED") << '\n';
  return report.all_ok() ? kOk : kChecksFailed;
}

int exit_code(std::exception_ptr error) noexcept {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return kConfigError;
  } catch (const InvalidInput&) {
    return kConfigError;
  } catch (const NoSteadyState&) {
    return kUnstable;
  } catch (const ParametricResonance&) {
    return kUnstable;
  } catch (const IoError&) {
    return kIoError;
  } catch (...) {
    return kNumerical;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state entanglement of a squeezed cavity-magnon-phonon system", "magnoent"};
  app.set_version_flag("--version", version_line());
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string format;
  int threads = 0;
  std::vector<std::string> sets;

  auto* steady = app.add_subcommand("steady", "Steady state, entanglement measures and validity at one point");
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
  auto* wigner = app.add_subcommand("wigner", "Magnon Wigner function grids");
  auto* validate = app.add_subcommand("validate", "Low-excitation and Kerr checks for a driven coupling");
  for (auto* sub : {steady, sweep_cmd, wigner, validate}) {
    sub->add_option("--config,-c", config_path, "YAML configuration file (default: built-in working point)");
    sub->add_option("--output,-o", output_dir, "Output directory");
    sub->add_option("--format,-f", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads,-j", threads, "Worker threads for sweeps (0: OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--set,-s", sets, "Parameter override key=value (repeatable)")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << version_line() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    auto cfg = config_path.empty() ? config::parse_config(config::default_parameters_yaml(), sets)
                                   : config::load_config(config_path, sets);
    if (!output_dir.empty()) cfg.output.dir = output_dir;
    if (!format.empty()) cfg.output.format = config::parse_format(format);

    if (steady->parsed()) return cmd_steady(cfg, !output_dir.empty(), out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, threads, out);
    if (wigner->parsed()) return cmd_wigner(cfg, out);
    return cmd_validate(cfg, out);
  } catch (...) {
    const auto code = exit_code(std::current_exception());
    err << exit_label(code) << ": " << describe(std::current_exception()) << '\n';
    return code;
  }
}

}  // namespace magnoent::cli
