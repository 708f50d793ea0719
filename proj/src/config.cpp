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

#include "magnoent/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include "magnoent/errors.hpp"
#include "magnoent/table.hpp"

namespace magnoent::config {

namespace {

using model::kTwoPi;
constexpr double kPi = std::numbers::pi;

enum class Unit {
  Hz,           // ordinary frequency, SI = 2 pi v
  RadS,
  OverKappaA,
  OverOmegaB,
  OverPi,
  Rad,
  MilliKelvin,
  Kelvin,
  Micrometre,
  Identity,     // already SI
  HzPerTesla,   // SI = 2 pi v
};

struct Spelling {
  std::string_view suffix;  // empty: key equals the family name
  Unit unit;
};

struct Family {
  std::string_view name;
  std::vector<Spelling> spellings;
};

std::string key_of(const Family& f, const Spelling& s) {
  return s.suffix.empty() ? std::string(f.name) : std::string(f.name) + "_" + std::string(s.suffix);
}

const std::vector<Family>& parameter_families() {
  static const std::vector<Family> families = {
      {"omega_a", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"omega_m", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"omega_b", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"drive", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"delta_a", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_omega_b", Unit::OverOmegaB}}},
      {"delta_m", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_omega_b", Unit::OverOmegaB}}},
      {"kappa_a", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"kappa_m", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_kappa_a", Unit::OverKappaA}}},
      {"gamma_b", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"g_a", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_kappa_a", Unit::OverKappaA}}},
      {"upsilon", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_kappa_a", Unit::OverKappaA}}},
      {"theta", {{"rad", Unit::Rad}, {"over_pi", Unit::OverPi}}},
      {"temperature", {{"mk", Unit::MilliKelvin}, {"k", Unit::Kelvin}}},
      {"spin_density", {{"per_m3", Unit::Identity}}},
      {"spin_s", {{"", Unit::Identity}}},
      {"gyromagnetic_ratio", {{"over_2pi_hz_per_t", Unit::HzPerTesla}, {"rad_s_per_t", Unit::Identity}}},
      {"kerr", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
  };
  return families;
}

const std::vector<Family>& coupling_families() {
  static const std::vector<Family> families = {
      {"G_m", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}, {"over_kappa_a", Unit::OverKappaA}}},
      {"g_m", {{"over_2pi_hz", Unit::Hz}, {"rad_s", Unit::RadS}}},
      {"drive_field", {{"t", Unit::Identity}}},
      {"sphere_diameter", {{"m", Unit::Identity}, {"um", Unit::Micrometre}}},
      {"rabi_frequency", {{"rad_s", Unit::RadS}, {"over_2pi_hz", Unit::Hz}}},
  };
  return families;
}

struct Scales {
  double kappa_a = 0.0;
  double omega_b = 0.0;
};

double to_si(double v, Unit unit, const Scales& s) {
  switch (unit) {
    case Unit::Hz: return kTwoPi * v;
    case Unit::RadS: return v;
    case Unit::OverKappaA: return v * s.kappa_a;
    case Unit::OverOmegaB: return v * s.omega_b;
    case Unit::OverPi: return v * kPi;
    case Unit::Rad: return v;
    case Unit::MilliKelvin: return v * 1e-3;
    case Unit::Kelvin: return v;
    case Unit::Micrometre: return v * 1e-6;
    case Unit::Identity: return v;
    case Unit::HzPerTesla: return kTwoPi * v;
  }
  return v;
}

double as_double(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + where + "' must be a number");
  }
}

void require_map(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) throw ConfigError("'" + where + "' must be a mapping");
}

void reject_unknown(const YAML::Node& map, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

std::vector<std::string> all_keys(const std::vector<Family>& families) {
  std::vector<std::string> keys;
  for (const auto& f : families) {
    for (const auto& s : f.spellings) keys.push_back(key_of(f, s));
  }
  return keys;
}

const Family& family(const std::vector<Family>& families, std::string_view name) {
  for (const auto& f : families) {
    if (f.name == name) return f;
  }
  throw std::logic_error("no such config family");
}

struct Found {
  std::string key;
  Unit unit;
  double raw;
};

std::optional<Found> lookup(const YAML::Node& map, const Family& f, const std::string& where) {
  std::optional<Found> found;
  for (const auto& s : f.spellings) {
    const auto key = key_of(f, s);
    if (!map[key]) continue;
    if (found) {
      throw ConfigError("'" + where + found->key + "' and '" + where + key +
                        "' both set the same quantity");
    }
    found = Found{key, s.unit, as_double(map[key], where + key)};
  }
  return found;
}

double required(const YAML::Node& map, const Family& f, const Scales& s, const std::string& where) {
  const auto found = lookup(map, f, where);
  if (!found) {
    throw ConfigError("missing required key '" + where + key_of(f, f.spellings.front()) + "'");
  }
  return to_si(found->raw, found->unit, s);
}

std::optional<double> optional_value(const YAML::Node& map, const Family& f, const Scales& s,
                                     const std::string& where) {
  const auto found = lookup(map, f, where);
  if (!found) return std::nullopt;
  return to_si(found->raw, found->unit, s);
}

void apply_override(YAML::Node& params, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must look like key=value");
  }
  std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  YAML::Node target = params;
  const std::vector<Family>* families = &parameter_families();
  if (key.rfind("coupling.", 0) == 0) {
    key = key.substr(9);
    if (!params["coupling"]) params["coupling"] = YAML::Node(YAML::NodeType::Map);
    target.reset(params["coupling"]);  // plain assignment would overwrite params itself
    families = &coupling_families();
  }
  for (const auto& f : *families) {
    for (const auto& s : f.spellings) {
      if (key_of(f, s) != key) continue;
      for (const auto& other : f.spellings) target.remove(key_of(f, other));
      target[key] = value;
      return;
    }
  }
  throw ConfigError("unknown override key '" + assignment.substr(0, eq) + "'");
}

void echo(std::vector<std::string>& out, const std::string& key, double v) {
  out.push_back(key + "=" + table::format_number(v));
}

model::SystemParams parse_parameters(const YAML::Node& p, std::optional<double>& kerr,
                                     std::vector<std::string>& echo_lines) {
  require_map(p, "parameters");
  auto allowed = all_keys(parameter_families());
  allowed.emplace_back("coupling");
  reject_unknown(p, allowed, "parameters");

  const auto& F = parameter_families();
  const std::string w = "parameters.";
  Scales s;
  model::SystemParams out;
  out.omega_m = required(p, family(F, "omega_m"), s, w);
  out.omega_a = optional_value(p, family(F, "omega_a"), s, w).value_or(out.omega_m);
  out.omega_b = required(p, family(F, "omega_b"), s, w);
  s.omega_b = out.omega_b;
  out.kappa_a = required(p, family(F, "kappa_a"), s, w);
  s.kappa_a = out.kappa_a;
  out.kappa_m = required(p, family(F, "kappa_m"), s, w);
  out.gamma_b = required(p, family(F, "gamma_b"), s, w);
  out.g_a = required(p, family(F, "g_a"), s, w);
  out.upsilon = required(p, family(F, "upsilon"), s, w);
  out.theta = required(p, family(F, "theta"), s, w);
  out.temperature = required(p, family(F, "temperature"), s, w);

  out.omega_drive = optional_value(p, family(F, "drive"), s, w);
  if (out.omega_drive) {
    if (lookup(p, family(F, "delta_a"), w) || lookup(p, family(F, "delta_m"), w)) {
      throw ConfigError("give either a drive frequency or detunings, not both");
    }
  } else {
    out.delta_a = required(p, family(F, "delta_a"), s, w);
    out.delta_m = required(p, family(F, "delta_m"), s, w);
  }
  if (auto v = optional_value(p, family(F, "spin_density"), s, w)) out.spin_density = *v;
  if (auto v = optional_value(p, family(F, "spin_s"), s, w)) out.spin_s = *v;
  if (auto v = optional_value(p, family(F, "gyromagnetic_ratio"), s, w)) out.gyromagnetic_ratio = *v;
  kerr = optional_value(p, family(F, "kerr"), s, w);

  const YAML::Node c = p["coupling"];
  if (!c) throw ConfigError("missing required key 'parameters.coupling'");
  require_map(c, "parameters.coupling");
  reject_unknown(c, all_keys(coupling_families()), "parameters.coupling");
  const auto& C = coupling_families();
  const std::string wc = "parameters.coupling.";
  const auto direct = optional_value(c, family(C, "G_m"), s, wc);
  const auto g_m = optional_value(c, family(C, "g_m"), s, wc);
  if (direct && g_m) throw ConfigError("coupling must be either direct (G_m) or driven (g_m), not both");
  if (direct) {
    for (const char* name : {"drive_field", "sphere_diameter", "rabi_frequency"}) {
      if (lookup(c, family(C, name), wc)) {
        throw ConfigError(std::string("'") + wc + name + "' only applies to a driven coupling");
      }
    }
    out.coupling = model::DirectCoupling{*direct};
  } else if (g_m) {
    model::DrivenCoupling d;
    d.g_m = *g_m;
    d.sphere_diameter = required(c, family(C, "sphere_diameter"), s, wc);
    d.rabi_override = optional_value(c, family(C, "rabi_frequency"), s, wc);
    const auto field = optional_value(c, family(C, "drive_field"), s, wc);
    if (!field && !d.rabi_override) {
      throw ConfigError("missing required key '" + wc + "drive_field_t' (or rabi_frequency_rad_s)");
    }
    d.drive_field = field.value_or(0.0);
    out.coupling = d;
  } else {
    throw ConfigError("missing required key '" + wc + "G_m_over_2pi_hz' (or g_m_over_2pi_hz)");
  }

  try {
    out.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }

  echo(echo_lines, "omega_a_rad_s", out.omega_a);
  echo(echo_lines, "omega_m_rad_s", out.omega_m);
  echo(echo_lines, "omega_b_rad_s", out.omega_b);
  if (out.omega_drive) echo(echo_lines, "drive_rad_s", *out.omega_drive);
  echo(echo_lines, "delta_a_rad_s", out.detuning_a());
  echo(echo_lines, "delta_m_rad_s", out.detuning_m());
  echo(echo_lines, "kappa_a_rad_s", out.kappa_a);
  echo(echo_lines, "kappa_m_rad_s", out.kappa_m);
  echo(echo_lines, "gamma_b_rad_s", out.gamma_b);
  echo(echo_lines, "g_a_rad_s", out.g_a);
  if (const auto* dc = std::get_if<model::DirectCoupling>(&out.coupling)) {
    echo(echo_lines, "G_m_rad_s", dc->G_m);
  } else {
    const auto& dc2 = std::get<model::DrivenCoupling>(out.coupling);
    echo(echo_lines, "g_m_rad_s", dc2.g_m);
    echo(echo_lines, "drive_field_t", dc2.drive_field);
    echo(echo_lines, "sphere_diameter_m", dc2.sphere_diameter);
    if (dc2.rabi_override) echo(echo_lines, "rabi_frequency_rad_s", *dc2.rabi_override);
  }
  echo(echo_lines, "upsilon_rad_s", out.upsilon);
  echo(echo_lines, "theta_rad", out.theta);
  echo(echo_lines, "temperature_k", out.temperature);
  echo(echo_lines, "spin_density_per_m3", out.spin_density);
  echo(echo_lines, "spin_s", out.spin_s);
  echo(echo_lines, "gyromagnetic_ratio_rad_s_per_t", out.gyromagnetic_ratio);
  if (kerr) echo(echo_lines, "kerr_rad_s", *kerr);
  return out;
}

std::string_view axis_family(sweep::AxisName name) {
  return sweep::label(name);
}

SweepConfig parse_sweep(const YAML::Node& node, const model::SystemParams& params,
                        std::optional<double> kerr) {
  require_map(node, "sweep");
  reject_unknown(node, {"axes", "pairing", "thresholds"}, "sweep");
  SweepConfig cfg;
  cfg.spec.kerr_coefficient = kerr;
  const YAML::Node axes = node["axes"];
  if (!axes) throw ConfigError("missing required key 'sweep.axes'");
  if (!axes.IsSequence() || axes.size() == 0 || axes.size() > 2) {
    throw ConfigError("'sweep.axes' must list one or two axes");
  }
  const Scales s{params.kappa_a, params.omega_b};
  const std::size_t default_points = axes.size() == 1 ? 101 : 61;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const YAML::Node a = axes[k];
    const std::string w = "sweep.axes[" + std::to_string(k) + "]";
    require_map(a, w);
    reject_unknown(a, {"name", "unit", "start", "stop", "points", "values"}, w);
    if (!a["name"]) throw ConfigError("missing required key '" + w + ".name'");
    if (!a["unit"]) throw ConfigError("missing required key '" + w + ".unit'");
    const auto name = sweep::axis_from_label(a["name"].as<std::string>());
    const auto unit_text = a["unit"].as<std::string>();

    std::vector<Family> axis_families = parameter_families();
    axis_families.insert(axis_families.end(), coupling_families().begin(), coupling_families().end());
    const Family& fam = family(axis_families, axis_family(name));
    const auto sp = std::find_if(fam.spellings.begin(), fam.spellings.end(),
                                 [&](const Spelling& x) { return x.suffix == unit_text; });
    if (sp == fam.spellings.end()) {
      std::string options;
      for (const auto& x : fam.spellings) options += (options.empty() ? "" : ", ") + std::string(x.suffix);
      throw ConfigError("unit '" + unit_text + "' not valid for axis '" + std::string(fam.name) +
                        "' (expected " + options + ")");
    }
    const double scale = to_si(1.0, sp->unit, s);

    std::vector<double> values;
    if (a["values"]) {
      if (a["start"] || a["stop"] || a["points"]) {
        throw ConfigError("'" + w + "' gives both values and start/stop/points");
      }
      for (const auto& v : a["values"]) values.push_back(as_double(v, w + ".values"));
    } else {
      if (!a["start"] || !a["stop"]) throw ConfigError("missing required key '" + w + ".start' or '.stop'");
      const double start = as_double(a["start"], w + ".start");
      const double stop = as_double(a["stop"], w + ".stop");
      std::size_t points = default_points;
      if (a["points"]) {
        const double pts = as_double(a["points"], w + ".points");
        if (pts < 1 || pts != static_cast<double>(static_cast<std::size_t>(pts))) {
          throw ConfigError("'" + w + ".points' must be a positive integer");
        }
        points = static_cast<std::size_t>(pts);
      }
      values = sweep::linspace(start, stop, points);
    }
    if (values.empty()) throw ConfigError("'" + w + "' has no values");
    for (double& v : values) v *= scale;
    cfg.spec.axes.push_back({name, std::move(values)});
    cfg.units.push_back({key_of(fam, *sp), scale});
  }

  if (const YAML::Node pr = node["pairing"]) {
    require_map(pr, "sweep.pairing");
    reject_unknown(pr, {"forward_over_pi", "backward_over_pi", "forward_rad", "backward_rad"},
                   "sweep.pairing");
    const auto phase = [&](const char* stem) {
      const std::string over_pi = std::string(stem) + "_over_pi";
      const std::string rad = std::string(stem) + "_rad";
      if (pr[over_pi] && pr[rad]) throw ConfigError("sweep.pairing gives both " + over_pi + " and " + rad);
      if (pr[over_pi]) return kPi * as_double(pr[over_pi], "sweep.pairing." + over_pi);
      if (pr[rad]) return as_double(pr[rad], "sweep.pairing." + rad);
      throw ConfigError("missing required key 'sweep.pairing." + over_pi + "'");
    };
    analysis::PhasePairing pairing{phase("forward"), phase("backward")};
    try {
      pairing.validate();
    } catch (const InvalidInput& e) {
      throw ConfigError(std::string("sweep.pairing: ") + e.what());
    }
    cfg.spec.pairing = pairing;
  }
  if (const YAML::Node th = node["thresholds"]) {
    if (!th.IsSequence()) throw ConfigError("'sweep.thresholds' must be a list");
    for (const auto& m : th) cfg.thresholds.push_back(analysis::contrast_from_label(m.as<std::string>()));
    if (!cfg.thresholds.empty()) {
      if (cfg.spec.axes.size() != 1 || cfg.spec.axes[0].name != sweep::AxisName::Temperature ||
          !cfg.spec.pairing) {
        throw ConfigError("sweep.thresholds needs a single temperature axis and a pairing");
      }
    }
  }
  try {
    sweep::validate_spec(params, cfg.spec);
  } catch (const ConfigError&) {
    throw;
  }
  return cfg;
}

WignerConfig parse_wigner(const YAML::Node& node) {
  WignerConfig cfg;
  cfg.thetas = {0.0, kPi, 0.5 * kPi, 1.5 * kPi};
  if (!node) return cfg;
  require_map(node, "wigner");
  reject_unknown(node, {"thetas_over_pi", "thetas_rad", "points", "extent_sigma"}, "wigner");
  if (node["thetas_over_pi"] && node["thetas_rad"]) {
    throw ConfigError("wigner gives both thetas_over_pi and thetas_rad");
  }
  const auto read_list = [&](const char* key, double scale) {
    if (!node[key].IsSequence() || node[key].size() == 0) {
      throw ConfigError(std::string("'wigner.") + key + "' must be a non-empty list");
    }
    cfg.thetas.clear();
    for (const auto& v : node[key]) cfg.thetas.push_back(scale * as_double(v, std::string("wigner.") + key));
  };
  if (node["thetas_over_pi"]) read_list("thetas_over_pi", kPi);
  if (node["thetas_rad"]) read_list("thetas_rad", 1.0);
  if (node["points"]) {
    const double pts = as_double(node["points"], "wigner.points");
    if (pts < 2 || pts != static_cast<double>(static_cast<std::size_t>(pts))) {
      throw ConfigError("'wigner.points' must be an integer >= 2");
    }
    cfg.points = static_cast<std::size_t>(pts);
  }
  if (node["extent_sigma"]) {
    cfg.extent_sigma = as_double(node["extent_sigma"], "wigner.extent_sigma");
    if (!(cfg.extent_sigma > 0.0)) throw ConfigError("'wigner.extent_sigma' must be positive");
  }
  return cfg;
}

OutputConfig parse_output(const YAML::Node& node) {
  OutputConfig cfg;
  if (!node) return cfg;
  require_map(node, "output");
  reject_unknown(node, {"dir", "basename", "format"}, "output");
  if (node["dir"]) cfg.dir = node["dir"].as<std::string>();
  if (node["basename"]) cfg.basename = node["basename"].as<std::string>();
  if (node["format"]) cfg.format = parse_format(node["format"].as<std::string>());
  return cfg;
}

constexpr std::string_view kDefaultParameters = R"(parameters:
  omega_m_over_2pi_hz: 10.0e9
  omega_b_over_2pi_hz: 10.0e6
  delta_a_over_omega_b: 1.0
  delta_m_over_omega_b: 1.0
  kappa_a_over_2pi_hz: 3.0e6
  kappa_m_over_kappa_a: 0.2
  gamma_b_over_2pi_hz: 100.0
  g_a_over_2pi_hz: 4.8e6
  coupling:
    G_m_over_2pi_hz: 4.8e6
  upsilon_over_kappa_a: 1.3
  theta_over_pi: 1.5
  temperature_mk: 10.0
)";

}  // namespace

std::string_view default_parameters_yaml() { return kDefaultParameters; }

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

RunConfig parse_config(std::string_view yaml_text, const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  require_map(root, "<root>");
  reject_unknown(root, {"parameters", "steady", "sweep", "wigner", "output"}, "");

  try {
    YAML::Node params = root["parameters"] ? YAML::Clone(root["parameters"])
                                           : YAML::Load(std::string(kDefaultParameters))["parameters"];
    for (const auto& o : overrides) apply_override(params, o);

    RunConfig cfg;
    cfg.params = parse_parameters(params, cfg.kerr_coefficient, cfg.parameter_echo);
    if (const YAML::Node st = root["steady"]) {
      require_map(st, "steady");
      reject_unknown(st, {"dump_covariance"}, "steady");
      if (st["dump_covariance"]) cfg.dump_covariance = st["dump_covariance"].as<bool>();
    }
    if (const YAML::Node sw = root["sweep"]) cfg.sweep = parse_sweep(sw, cfg.params, cfg.kerr_coefficient);
    cfg.wigner = parse_wigner(root["wigner"]);
    cfg.output = parse_output(root["output"]);
    return cfg;
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("configuration error: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace magnoent::config
