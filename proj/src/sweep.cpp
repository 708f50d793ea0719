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

#include "magnoent/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <string>

#include "magnoent/errors.hpp"

namespace magnoent::sweep {

namespace {

constexpr AxisName kAllAxes[] = {AxisName::Upsilon,  AxisName::Theta,   AxisName::G_a,
                                 AxisName::Temperature, AxisName::G_m, AxisName::Delta_a,
                                 AxisName::Delta_m};

void apply(model::SystemParams& p, AxisName name, double value) {
  switch (name) {
    case AxisName::Upsilon: p.upsilon = value; break;
    case AxisName::Theta: p.theta = value; break;
    case AxisName::G_a: p.g_a = value; break;
    case AxisName::Temperature: p.temperature = value; break;
    case AxisName::G_m: std::get<model::DirectCoupling>(p.coupling).G_m = value; break;
    case AxisName::Delta_a: p.delta_a = value; break;
    case AxisName::Delta_m: p.delta_m = value; break;
  }
}

}  // namespace

std::string_view label(AxisName name) noexcept {
  switch (name) {
    case AxisName::Upsilon: return "upsilon";
    case AxisName::Theta: return "theta";
    case AxisName::G_a: return "g_a";
    case AxisName::Temperature: return "temperature";
    case AxisName::G_m: return "G_m";
    case AxisName::Delta_a: return "delta_a";
    case AxisName::Delta_m: return "delta_m";
  }
  return "";
}

AxisName axis_from_label(std::string_view text) {
  for (AxisName a : kAllAxes) {
    if (label(a) == text) return a;
  }
  throw ConfigError("unknown sweep axis '" + std::string(text) +
                    "' (expected upsilon, theta, g_a, temperature, G_m, delta_a or delta_m)");
}

std::vector<double> linspace(double start, double stop, std::size_t points) {
  if (points == 0) throw ConfigError("axis needs at least one point");
  if (points == 1) return {start};
  std::vector<double> v(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) v[k] = start + step * static_cast<double>(k);
  v.back() = stop;
  return v;
}

std::size_t SweepResult::stable_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const SweepRecord& r) { return r.point.stable; }));
}

double SweepResult::max_lyapunov_residual() const noexcept {
  double worst = 0.0;
  const auto take = [&worst](const analysis::PointResult& p) {
    if (p.steady) worst = std::max(worst, p.steady->residual);
  };
  for (const auto& r : records) {
    take(r.point);
    if (r.contrast) {
      take(r.contrast->forward);
      take(r.contrast->backward);
    }
  }
  return worst;
}

void validate_spec(const model::SystemParams& base, const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ConfigError("a sweep needs one or two axes");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
    throw ConfigError("sweep axes must be distinct");
  }
  for (const auto& axis : spec.axes) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + std::string(label(axis.name)) + "' is empty");
    if (axis.name == AxisName::G_m && base.is_driven()) {
      throw ConfigError("a G_m axis needs a direct coupling, not a driven one");
    }
    if ((axis.name == AxisName::Delta_a || axis.name == AxisName::Delta_m) && base.omega_drive) {
      throw ConfigError("detuning axes need parameters given as detunings, not a drive frequency");
    }
  }
  if (spec.pairing) {
    try {
      spec.pairing->validate();
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
}

std::size_t grid_size(const SweepSpec& spec) noexcept {
  std::size_t n = spec.axes.empty() ? 0 : 1;
  for (const auto& axis : spec.axes) n *= axis.values.size();
  return n;
}

model::SystemParams point_params(const model::SystemParams& base, const SweepSpec& spec,
                                 std::size_t index, std::vector<double>* coords) {
  model::SystemParams p = base;
  if (coords) coords->assign(spec.axes.size(), 0.0);
  std::size_t rest = index;
  for (std::size_t k = spec.axes.size(); k-- > 0;) {
    const auto& axis = spec.axes[k];
    const std::size_t i = rest % axis.values.size();
    rest /= axis.values.size();
    apply(p, axis.name, axis.values[i]);
    if (coords) (*coords)[k] = axis.values[i];
  }
  return p;
}

SweepRecord evaluate_record(const model::SystemParams& base, const SweepSpec& spec, std::size_t index) {
  SweepRecord rec;
  const auto p = point_params(base, spec, index, &rec.coords);
  rec.point = analysis::evaluate_point(p, spec.kerr_coefficient);
  if (spec.pairing) {
    model::SystemParams fwd = p;
    fwd.theta = spec.pairing->forward;
    model::SystemParams bwd = p;
    bwd.theta = spec.pairing->backward;
    rec.contrast = analysis::contrast_between(analysis::evaluate_point(fwd),
                                              analysis::evaluate_point(bwd));
  }
  return rec;
}

SweepResult sweep_serial(const model::SystemParams& base, const SweepSpec& spec) {
  validate_spec(base, spec);
  base.validate();
  SweepResult result{spec.axes, spec.pairing, {}};
  const std::size_t n = grid_size(spec);
  result.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) result.records.push_back(evaluate_record(base, spec, i));
  return result;
}

SweepResult sweep(const model::SystemParams& base, const SweepSpec& spec, int threads) {
  validate_spec(base, spec);
  base.validate();
  SweepResult result{spec.axes, spec.pairing, {}};
  const auto n = static_cast<long long>(grid_size(spec));
  result.records.resize(static_cast<std::size_t>(n));

  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
  for (long long i = 0; i < n; ++i) {
    try {
      result.records[static_cast<std::size_t>(i)] =
          evaluate_record(base, spec, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(magnoent_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::vector<Interval> temperature_thresholds(const SweepResult& result,
                                             analysis::ContrastMeasure measure) {
  if (result.axes.size() != 1 || result.axes[0].name != AxisName::Temperature) {
    throw ConfigError("temperature thresholds need a 1-D temperature sweep");
  }
  if (!result.pairing) throw ConfigError("temperature thresholds need a phase pairing");

  std::vector<Interval> out;
  std::optional<Interval> open;
  for (const auto& rec : result.records) {
    const double t = rec.coords[0];
    const auto c = rec.contrast ? rec.contrast->get(measure) : std::nullopt;
    if (c && *c >= analysis::kIdealContrast) {
      if (open) open->hi = t; else open = Interval{t, t};
    } else if (open) {
      out.push_back(*open);
      open.reset();
    }
  }
  if (open) out.push_back(*open);
  return out;
}

}  // namespace magnoent::sweep
