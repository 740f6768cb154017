#include "kerrcomm/sweep.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kerrcomm/steady_state.hpp"
#include "sweep_detail.hpp"

namespace kerrcomm {

namespace {

struct ParameterEntry {
  SweepParameter parameter;
  std::string_view name;
};

constexpr std::array<ParameterEntry, 8> kParameters = {{
    {SweepParameter::delta_a, "delta_a"},
    {SweepParameter::delta_m_eff, "delta_m_eff"},
    {SweepParameter::delta_c_eff, "delta_c_eff"},
    {SweepParameter::delta_k, "delta_k"},
    {SweepParameter::G_m, "G_m"},
    {SweepParameter::G_c, "G_c"},
    {SweepParameter::G_c_over_g_am, "G_c_over_g_am"},
    {SweepParameter::temperature, "temperature"},
}};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string_view parameter_name(SweepParameter parameter) {
  for (const auto& entry : kParameters) {
    if (entry.parameter == parameter) return entry.name;
  }
  return "?";
}

SweepParameter parse_parameter(std::string_view name) {
  for (const auto& entry : kParameters) {
    if (entry.name == name) return entry.parameter;
  }
  throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", name));
}

void apply(EffectiveInputs& in, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::delta_a: in.delta_a = value; break;
    case SweepParameter::delta_m_eff: in.delta_m_eff = value; break;
    case SweepParameter::delta_c_eff: in.delta_c_eff = value; break;
    case SweepParameter::delta_k: in.delta_k = value; break;
    case SweepParameter::G_m: in.G_m = value; break;
    case SweepParameter::G_c: in.G_c = value; break;
    case SweepParameter::G_c_over_g_am: in.G_c = value * in.g_am; break;
    case SweepParameter::temperature: in.temperature = value; break;
  }
}

double Axis::value(std::size_t index) const {
  if (count <= 1) return start;
  return start + (stop - start) * (static_cast<double>(index) / static_cast<double>(count - 1));
}

std::vector<double> Axis::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = value(i);
  return out;
}

std::string_view kerr_sign_name(KerrSign sign) {
  switch (sign) {
    case KerrSign::given: return "given";
    case KerrSign::zero: return "zero";
    case KerrSign::positive: return "positive";
    case KerrSign::negative: return "negative";
  }
  return "?";
}

KerrSign parse_kerr_sign(std::string_view name) {
  for (KerrSign s : {KerrSign::given, KerrSign::zero, KerrSign::positive, KerrSign::negative}) {
    if (kerr_sign_name(s) == name) return s;
  }
  throw std::invalid_argument(
      fmt::format("unknown Kerr sign '{}' (expected given, zero, positive or negative)", name));
}

double signed_delta_k(KerrSign sign, double delta_k) {
  switch (sign) {
    case KerrSign::given: return delta_k;
    case KerrSign::zero: return 0.0;
    case KerrSign::positive: return std::abs(delta_k);
    case KerrSign::negative: return -std::abs(delta_k);
  }
  return delta_k;
}

std::vector<std::string> validate(const SweepSpec& spec) {
  std::vector<std::string> problems;
  auto check_axis = [&](const Axis& axis, std::string_view key) {
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) {
      problems.push_back(fmt::format("{}: range must be finite", key));
    }
    if (axis.count < 2) {
      problems.push_back(fmt::format("{}.count: must be >= 2, got {}", key, axis.count));
    }
  };
  check_axis(spec.axis1, "axis1");
  if (spec.axis2) {
    check_axis(*spec.axis2, "axis2");
    if (spec.axis2->parameter == spec.axis1.parameter) {
      problems.push_back("axis2.parameter: must differ from axis1.parameter");
    }
  }
  if (spec.pairs.empty()) problems.push_back("pairs: at least one mode pair is required");
  if (spec.kerr_signs.empty()) problems.push_back("kerr_signs: at least one series is required");
  for (std::size_t i = 0; i < spec.kerr_signs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.kerr_signs[i] == spec.kerr_signs[j]) {
        problems.push_back(
            fmt::format("kerr_signs: '{}' listed twice", kerr_sign_name(spec.kerr_signs[i])));
      }
    }
  }
  const bool sweeps_kerr = spec.axis1.parameter == SweepParameter::delta_k ||
                           (spec.axis2 && spec.axis2->parameter == SweepParameter::delta_k);
  if (sweeps_kerr && (spec.kerr_signs.size() != 1 || spec.kerr_signs[0] != KerrSign::given)) {
    problems.push_back("kerr_signs: must be [given] when delta_k is a sweep axis");
  }
  for (const auto& message : check(spec.fixed).errors) problems.push_back("fixed." + message);
  return problems;
}

PointResult evaluate_point(const EffectiveInputs& inputs, std::span<const ModePair> pairs,
                           LyapunovMethod method, double stability_epsilon, bool cross_check) {
  PointResult r;
  r.delta_k = inputs.delta_k;
  r.min_symplectic = kNaN;
  r.residual = kNaN;
  r.log_negativity.assign(pairs.size(), std::nullopt);
  try {
    const auto dd = build_normalized(operating_point_direct(inputs));
    const Stability st = is_stable(dd.drift, stability_epsilon);
    r.margin = st.margin;
    if (!st.stable) {
      r.status = PointStatus::unstable;
      return r;
    }
    const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion, method).values;
    if (cross_check) {
      const auto other = method == LyapunovMethod::schur ? LyapunovMethod::kronecker
                                                         : LyapunovMethod::schur;
      const double diff = (V - solve_lyapunov(dd.drift, dd.diffusion, other).values)
                              .cwiseAbs()
                              .maxCoeff();
      if (!(diff < 1e-8)) {
        throw NumericalError(fmt::format("Lyapunov cross-check: |dV|max = {:.3e}", diff));
      }
    }
    std::vector<std::optional<double>> en(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto reduced = reduced_covariance(V, pairs[k]);
      en[k] = log_negativity(reduced);
      if (cross_check) {
        const double closed = min_pt_symplectic_eigenvalue(reduced);
        const double spectral = symplectic_eigenvalues_pt(reduced).second;
        if (!(std::abs(closed - spectral) <= 1e-10 * spectral)) {
          throw NumericalError(fmt::format(
              "PT spectrum cross-check ({}): {:.15e} vs {:.15e}", pairs[k].label(), closed,
              spectral));
        }
      }
    }
    r.residual = relative_residual(dd.drift, V, dd.diffusion);
    r.min_symplectic = symplectic_eigenvalues(V)[0];
    r.log_negativity = std::move(en);
    r.status = PointStatus::ok;
  } catch (const std::exception& e) {
    r.status = PointStatus::failed;
    r.error = e.what();
    r.min_symplectic = kNaN;
    r.residual = kNaN;
    r.log_negativity.assign(pairs.size(), std::nullopt);
  }
  return r;
}

std::size_t SweepResult::grid_size() const {
  return axis1_values.size() * std::max<std::size_t>(1, axis2_values.size());
}

std::size_t SweepResult::grid_index(std::size_t i1, std::size_t i2) const {
  return i1 * std::max<std::size_t>(1, axis2_values.size()) + i2;
}

const PointResult& SweepResult::at(std::size_t grid, std::size_t sign) const {
  return points.at(grid * signs.size() + sign);
}

std::optional<std::size_t> SweepResult::sign_index(KerrSign sign) const {
  for (std::size_t s = 0; s < signs.size(); ++s) {
    if (signs[s] == sign) return s;
  }
  return std::nullopt;
}

namespace detail {

SweepResult prepare(const SweepSpec& spec) {
  if (auto problems = validate(spec); !problems.empty()) {
    std::string message = "invalid sweep:";
    for (const auto& p : problems) message += "\n  " + p;
    throw std::invalid_argument(message);
  }
  SweepResult result;
  result.parameters.push_back(spec.axis1.parameter);
  result.axis1_values = spec.axis1.values();
  if (spec.axis2) {
    result.parameters.push_back(spec.axis2->parameter);
    result.axis2_values = spec.axis2->values();
  }
  result.signs = spec.kerr_signs;
  result.pairs = spec.pairs;
  result.points.resize(result.grid_size() * result.signs.size());
  return result;
}

PointResult evaluate_work_item(const SweepSpec& spec, const SweepResult& layout, std::size_t k) {
  const std::size_t n_signs = layout.signs.size();
  const std::size_t grid = k / n_signs;
  const std::size_t sign = k % n_signs;
  const std::size_t n2 = std::max<std::size_t>(1, layout.axis2_values.size());

  EffectiveInputs in = spec.fixed;
  apply(in, spec.axis1.parameter, layout.axis1_values[grid / n2]);
  if (spec.axis2) apply(in, spec.axis2->parameter, layout.axis2_values[grid % n2]);
  in.delta_k = signed_delta_k(layout.signs[sign], in.delta_k);
  return evaluate_point(in, layout.pairs, spec.lyapunov, spec.stability_epsilon, spec.cross_check);
}

void finalize_contrast(SweepResult& result) {
  const auto pos = result.sign_index(KerrSign::positive);
  const auto neg = result.sign_index(KerrSign::negative);
  result.has_contrast = pos.has_value() && neg.has_value();
  result.contrast.assign(result.has_contrast ? result.grid_size() * result.pairs.size() : 0,
                         std::nullopt);
  if (!result.has_contrast) return;
  for (std::size_t g = 0; g < result.grid_size(); ++g) {
    const PointResult& p = result.at(g, *pos);
    const PointResult& n = result.at(g, *neg);
    if (!p.stable() || !n.stable()) continue;
    for (std::size_t k = 0; k < result.pairs.size(); ++k) {
      result.contrast[g * result.pairs.size() + k] =
          contrast_ratio(*p.log_negativity[k], *n.log_negativity[k]);
    }
  }
}

}  // namespace detail

SweepResult run_sweep_serial(const SweepSpec& spec) {
  SweepResult result = detail::prepare(spec);
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    result.points[k] = detail::evaluate_work_item(spec, result, k);
  }
  detail::finalize_contrast(result);
  return result;
}

}  // namespace kerrcomm
