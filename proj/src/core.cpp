#include "kerrcomm/core.hpp"

#include <cmath>

#include <fmt/format.h>

namespace kerrcomm {

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw std::domain_error(fmt::format("thermal_occupation: omega must be > 0, got {}", omega));
  }
  if (!(temperature >= 0.0)) {
    throw std::domain_error(
        fmt::format("thermal_occupation: temperature must be >= 0, got {}", temperature));
  }
  if (temperature == 0.0) return 0.0;
  const double ratio = constants::hbar * omega / (constants::boltzmann * temperature);
  // expm1 keeps precision in the classical limit; for large ratios it
  // overflows to inf and the occupation correctly underflows to 0.
  return 1.0 / std::expm1(ratio);
}

std::string_view mode_symbol(Mode mode) {
  switch (mode) {
    case Mode::microwave_photon: return "a";
    case Mode::magnon: return "m";
    case Mode::phonon: return "b";
    case Mode::optical_photon: return "c";
  }
  return "?";
}

Mode mode_from_symbol(char symbol) {
  switch (symbol) {
    case 'a': return Mode::microwave_photon;
    case 'm': return Mode::magnon;
    case 'b': return Mode::phonon;
    case 'c': return Mode::optical_photon;
    default: throw std::invalid_argument(fmt::format("unknown mode label '{}'", symbol));
  }
}

OperatingPoint OperatingPoint::scaled(double factor) const {
  OperatingPoint out = *this;
  for (double* field : {&out.delta_a, &out.delta_m_eff, &out.delta_c_eff, &out.delta_k, &out.G_m,
                        &out.G_c, &out.g_am, &out.kappa_a, &out.kappa_m, &out.kappa_c,
                        &out.gamma_b, &out.omega_b}) {
    *field *= factor;
  }
  return out;
}

namespace {

void require_nonnegative(ParamDiagnostics& diag, std::string_view key, double value) {
  if (!std::isfinite(value)) {
    diag.errors.push_back(fmt::format("{}: must be finite", key));
  } else if (value < 0.0) {
    diag.errors.push_back(fmt::format("{}: must be >= 0, got {}", key, value));
  }
}

void require_positive(ParamDiagnostics& diag, std::string_view key, double value) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    diag.errors.push_back(fmt::format("{}: must be > 0, got {}", key, value));
  }
}

void require_finite(ParamDiagnostics& diag, std::string_view key, double value) {
  if (!std::isfinite(value)) diag.errors.push_back(fmt::format("{}: must be finite", key));
}

void warn_quality_factor(ParamDiagnostics& diag, double omega_b, double gamma_b) {
  // Markovian treatment of the Brownian force needs omega_b / gamma_b >> 1.
  if (gamma_b > 0.0 && omega_b / gamma_b < 100.0) {
    diag.warnings.push_back(fmt::format(
        "mechanical quality factor omega_b/gamma_b = {:.3g} is not >> 1; the Markovian noise "
        "model may be inaccurate",
        omega_b / gamma_b));
  }
}

}  // namespace

ParamDiagnostics check(const SystemParams& p) {
  ParamDiagnostics diag;
  require_positive(diag, "omega_a", p.omega_a);
  require_positive(diag, "omega_m", p.omega_m);
  require_positive(diag, "omega_c", p.omega_c);
  require_positive(diag, "omega_b", p.omega_b);
  require_nonnegative(diag, "kappa_a", p.kappa_a);
  require_nonnegative(diag, "kappa_m", p.kappa_m);
  require_nonnegative(diag, "kappa_c", p.kappa_c);
  require_nonnegative(diag, "gamma_b", p.gamma_b);
  require_nonnegative(diag, "g_am", p.g_am);
  require_nonnegative(diag, "g_m", p.g_m);
  require_nonnegative(diag, "g_c", p.g_c);
  require_finite(diag, "K0", p.K0);
  require_nonnegative(diag, "E_m", p.E_m);
  require_nonnegative(diag, "E_c", p.E_c);
  require_nonnegative(diag, "w_m", p.w_m);
  require_nonnegative(diag, "w_c", p.w_c);
  require_nonnegative(diag, "temperature", p.temperature);
  if (diag.ok() && p.g_am != 0.0 && p.omega_a == p.w_m) {
    diag.errors.push_back(
        "omega_a: microwave detuning omega_a - w_m is zero while g_am != 0; the steady state is "
        "singular there");
  }
  warn_quality_factor(diag, p.omega_b, p.gamma_b);
  return diag;
}

ParamDiagnostics check(const EffectiveInputs& e) {
  ParamDiagnostics diag;
  require_positive(diag, "omega_a", e.omega_a);
  require_positive(diag, "omega_m", e.omega_m);
  require_positive(diag, "omega_c", e.omega_c);
  require_positive(diag, "omega_b", e.omega_b);
  require_nonnegative(diag, "kappa_a", e.kappa_a);
  require_nonnegative(diag, "kappa_m", e.kappa_m);
  require_nonnegative(diag, "kappa_c", e.kappa_c);
  require_nonnegative(diag, "gamma_b", e.gamma_b);
  require_nonnegative(diag, "g_am", e.g_am);
  require_nonnegative(diag, "G_m", e.G_m);
  require_nonnegative(diag, "G_c", e.G_c);
  require_nonnegative(diag, "temperature", e.temperature);
  require_finite(diag, "delta_a", e.delta_a);
  require_finite(diag, "delta_m_eff", e.delta_m_eff);
  require_finite(diag, "delta_c_eff", e.delta_c_eff);
  require_finite(diag, "delta_k", e.delta_k);
  warn_quality_factor(diag, e.omega_b, e.gamma_b);
  return diag;
}

}  // namespace kerrcomm
