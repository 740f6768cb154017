#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kerrcomm {

/// CODATA 2018 exact/recommended values, SI units.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double boltzmann = 1.380649e-23;  // J / K
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

// Error categories map one-to-one onto CLI exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double to_angular(double hz) { return constants::two_pi * hz; }

/// Bose-Einstein occupation [exp(hbar*omega/kB*T) - 1]^-1 for angular
/// frequency `omega` (rad/s) at temperature `temperature` (K). Exactly zero
/// at T = 0. Throws std::domain_error for omega <= 0 or T < 0.
double thermal_occupation(double omega, double temperature);

enum class Mode { microwave_photon = 0, magnon = 1, phonon = 2, optical_photon = 3 };

/// Single-letter label used in tables and configs: a, m, b, c.
std::string_view mode_symbol(Mode mode);
Mode mode_from_symbol(char symbol);

/// Physical device description. Every frequency-like field is an ordinary
/// frequency in Hz; decay rates are half-linewidths. K0 carries a sign set
/// by the bias-field direction.
struct SystemParams {
  double omega_a = 10e9;
  double omega_m = 10e9;
  double omega_c = 190e12;
  double omega_b = 40e6;
  double kappa_a = 1e6;
  double kappa_m = 1e6;
  double kappa_c = 2e6;
  double gamma_b = 100.0;
  double g_am = 4e6;
  double g_m = 1.0;
  double g_c = 10.0;
  double K0 = 0.0;
  double E_m = 0.0;
  double E_c = 0.0;
  double w_m = 10e9;
  double w_c = 190e12;
  double temperature = 0.01;
};

struct ParamDiagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Range checks on a parameter record; never throws.
ParamDiagnostics check(const SystemParams& params);

/// Linearization point. Angular units (rad/s) throughout except the
/// dimensionless occupations.
struct OperatingPoint {
  double delta_a = 0.0;
  double delta_m_eff = 0.0;
  double delta_c_eff = 0.0;
  double delta_k = 0.0;
  double G_m = 0.0;
  double G_c = 0.0;
  double g_am = 0.0;
  double kappa_a = 0.0;
  double kappa_m = 0.0;
  double kappa_c = 0.0;
  double gamma_b = 0.0;
  double omega_b = 0.0;
  double n_a = 0.0;
  double n_m = 0.0;
  double n_b = 0.0;
  double n_c = 0.0;

  /// Every rate, detuning and coupling multiplied by `factor`; occupations kept.
  OperatingPoint scaled(double factor) const;
};

/// The linearized quantities given directly, skipping the mean-field solve. Detunings are in units of omega_b; everything else in Hz or K.
struct EffectiveInputs {
  double omega_a = 10e9;
  double omega_m = 10e9;
  double omega_c = 190e12;
  double omega_b = 40e6;
  double kappa_a = 1e6;
  double kappa_m = 1e6;
  double kappa_c = 2e6;
  double gamma_b = 100.0;
  double g_am = 4e6;
  double G_m = 2e6;
  double G_c = 8e6;
  double temperature = 0.01;
  double delta_a = -1.0;
  double delta_m_eff = -1.0;
  double delta_c_eff = 1.0;
  double delta_k = 0.0;
};

ParamDiagnostics check(const EffectiveInputs& inputs);

}  // namespace kerrcomm
