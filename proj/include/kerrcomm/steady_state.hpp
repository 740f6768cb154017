#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "kerrcomm/core.hpp"

namespace kerrcomm {

/// Steady-state mean fields. Amplitudes are dimensionless; q and p are the
/// dimensionless mechanical quadratures (p is identically zero).
struct MeanFields {
  std::complex<double> a{0.0, 0.0};
  std::complex<double> m{0.0, 0.0};
  std::complex<double> c{0.0, 0.0};
  double q = 0.0;
  double p = 0.0;

  double magnon_number() const { return std::norm(m); }
};

struct Branch {
  MeanFields fields;
  bool stable = false;
  /// Relative residual of the five mean-field relations.
  double residual = 0.0;
};

struct BranchSet {
  /// Ascending in |m|^2.
  std::vector<Branch> branches;
  /// Branch reached by ramping both drives up from zero.
  std::size_t selected = 0;
  /// Index of the branch the damped fixed-point iteration converged to, when
  /// the cross-check ran and converged.
  std::optional<std::size_t> fixed_point_match;

  const Branch& selected_branch() const { return branches.at(selected); }
};

struct SteadyStateOptions {
  /// Run the fixed-point iteration alongside the polynomial roots and throw
  /// NumericalError if it lands on none of them.
  bool cross_check = false;
  int homotopy_steps = 40;
  /// Acceptance threshold on the relative mean-field residual.
  double residual_tolerance = 1e-10;
};

struct FixedPointOptions {
  double initial_damping = 0.5;
  double min_damping = 1e-4;
  int max_iterations = 2000000;
  double tolerance = 1e-14;
};

/// Kerr frequency shift 2 K0 |m|^2 (units of K0). Throws
/// std::invalid_argument for a negative magnon number.
double kerr_shift(double K0, double magnon_number);

/// All physical (real, |m|^2 >= 0) mean-field solutions, from the roots of
/// the self-consistency polynomial, polished by Newton iteration on the
/// full complex-denominator equations. Ascending in |m|^2; no stability
/// flag. Throws std::invalid_argument for a zero microwave detuning with
/// g_am != 0, NumericalError if no admissible root is found.
std::vector<MeanFields> mean_field_roots(const SystemParams& params);

/// Damped fixed-point iteration of the mean-field map from `start`.
/// Empty when the iteration does not converge.
std::optional<MeanFields> mean_field_fixed_point(const SystemParams& params,
                                                 const MeanFields& start = {},
                                                 const FixedPointOptions& options = {});

/// Largest relative residual over the five mean-field relations
/// (microwave, magnon, optical, q balance, p = 0).
double mean_field_residual(const SystemParams& params, const MeanFields& fields);

/// Magnon amplitude from the large-detuning closed form
/// i E_m Delta_a / (g_am^2 - (Delta~_m + Delta_k) Delta_a), evaluated at the
/// displacement and Kerr shift of `fields`. Used to report how far the
/// exact solution is from that approximation.
std::complex<double> approximate_magnon_amplitude(const SystemParams& params,
                                                  const MeanFields& fields);

/// Full solve: all branches, their linear stability, and the selected branch.
BranchSet solve_mean_fields(const SystemParams& params, const SteadyStateOptions& options = {});

/// Linearization point of a solved branch (G_m, G_c as magnitudes; occupations
/// at the bare mode frequencies).
OperatingPoint operating_point_from_fields(const SystemParams& params, const MeanFields& fields);

/// Linearization point taken verbatim from effective inputs.
OperatingPoint operating_point_direct(const EffectiveInputs& inputs);

}  // namespace kerrcomm
