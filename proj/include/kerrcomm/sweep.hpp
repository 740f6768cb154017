#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "kerrcomm/core.hpp"
#include "kerrcomm/entanglement.hpp"
#include "kerrcomm/lyapunov.hpp"

namespace kerrcomm {

/// Scannable quantities. Detunings (including delta_k) are in units of
/// omega_b, couplings in Hz, temperature in K.
enum class SweepParameter {
  delta_a,
  delta_m_eff,
  delta_c_eff,
  delta_k,
  G_m,
  G_c,
  G_c_over_g_am,
  temperature,
};

std::string_view parameter_name(SweepParameter parameter);
SweepParameter parse_parameter(std::string_view name);
void apply(EffectiveInputs& inputs, SweepParameter parameter, double value);

struct Axis {
  SweepParameter parameter = SweepParameter::delta_m_eff;
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;

  double value(std::size_t index) const;
  std::vector<double> values() const;
};

/// How delta_k is set for one series of a sweep.
enum class KerrSign {
  given,     ///< delta_k exactly as in the fixed inputs (or the axis)
  zero,      ///< delta_k = 0
  positive,  ///< +|delta_k|
  negative,  ///< -|delta_k|
};

std::string_view kerr_sign_name(KerrSign sign);
KerrSign parse_kerr_sign(std::string_view name);
double signed_delta_k(KerrSign sign, double delta_k);

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  EffectiveInputs fixed;
  std::vector<ModePair> pairs;
  std::vector<KerrSign> kerr_signs = {KerrSign::given};
  LyapunovMethod lyapunov = LyapunovMethod::schur;
  double stability_epsilon = kDefaultStabilityEpsilon;
  /// Also solve with the Kronecker path and the PT spectrum at every point;
  /// disagreement is recorded as a point failure.
  bool cross_check = false;
};

/// Every violated constraint, empty if the spec is runnable.
std::vector<std::string> validate(const SweepSpec& spec);

enum class PointStatus { ok, unstable, failed };

struct PointResult {
  PointStatus status = PointStatus::failed;
  double delta_k = 0.0;  ///< units of omega_b, as evaluated
  double margin = 0.0;   ///< stability margin, units of omega_b
  /// Smallest symplectic eigenvalue of the full covariance; NaN unless ok.
  double min_symplectic = 0.0;
  /// Relative Lyapunov residual; NaN unless ok.
  double residual = 0.0;
  /// One entry per requested pair; empty optionals unless ok.
  std::vector<std::optional<double>> log_negativity;
  std::string error;

  bool stable() const { return status == PointStatus::ok; }
};

/// Full single-point pipeline in effective mode. Never throws; failures
/// are recorded in the result.
PointResult evaluate_point(const EffectiveInputs& inputs, std::span<const ModePair> pairs,
                           LyapunovMethod method = LyapunovMethod::schur,
                           double stability_epsilon = kDefaultStabilityEpsilon,
                           bool cross_check = false);

struct SweepResult {
  std::vector<SweepParameter> parameters;  ///< one or two axes
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;  ///< empty for 1D sweeps
  std::vector<KerrSign> signs;
  std::vector<ModePair> pairs;
  /// Indexed ((i1 * n2 + i2) * signs + s); axis1-major.
  std::vector<PointResult> points;
  /// Indexed (grid_index * pairs + p); present only when both the positive
  /// and negative series ran and the ratio is defined.
  std::vector<std::optional<double>> contrast;
  bool has_contrast = false;

  std::size_t grid_size() const;
  std::size_t grid_index(std::size_t i1, std::size_t i2 = 0) const;
  const PointResult& at(std::size_t grid, std::size_t sign) const;
  std::optional<std::size_t> sign_index(KerrSign sign) const;
};

/// OpenMP-parallel sweep. threads <= 0 uses the OpenMP default. The result
/// is independent of the thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference implementation of run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// Comma-separated table, one row per grid point and Kerr series,
/// axis1-major. Empty fields mark values that do not exist (unstable
/// points, undefined contrast).
void export_table(const SweepResult& result, std::ostream& out);
void export_table(const SweepResult& result, const std::filesystem::path& path);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

Table read_table(std::istream& in);

/// Quadratic fit delta_m* = c2 delta_k^2 + c1 delta_k + c0 of the
/// entanglement ridge (units of omega_b).
struct LocusFit {
  std::array<double, 3> coefficients{};  ///< (c2, c1, c0)
  std::vector<double> delta_k;            ///< rows that contributed
  std::vector<double> optimum;            ///< refined argmax per row
  std::vector<double> gaps;               ///< rows with no entangled point
};

/// Locus from a precomputed surface. Rows follow `delta_k`, columns
/// `delta_m`; NaN entries are excluded (unstable points). Throws
/// std::invalid_argument if fewer than three rows have an entangled point.
LocusFit fit_locus(std::span<const double> delta_k, std::span<const double> delta_m,
                   const Eigen::MatrixXd& surface);

/// Locus from a two-axis sweep with axis1 = delta_k and axis2 = delta_m_eff.
LocusFit locus_from_result(const SweepResult& result, ModePair pair);

/// Runs the (delta_k x delta_m_eff) sweep for one pair and fits the locus.
LocusFit optimal_locus(ModePair pair, const Axis& delta_k, const Axis& delta_m,
                       const EffectiveInputs& fixed, int threads = 0);

}  // namespace kerrcomm
