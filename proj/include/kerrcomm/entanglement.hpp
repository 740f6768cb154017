#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "kerrcomm/core.hpp"
#include "kerrcomm/dynamics.hpp"

namespace kerrcomm {

/// Two distinct modes of the device.
class ModePair {
 public:
  ModePair(Mode first, Mode second);

  /// Parses two-letter labels such as "ac" or "mb".
  static ModePair parse(std::string_view label);

  Mode first() const { return first_; }
  Mode second() const { return second_; }
  std::string label() const;

  friend bool operator==(const ModePair&, const ModePair&) = default;

 private:
  Mode first_;
  Mode second_;
};

/// All six unordered pairs in mode order.
std::array<ModePair, 6> all_mode_pairs();

/// Two-mode covariance [[A, C], [C^T, B]].
struct ReducedCovariance {
  Eigen::Matrix4d values;

  Eigen::Matrix2d block_a() const { return values.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d block_b() const { return values.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d block_c() const { return values.topRightCorner<2, 2>(); }
};

ReducedCovariance reduced_covariance(const Matrix8& covariance, ModePair pair);

/// Below this, logarithmic negativity is reported as exactly zero.
inline constexpr double kLogNegativityFloor = 1e-12;

/// Smallest partially-transposed symplectic eigenvalue from the invariant
/// Sigma = det A + det B - 2 det C. Throws NumericalError on unphysical input.
double min_pt_symplectic_eigenvalue(const ReducedCovariance& r);

/// E_N = max(0, -ln(2 eta_minus)), natural log.
double log_negativity(const ReducedCovariance& r);

/// (eta_plus, eta_minus) from the spectrum of i*Omega applied to the partial
/// transpose. Independent of the closed form above.
std::pair<double, double> symplectic_eigenvalues_pt(const ReducedCovariance& r);

/// |E+ - E-| / (E+ + E-). Empty when both are zero; throws
/// std::invalid_argument for negative input.
std::optional<double> contrast_ratio(double e_positive, double e_negative);

}  // namespace kerrcomm
