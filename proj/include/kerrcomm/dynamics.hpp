#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

#include "kerrcomm/core.hpp"

namespace kerrcomm {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Quadrature ordering shared by the drift, diffusion and covariance matrices.
inline constexpr std::array<std::string_view, 8> kQuadratureOrder = {
    "X_a", "Y_a", "X_m", "Y_m", "q", "p", "X_c", "Y_c"};

/// First quadrature index of a mode; the conjugate quadrature follows it.
constexpr int quadrature_offset(Mode mode) { return 2 * static_cast<int>(mode); }

/// Default stability threshold, in units of omega_b.
inline constexpr double kDefaultStabilityEpsilon = 1e-9;

struct DriftDiffusion {
  Matrix8 drift;
  Matrix8 diffusion;

  DriftDiffusion scaled(double factor) const { return {drift * factor, diffusion * factor}; }
};

/// Linearized drift matrix of the fluctuation quadratures, in the units of
/// the operating point (rad/s). The magnon block carries the Kerr shift
/// through U = delta_m_eff + 3 delta_k and V = delta_m_eff + delta_k.
Matrix8 build_drift(const OperatingPoint& op);

/// Diagonal diffusion matrix kappa(2n+1) per quadrature; the q entry is 0.
Matrix8 build_diffusion(const OperatingPoint& op);

/// Drift and diffusion divided by omega_b. The Lyapunov solution is
/// invariant under this rescaling and the conditioning is much better.
DriftDiffusion build_normalized(const OperatingPoint& op);

struct Stability {
  bool stable = false;
  /// -max Re(eigenvalue), in the units of the matrix passed in.
  double margin = 0.0;
};

/// Stable iff every eigenvalue of `drift` has real part < -epsilon.
/// Throws NumericalError if the eigenvalue iteration fails.
Stability is_stable(const Matrix8& drift, double epsilon = kDefaultStabilityEpsilon);

}  // namespace kerrcomm
