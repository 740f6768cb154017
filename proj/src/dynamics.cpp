#include "kerrcomm/dynamics.hpp"

#include <limits>

#include <Eigen/Eigenvalues>

namespace kerrcomm {

Matrix8 build_drift(const OperatingPoint& op) {
  const double U = op.delta_m_eff + 3.0 * op.delta_k;
  const double V = op.delta_m_eff + op.delta_k;
  const double g = op.g_am;

  Matrix8 A = Matrix8::Zero();
  // microwave resonator
  A(0, 0) = -op.kappa_a;
  A(0, 1) = op.delta_a;
  A(0, 3) = g;
  A(1, 0) = -op.delta_a;
  A(1, 1) = -op.kappa_a;
  A(1, 2) = -g;
  // Kerr magnon
  A(2, 1) = g;
  A(2, 2) = -op.kappa_m;
  A(2, 3) = U;
  A(2, 4) = op.G_m;
  A(3, 0) = -g;
  A(3, 2) = -V;
  A(3, 3) = -op.kappa_m;
  // mechanics
  A(4, 5) = op.omega_b;
  A(5, 3) = -op.G_m;
  A(5, 4) = -op.omega_b;
  A(5, 5) = -op.gamma_b;
  A(5, 7) = -op.G_c;
  // optical cavity
  A(6, 4) = op.G_c;
  A(6, 6) = -op.kappa_c;
  A(6, 7) = op.delta_c_eff;
  A(7, 6) = -op.delta_c_eff;
  A(7, 7) = -op.kappa_c;
  return A;
}

Matrix8 build_diffusion(const OperatingPoint& op) {
  Eigen::Matrix<double, 8, 1> diag;
  const double da = op.kappa_a * (2.0 * op.n_a + 1.0);
  const double dm = op.kappa_m * (2.0 * op.n_m + 1.0);
  const double db = op.gamma_b * (2.0 * op.n_b + 1.0);
  const double dc = op.kappa_c * (2.0 * op.n_c + 1.0);
  diag << da, da, dm, dm, 0.0, db, dc, dc;
  return diag.asDiagonal();
}

DriftDiffusion build_normalized(const OperatingPoint& op) {
  if (!(op.omega_b > 0.0)) throw std::invalid_argument("build_normalized: omega_b must be > 0");
  const double inv = 1.0 / op.omega_b;
  return DriftDiffusion{build_drift(op) * inv, build_diffusion(op) * inv};
}

Stability is_stable(const Matrix8& drift, double epsilon) {
  if (!drift.allFinite()) throw NumericalError("is_stable: drift matrix has non-finite entries");
  Eigen::EigenSolver<Matrix8> solver(drift, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("is_stable: eigenvalue iteration did not converge");
  }
  double max_real = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : solver.eigenvalues()) max_real = std::max(max_real, lambda.real());
  return Stability{max_real < -epsilon, -max_real};
}

}  // namespace kerrcomm
