#pragma once

#include <array>

#include "kerrcomm/dynamics.hpp"

namespace kerrcomm {

enum class LyapunovMethod {
  schur,      ///< Schur-reduced back substitution (production path)
  kronecker,  ///< 64x64 vectorized dense solve (oracle path)
};

/// Steady-state covariance of the eight fluctuation quadratures, vacuum
/// variance 1/2. Ordering follows kQuadratureOrder.
struct CovarianceMatrix {
  Matrix8 values;
};

/// Solves A V + V A^T + D = 0 and symmetrizes the result.
/// Throws InstabilityError when A has an eigenvalue with Re >= 0 and
/// NumericalError when the reduced system is singular.
CovarianceMatrix solve_lyapunov(const Matrix8& drift, const Matrix8& diffusion,
                                LyapunovMethod method = LyapunovMethod::schur);

Matrix8 solve_lyapunov_schur(const Matrix8& drift, const Matrix8& diffusion);
Matrix8 solve_lyapunov_kronecker(const Matrix8& drift, const Matrix8& diffusion);

/// max-norm of A V + V A^T + D.
double residual(const Matrix8& drift, const Matrix8& covariance, const Matrix8& diffusion);

/// Residual divided by ||A||_max ||V||_max + ||D||_max (0 when that is 0).
double relative_residual(const Matrix8& drift, const Matrix8& covariance,
                         const Matrix8& diffusion);

/// The four symplectic eigenvalues of an 8x8 covariance, ascending.
std::array<double, 4> symplectic_eigenvalues(const Matrix8& covariance);

}  // namespace kerrcomm
