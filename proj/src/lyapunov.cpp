#include "kerrcomm/lyapunov.hpp"

#include <algorithm>
#include <complex>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace kerrcomm {

namespace {

using Complex8 = Eigen::Matrix<std::complex<double>, 8, 8>;

void symmetrize(Matrix8& v) { v = 0.5 * (v + v.transpose()).eval(); }

}  // namespace

Matrix8 solve_lyapunov_schur(const Matrix8& drift, const Matrix8& diffusion) {
  // A = U T U*, so with Y = U* V U and C = U* D U the equation becomes
  // T Y + Y T* + C = 0 with T upper triangular; solve entries from the
  // bottom-right corner upward.
  Eigen::ComplexSchur<Matrix8> schur(drift);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition did not converge");
  const Complex8& T = schur.matrixT();
  const Complex8& U = schur.matrixU();

  for (int i = 0; i < 8; ++i) {
    if (!(T(i, i).real() < 0.0)) {
      throw InstabilityError("drift matrix has an eigenvalue with non-negative real part");
    }
  }

  const Complex8 C = U.adjoint() * diffusion.cast<std::complex<double>>() * U;
  Complex8 Y = Complex8::Zero();
  for (int j = 7; j >= 0; --j) {
    for (int i = 7; i >= 0; --i) {
      std::complex<double> rhs = -C(i, j);
      for (int k = i + 1; k < 8; ++k) rhs -= T(i, k) * Y(k, j);
      for (int k = j + 1; k < 8; ++k) rhs -= Y(i, k) * std::conj(T(j, k));
      const std::complex<double> pivot = T(i, i) + std::conj(T(j, j));
      if (std::abs(pivot) == 0.0) throw NumericalError("singular Lyapunov pivot");
      Y(i, j) = rhs / pivot;
    }
  }
  Matrix8 V = (U * Y * U.adjoint()).real();
  symmetrize(V);
  return V;
}

Matrix8 solve_lyapunov_kronecker(const Matrix8& drift, const Matrix8& diffusion) {
  // vec(A V + V A^T) = (I kron A + A kron I) vec(V), column-major vec.
  using Matrix64 = Eigen::Matrix<double, 64, 64>;
  using Vector64 = Eigen::Matrix<double, 64, 1>;
  Matrix64 K = Matrix64::Zero();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      // block (i, j) gets delta_ij * A + A(i, j) * I
      if (i == j) K.block<8, 8>(8 * i, 8 * j) += drift;
      K.block<8, 8>(8 * i, 8 * j).diagonal().array() += drift(i, j);
    }
  }
  Eigen::FullPivLU<Matrix64> lu(K);
  if (!lu.isInvertible()) throw NumericalError("Kronecker-sum Lyapunov system is singular");
  const Vector64 rhs = -Eigen::Map<const Vector64>(diffusion.data());
  const Vector64 x = lu.solve(rhs);
  Matrix8 V = Eigen::Map<const Matrix8>(x.data());
  symmetrize(V);
  return V;
}

CovarianceMatrix solve_lyapunov(const Matrix8& drift, const Matrix8& diffusion,
                                LyapunovMethod method) {
  if (!drift.allFinite() || !diffusion.allFinite()) {
    throw NumericalError("solve_lyapunov: non-finite input");
  }
  switch (method) {
    case LyapunovMethod::schur:
      return {solve_lyapunov_schur(drift, diffusion)};
    case LyapunovMethod::kronecker: {
      Eigen::EigenSolver<Matrix8> eig(drift, false);
      if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue iteration failed");
      if (eig.eigenvalues().real().maxCoeff() >= 0.0) {
        throw InstabilityError("drift matrix has an eigenvalue with non-negative real part");
      }
      return {solve_lyapunov_kronecker(drift, diffusion)};
    }
  }
  throw std::invalid_argument("unknown Lyapunov method");
}

double residual(const Matrix8& drift, const Matrix8& covariance, const Matrix8& diffusion) {
  return (drift * covariance + covariance * drift.transpose() + diffusion).cwiseAbs().maxCoeff();
}

double relative_residual(const Matrix8& drift, const Matrix8& covariance,
                         const Matrix8& diffusion) {
  const double scale = drift.cwiseAbs().maxCoeff() * covariance.cwiseAbs().maxCoeff() +
                       diffusion.cwiseAbs().maxCoeff();
  const double r = residual(drift, covariance, diffusion);
  return scale > 0.0 ? r / scale : r;
}

std::array<double, 4> symplectic_eigenvalues(const Matrix8& covariance) {
  // Omega V has eigenvalues +-i*nu for each symplectic eigenvalue nu.
  Matrix8 omega = Matrix8::Zero();
  for (int k = 0; k < 4; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  Eigen::EigenSolver<Matrix8> eig(omega * covariance, false);
  if (eig.info() != Eigen::Success) throw NumericalError("symplectic spectrum did not converge");
  std::array<double, 8> moduli{};
  for (int k = 0; k < 8; ++k) moduli[k] = std::abs(eig.eigenvalues()[k]);
  std::sort(moduli.begin(), moduli.end());
  return {moduli[0], moduli[2], moduli[4], moduli[6]};
}

}  // namespace kerrcomm
