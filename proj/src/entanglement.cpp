#include "kerrcomm/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "kerrcomm/dynamics.hpp"

namespace kerrcomm {

ModePair::ModePair(Mode first, Mode second) : first_(first), second_(second) {
  if (first == second) {
    throw std::invalid_argument(
        fmt::format("mode pair needs two distinct modes, got {0}{0}", mode_symbol(first)));
  }
}

ModePair ModePair::parse(std::string_view label) {
  if (label.size() != 2) {
    throw std::invalid_argument(fmt::format("mode pair label must be two letters, got '{}'", label));
  }
  return ModePair(mode_from_symbol(label[0]), mode_from_symbol(label[1]));
}

std::string ModePair::label() const {
  return std::string(mode_symbol(first_)) + std::string(mode_symbol(second_));
}

std::array<ModePair, 6> all_mode_pairs() {
  using M = Mode;
  return {ModePair(M::microwave_photon, M::magnon),   ModePair(M::microwave_photon, M::phonon),
          ModePair(M::microwave_photon, M::optical_photon), ModePair(M::magnon, M::phonon),
          ModePair(M::magnon, M::optical_photon),     ModePair(M::phonon, M::optical_photon)};
}

ReducedCovariance reduced_covariance(const Matrix8& covariance, ModePair pair) {
  const std::array<int, 4> idx = {
      quadrature_offset(pair.first()), quadrature_offset(pair.first()) + 1,
      quadrature_offset(pair.second()), quadrature_offset(pair.second()) + 1};
  ReducedCovariance r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.values(i, j) = covariance(idx[i], idx[j]);
  }
  return r;
}

double min_pt_symplectic_eigenvalue(const ReducedCovariance& r) {
  const double sigma =
      r.block_a().determinant() + r.block_b().determinant() - 2.0 * r.block_c().determinant();
  const double det4 = r.values.determinant();
  const double tol = 1e-12 * std::max(1.0, sigma * sigma);

  double disc = sigma * sigma - 4.0 * det4;
  if (disc < -tol) {
    throw NumericalError(fmt::format(
        "unphysical two-mode covariance: Sigma^2 - 4 det V4 = {:.6e} < 0", disc));
  }
  disc = std::max(disc, 0.0);
  double radicand = sigma - std::sqrt(disc);
  if (radicand < -tol) {
    throw NumericalError(fmt::format(
        "unphysical two-mode covariance: negative radicand {:.6e} in eta_minus", radicand));
  }
  radicand = std::max(radicand, 0.0);
  return std::sqrt(radicand / 2.0);
}

double log_negativity(const ReducedCovariance& r) {
  const double eta = min_pt_symplectic_eigenvalue(r);
  if (eta == 0.0) throw NumericalError("eta_minus vanished; covariance is unphysical");
  const double value = -std::log(2.0 * eta);
  return value < kLogNegativityFloor ? 0.0 : value;
}

std::pair<double, double> symplectic_eigenvalues_pt(const ReducedCovariance& r) {
  // Partial transpose flips the second mode's momentum quadrature.
  Eigen::Matrix4d flip = Eigen::Matrix4d::Identity();
  flip(3, 3) = -1.0;
  const Eigen::Matrix4d pt = flip * r.values * flip;
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  Eigen::EigenSolver<Eigen::Matrix4d> eig(omega * pt, false);
  if (eig.info() != Eigen::Success) throw NumericalError("PT symplectic spectrum did not converge");
  std::array<double, 4> moduli{};
  for (int k = 0; k < 4; ++k) moduli[k] = std::abs(eig.eigenvalues()[k]);
  std::sort(moduli.begin(), moduli.end());
  return {0.5 * (moduli[2] + moduli[3]), 0.5 * (moduli[0] + moduli[1])};
}

std::optional<double> contrast_ratio(double e_positive, double e_negative) {
  if (!(e_positive >= 0.0) || !(e_negative >= 0.0)) {
    throw std::invalid_argument(fmt::format(
        "contrast_ratio: entanglement values must be >= 0, got {} and {}", e_positive, e_negative));
  }
  const double sum = e_positive + e_negative;
  if (sum == 0.0) return std::nullopt;
  return std::abs(e_positive - e_negative) / sum;
}

}  // namespace kerrcomm
