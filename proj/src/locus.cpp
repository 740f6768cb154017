#include <cmath>

#include <Eigen/QR>
#include <fmt/format.h>

#include "kerrcomm/sweep.hpp"

namespace kerrcomm {

LocusFit fit_locus(std::span<const double> delta_k, std::span<const double> delta_m,
                   const Eigen::MatrixXd& surface) {
  if (surface.rows() != static_cast<Eigen::Index>(delta_k.size()) ||
      surface.cols() != static_cast<Eigen::Index>(delta_m.size())) {
    throw std::invalid_argument("fit_locus: surface shape does not match the axes");
  }
  LocusFit fit;
  const Eigen::Index cols = surface.cols();
  for (Eigen::Index row = 0; row < surface.rows(); ++row) {
    Eigen::Index best = -1;
    for (Eigen::Index col = 0; col < cols; ++col) {
      const double v = surface(row, col);
      if (std::isfinite(v) && v > 0.0 && (best < 0 || v > surface(row, best))) best = col;
    }
    if (best < 0) {
      fit.gaps.push_back(delta_k[row]);
      continue;
    }
    // Three-point parabola through the discrete maximum and its neighbours.
    double optimum = delta_m[best];
    if (best > 0 && best + 1 < cols) {
      const double y0 = surface(row, best - 1);
      const double y1 = surface(row, best);
      const double y2 = surface(row, best + 1);
      const double curvature = y0 - 2.0 * y1 + y2;
      if (std::isfinite(y0) && std::isfinite(y2) && curvature < 0.0) {
        const double h = delta_m[best + 1] - delta_m[best];
        optimum += 0.5 * (y0 - y2) / curvature * h;
      }
    }
    fit.delta_k.push_back(delta_k[row]);
    fit.optimum.push_back(optimum);
  }
  if (fit.delta_k.size() < 3) {
    throw std::invalid_argument(fmt::format(
        "fit_locus: only {} rows have an entangled point, need 3", fit.delta_k.size()));
  }
  const auto n = static_cast<Eigen::Index>(fit.delta_k.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = fit.delta_k[i];
    design.row(i) << x * x, x, 1.0;
    target[i] = fit.optimum[i];
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(target);
  fit.coefficients = {c[0], c[1], c[2]};
  return fit;
}

LocusFit locus_from_result(const SweepResult& result, ModePair pair) {
  if (result.parameters.size() != 2 || result.parameters[0] != SweepParameter::delta_k ||
      result.parameters[1] != SweepParameter::delta_m_eff) {
    throw std::invalid_argument("locus needs a sweep with axis1 = delta_k, axis2 = delta_m_eff");
  }
  std::size_t column = result.pairs.size();
  for (std::size_t k = 0; k < result.pairs.size(); ++k) {
    if (result.pairs[k] == pair) column = k;
  }
  if (column == result.pairs.size()) {
    throw std::invalid_argument(fmt::format("pair {} was not evaluated", pair.label()));
  }
  const auto rows = static_cast<Eigen::Index>(result.axis1_values.size());
  const auto cols = static_cast<Eigen::Index>(result.axis2_values.size());
  Eigen::MatrixXd surface(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& p = result.at(result.grid_index(i, j), 0);
      surface(i, j) = p.stable() ? *p.log_negativity[column] : std::nan("");
    }
  }
  return fit_locus(result.axis1_values, result.axis2_values, surface);
}

LocusFit optimal_locus(ModePair pair, const Axis& delta_k, const Axis& delta_m,
                       const EffectiveInputs& fixed, int threads) {
  if (delta_k.parameter != SweepParameter::delta_k ||
      delta_m.parameter != SweepParameter::delta_m_eff) {
    throw std::invalid_argument("optimal_locus: axes must be delta_k and delta_m_eff");
  }
  SweepSpec spec;
  spec.axis1 = delta_k;
  spec.axis2 = delta_m;
  spec.fixed = fixed;
  spec.pairs = {pair};
  spec.kerr_signs = {KerrSign::given};
  return locus_from_result(run_sweep(spec, threads), pair);
}

}  // namespace kerrcomm
