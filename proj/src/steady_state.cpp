#include "kerrcomm/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <unsupported/Eigen/Polynomials>

#include "kerrcomm/dynamics.hpp"

namespace kerrcomm {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
constexpr double kTiny = std::numeric_limits<double>::min();

// Everything divided by omega_b, so omega_b == 1 below.
struct Scaled {
  double ka, km, kc;
  double da, dm, dc;
  double g, gm, gc, k0;
  double em, ec;
  cplx chi_a;  // g^2 / (ka + i da): microwave resonator eliminated
  double s, t0;
};

Scaled scale(const SystemParams& p) {
  if (!(p.omega_b > 0.0)) throw std::invalid_argument("omega_b must be > 0");
  const double wb = p.omega_b;
  Scaled n{};
  n.ka = p.kappa_a / wb;
  n.km = p.kappa_m / wb;
  n.kc = p.kappa_c / wb;
  n.da = (p.omega_a - p.w_m) / wb;
  n.dm = (p.omega_m - p.w_m) / wb;
  n.dc = (p.omega_c - p.w_c) / wb;
  n.g = p.g_am / wb;
  n.gm = p.g_m / wb;
  n.gc = p.g_c / wb;
  n.k0 = p.K0 / wb;
  n.em = p.E_m / wb;
  n.ec = p.E_c / wb;
  if (n.g != 0.0 && n.da == 0.0) {
    throw std::invalid_argument(
        "microwave detuning omega_a - w_m is zero while g_am != 0: the eliminated-photon "
        "steady state is singular");
  }
  n.chi_a = n.g == 0.0 ? cplx{0.0, 0.0} : n.g * n.g / cplx(n.ka, n.da);
  n.s = n.km + n.chi_a.real();
  n.t0 = n.dm + n.chi_a.imag();
  return n;
}

MeanFields fields_from(const Scaled& n, double q, double x) {
  MeanFields f;
  f.q = q;
  f.c = n.ec == 0.0 ? cplx{} : n.ec / cplx(n.kc, n.dc - n.gc * q);
  f.m = n.em == 0.0 ? cplx{} : n.em / (cplx(n.s, n.t0 + n.gm * q + 2.0 * n.k0 * x));
  f.a = n.g == 0.0 ? cplx{} : -I * n.g * f.m / cplx(n.ka, n.da);
  return f;
}

double rel(double diff, double scale) { return scale > 0.0 ? diff / scale : diff; }

double residual_scaled(const Scaled& n, const MeanFields& f) {
  const double x = std::norm(f.m);
  const cplx za(n.ka, n.da);
  const cplx zm(n.km, n.dm + n.gm * f.q + 2.0 * n.k0 * x);
  const cplx zc(n.kc, n.dc - n.gc * f.q);

  const double ra = rel(std::abs(za * f.a + I * n.g * f.m),
                        std::max(std::abs(za * f.a), std::abs(n.g * f.m)));
  const double rm = rel(std::abs(zm * f.m + I * n.g * f.a - n.em),
                        std::max({std::abs(zm * f.m), std::abs(n.g * f.a), n.em}));
  const double rc = rel(std::abs(zc * f.c - n.ec), std::max(std::abs(zc * f.c), n.ec));
  const double photon_force = n.gc * std::norm(f.c);
  const double magnon_force = n.gm * x;
  const double rq = rel(std::abs(f.q - photon_force + magnon_force),
                        std::max({std::abs(f.q), photon_force, magnon_force}));
  return std::max({ra, rm, rc, rq, std::abs(f.p)});
}

// Ascending-coefficient polynomial arithmetic.
using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly scaled(Poly a, double factor) {
  for (double& c : a) c *= factor;
  return a;
}

// Real roots of an ascending-coefficient polynomial via the eigenvalues of
// its balanced companion matrix.
std::vector<double> real_roots(Poly coeffs) {
  while (!coeffs.empty() && std::abs(coeffs.back()) <= kTiny) coeffs.pop_back();
  if (coeffs.size() <= 1) {
    if (coeffs.empty()) throw NumericalError("self-consistency polynomial vanishes identically");
    return {};
  }
  if (coeffs.size() == 2) return {-coeffs[0] / coeffs[1]};

  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  std::vector<double> out;
  for (const auto& root : solver.roots()) {
    if (std::abs(root.imag()) <= 1e-6 * std::max(1.0, std::abs(root))) out.push_back(root.real());
  }
  return out;
}

// Newton iteration on
//   F1 = (q + gm x) P2(q) - gc ec^2,   P2(q) = kc^2 + (dc - gc q)^2
//   F2 = x (s^2 + w^2) - em^2,         w = t0 + gm q + 2 k0 x
std::optional<std::pair<double, double>> polish(const Scaled& n, double q, double x) {
  const double force = n.gc * n.ec * n.ec;
  for (int iter = 0; iter < 100; ++iter) {
    const double u = n.dc - n.gc * q;
    const double p2 = n.kc * n.kc + u * u;
    const double dp2 = -2.0 * n.gc * u;
    const double w = n.t0 + n.gm * q + 2.0 * n.k0 * x;
    const double f1 = (q + n.gm * x) * p2 - force;
    const double f2 = x * (n.s * n.s + w * w) - n.em * n.em;

    const double s1 = std::max({force, std::abs(q) * p2, n.gm * std::abs(x) * p2, kTiny});
    const double s2 = std::max({n.em * n.em, std::abs(x) * (n.s * n.s + w * w), kTiny});

    Eigen::Matrix2d J;
    J << (p2 + (q + n.gm * x) * dp2) / s1, n.gm * p2 / s1,
         2.0 * x * w * n.gm / s2, (n.s * n.s + w * w + 4.0 * n.k0 * x * w) / s2;
    const Eigen::Vector2d F(f1 / s1, f2 / s2);
    if (F.cwiseAbs().maxCoeff() < 1e-15) break;
    const Eigen::Vector2d step = J.fullPivLu().solve(F);
    if (!step.allFinite()) return std::nullopt;
    q -= step[0];
    x -= step[1];
    if (std::abs(step[0]) <= 1e-16 * std::max(std::abs(q), kTiny) &&
        std::abs(step[1]) <= 1e-16 * std::max(std::abs(x), kTiny)) {
      break;
    }
  }
  if (!std::isfinite(q) || !std::isfinite(x)) return std::nullopt;
  return std::make_pair(q, x);
}

struct Candidate {
  double q;
  double x;
};

std::vector<Candidate> candidates(const Scaled& n) {
  const double lin = n.s * n.s + n.t0 * n.t0;
  const double x_scale = n.em == 0.0 ? 1.0 : n.em * n.em / std::max(lin, kTiny);
  const double p2_0 = n.kc * n.kc + n.dc * n.dc;
  double q_scale =
      std::max(n.gc * n.ec * n.ec / std::max(p2_0, kTiny), n.gm * (n.em == 0.0 ? 0.0 : x_scale));
  if (!(q_scale > 0.0) || !std::isfinite(q_scale)) q_scale = 1.0;

  // P2 and the displacement balance in the scaled unknown Q = q / q_scale.
  const Poly P2 = {p2_0, -2.0 * n.dc * n.gc * q_scale, n.gc * n.gc * q_scale * q_scale};
  const double force = n.gc * n.ec * n.ec;

  std::vector<Candidate> out;
  if (n.gm != 0.0) {
    // x = N(q) / (gm P2(q)) with N = gc ec^2 - q P2; substituting into the
    // magnon equation times (gm P2)^3 leaves one polynomial of degree <= 9.
    const Poly N = add(Poly{force}, scaled(mul(Poly{0.0, 1.0}, P2), -q_scale));
    const Poly T = {n.t0, n.gm * q_scale};
    const Poly P2sq = mul(P2, P2);
    const Poly detuning = add(scaled(mul(T, P2), n.gm), scaled(N, 2.0 * n.k0));
    const Poly inner = add(scaled(P2sq, n.s * n.s * n.gm * n.gm), mul(detuning, detuning));
    const Poly poly = add(mul(N, inner), scaled(mul(P2sq, P2), -n.em * n.em * n.gm * n.gm * n.gm));
    for (double Q : real_roots(poly)) {
      const double q = Q * q_scale;
      const double p2 = n.kc * n.kc + (n.dc - n.gc * q) * (n.dc - n.gc * q);
      if (!(p2 > 0.0)) continue;
      out.push_back({q, (force / p2 - q) / n.gm});
    }
  } else {
    // No magnon back-action on the mechanics: q solves q P2(q) = gc ec^2 on
    // its own, then |m|^2 solves a cubic at that q.
    std::vector<double> qs;
    if (n.gc == 0.0) {
      qs.push_back(0.0);
    } else {
      for (double Q : real_roots(add(Poly{-force}, scaled(mul(Poly{0.0, 1.0}, P2), q_scale)))) {
        qs.push_back(Q * q_scale);
      }
    }
    for (double q : qs) {
      const double t = n.t0;  // gm == 0
      // 4 k0^2 x^3 + 4 k0 t x^2 + (s^2 + t^2) x - em^2 in X = x / x_scale
      const Poly cubic = {-n.em * n.em, (n.s * n.s + t * t) * x_scale,
                          4.0 * n.k0 * t * x_scale * x_scale,
                          4.0 * n.k0 * n.k0 * x_scale * x_scale * x_scale};
      for (double X : real_roots(cubic)) out.push_back({q, X * x_scale});
    }
  }
  return out;
}

std::vector<MeanFields> roots_scaled(const Scaled& n, double tolerance) {
  std::vector<MeanFields> out;
  for (const Candidate& cand : candidates(n)) {
    auto polished = polish(n, cand.q, cand.x);
    if (!polished) continue;
    auto [q, x] = *polished;
    if (x < 0.0) {
      if (x < -1e-12 * std::max(1.0, std::abs(cand.x))) continue;
      x = 0.0;
    }
    MeanFields f = fields_from(n, q, x);
    if (!(residual_scaled(n, f) < tolerance)) continue;
    const double xf = std::norm(f.m);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const MeanFields& g) {
      const double xg = std::norm(g.m);
      return std::abs(xg - xf) <= 1e-9 * std::max({xg, xf, kTiny}) &&
             std::abs(g.q - f.q) <= 1e-9 * std::max({std::abs(g.q), std::abs(f.q), kTiny});
    });
    if (!duplicate) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const MeanFields& l, const MeanFields& r) {
    return std::norm(l.m) < std::norm(r.m);
  });
  return out;
}

double branch_distance(const MeanFields& l, const MeanFields& r) {
  const double xl = std::norm(l.m), xr = std::norm(r.m);
  return std::abs(xl - xr) / std::max({xl, xr, 1.0}) +
         std::abs(l.q - r.q) / std::max({std::abs(l.q), std::abs(r.q), 1.0});
}

std::size_t nearest(const std::vector<MeanFields>& set, const MeanFields& target) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < set.size(); ++k) {
    if (branch_distance(set[k], target) < branch_distance(set[best], target)) best = k;
  }
  return best;
}

}  // namespace

double kerr_shift(double K0, double magnon_number) {
  if (!(magnon_number >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("kerr_shift: magnon number must be >= 0, got {}", magnon_number));
  }
  return 2.0 * K0 * magnon_number;
}

std::vector<MeanFields> mean_field_roots(const SystemParams& params) {
  const Scaled n = scale(params);
  auto roots = roots_scaled(n, SteadyStateOptions{}.residual_tolerance);
  if (roots.empty()) throw NumericalError("no real non-negative mean-field solution found");
  return roots;
}

std::optional<MeanFields> mean_field_fixed_point(const SystemParams& params,
                                                 const MeanFields& start,
                                                 const FixedPointOptions& options) {
  const Scaled n = scale(params);
  cplx m = start.m;
  cplx c = start.c;
  double damping = options.initial_damping;
  double previous_step = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double q = n.gc * std::norm(c) - n.gm * std::norm(m);
    const cplx c_next = n.ec == 0.0 ? cplx{} : n.ec / cplx(n.kc, n.dc - n.gc * q);
    const cplx m_next =
        n.em == 0.0 ? cplx{} : n.em / cplx(n.s, n.t0 + n.gm * q + 2.0 * n.k0 * std::norm(m));
    if (!std::isfinite(std::abs(m_next)) || !std::isfinite(std::abs(c_next))) return std::nullopt;

    const double size = std::max({std::abs(m), std::abs(m_next), std::abs(c), std::abs(c_next)});
    const double step = std::max(std::abs(m_next - m), std::abs(c_next - c));
    const double rel_step = size > 0.0 ? step / size : 0.0;
    if (rel_step <= options.tolerance) {
      const double x = std::norm(m_next);
      MeanFields f = fields_from(n, n.gc * std::norm(c_next) - n.gm * x, x);
      // Re-derive c and m from the converged displacement so every relation
      // is evaluated at one consistent point.
      return f;
    }
    if (step > previous_step) {
      damping = std::max(options.min_damping, 0.5 * damping);
    } else {
      damping = std::min(1.0, 1.02 * damping);
    }
    previous_step = step;
    m += damping * (m_next - m);
    c += damping * (c_next - c);
  }
  return std::nullopt;
}

double mean_field_residual(const SystemParams& params, const MeanFields& fields) {
  return residual_scaled(scale(params), fields);
}

std::complex<double> approximate_magnon_amplitude(const SystemParams& params,
                                                  const MeanFields& fields) {
  const Scaled n = scale(params);
  const double effective = n.dm + n.gm * fields.q + 2.0 * n.k0 * fields.magnon_number();
  return I * n.em * n.da / (n.g * n.g - effective * n.da);
}

BranchSet solve_mean_fields(const SystemParams& params, const SteadyStateOptions& options) {
  const Scaled n = scale(params);
  const auto roots = roots_scaled(n, options.residual_tolerance);
  if (roots.empty()) throw NumericalError("no real non-negative mean-field solution found");

  BranchSet set;
  for (const MeanFields& f : roots) {
    const Stability st = is_stable(build_normalized(operating_point_from_fields(params, f)).drift);
    set.branches.push_back(Branch{f, st.stable, residual_scaled(n, f)});
  }

  // Adiabatic switch-on: ramp both drives from zero and follow the nearest
  // root at every step.
  MeanFields tracked{};
  if (set.branches.size() > 1) {
    const int steps = std::max(1, options.homotopy_steps);
    for (int k = 1; k < steps; ++k) {
      SystemParams ramp = params;
      ramp.E_m = params.E_m * k / steps;
      ramp.E_c = params.E_c * k / steps;
      const auto stage = roots_scaled(scale(ramp), options.residual_tolerance);
      if (!stage.empty()) tracked = stage[nearest(stage, tracked)];
    }
    set.selected = nearest(roots, tracked);
  }

  if (options.cross_check) {
    if (auto fp = mean_field_fixed_point(params)) {
      const double xf = fp->magnon_number();
      for (std::size_t k = 0; k < roots.size(); ++k) {
        const double xr = roots[k].magnon_number();
        if (std::abs(xf - xr) <= 1e-8 * std::max(xr, kTiny) || (xf == 0.0 && xr == 0.0)) {
          set.fixed_point_match = k;
          break;
        }
      }
      if (!set.fixed_point_match) {
        throw NumericalError(fmt::format(
            "steady-state cross-check failed: fixed point |m|^2 = {:.12e} matches no polynomial "
            "root",
            xf));
      }
    }
  }
  return set;
}

OperatingPoint operating_point_from_fields(const SystemParams& p, const MeanFields& f) {
  const double x = f.magnon_number();
  OperatingPoint op;
  op.delta_a = to_angular(p.omega_a - p.w_m);
  op.delta_m_eff = to_angular(p.omega_m - p.w_m) + to_angular(p.g_m) * f.q;
  op.delta_c_eff = to_angular(p.omega_c - p.w_c) - to_angular(p.g_c) * f.q;
  op.delta_k = kerr_shift(to_angular(p.K0), x);
  op.G_m = std::sqrt(2.0) * to_angular(p.g_m) * std::abs(f.m);
  op.G_c = std::sqrt(2.0) * to_angular(p.g_c) * std::abs(f.c);
  op.g_am = to_angular(p.g_am);
  op.kappa_a = to_angular(p.kappa_a);
  op.kappa_m = to_angular(p.kappa_m);
  op.kappa_c = to_angular(p.kappa_c);
  op.gamma_b = to_angular(p.gamma_b);
  op.omega_b = to_angular(p.omega_b);
  op.n_a = thermal_occupation(to_angular(p.omega_a), p.temperature);
  op.n_m = thermal_occupation(to_angular(p.omega_m), p.temperature);
  op.n_b = thermal_occupation(to_angular(p.omega_b), p.temperature);
  op.n_c = thermal_occupation(to_angular(p.omega_c), p.temperature);
  return op;
}

OperatingPoint operating_point_direct(const EffectiveInputs& e) {
  const double wb = to_angular(e.omega_b);
  OperatingPoint op;
  op.delta_a = e.delta_a * wb;
  op.delta_m_eff = e.delta_m_eff * wb;
  op.delta_c_eff = e.delta_c_eff * wb;
  op.delta_k = e.delta_k * wb;
  op.G_m = to_angular(e.G_m);
  op.G_c = to_angular(e.G_c);
  op.g_am = to_angular(e.g_am);
  op.kappa_a = to_angular(e.kappa_a);
  op.kappa_m = to_angular(e.kappa_m);
  op.kappa_c = to_angular(e.kappa_c);
  op.gamma_b = to_angular(e.gamma_b);
  op.omega_b = wb;
  op.n_a = thermal_occupation(to_angular(e.omega_a), e.temperature);
  op.n_m = thermal_occupation(to_angular(e.omega_m), e.temperature);
  op.n_b = thermal_occupation(wb, e.temperature);
  op.n_c = thermal_occupation(to_angular(e.omega_c), e.temperature);
  return op;
}

}  // namespace kerrcomm
