// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "kerrcomm/entanglement.hpp"
#include "kerrcomm/lyapunov.hpp"
#include "kerrcomm/steady_state.hpp"
#include "kerrcomm/sweep.hpp"
#include "support.hpp"

using namespace kerrcomm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every stable point seen by criteria 3-7, for the physicality check.
std::vector<SweepResult> g_seen;

const SweepResult& keep(SweepResult r) {
  g_seen.push_back(std::move(r));
  return g_seen.back();
}

std::string table_text(const SweepResult& r) {
  std::ostringstream out;
  export_table(r, out);
  return out.str();
}

EffectiveInputs pair_setting(const char* pair) {
  auto in = testing::reference_inputs();
  in.delta_a = std::string(pair) == "mc" ? 0.0 : -1.0;
  in.delta_c_eff = 1.0;
  in.delta_k = 0.1;
  return in;
}

SweepSpec detuning_scan(const EffectiveInputs& fixed, const char* pair,
                        std::vector<KerrSign> signs) {
  SweepSpec spec;
  spec.axis1 = Axis{SweepParameter::delta_m_eff, -2.0, 0.0, 400};
  spec.fixed = fixed;
  spec.pairs = {ModePair::parse(pair)};
  spec.kerr_signs = std::move(signs);
  return spec;
}

SweepSpec temperature_scan(const char* pair, std::vector<KerrSign> signs) {
  SweepSpec spec;
  spec.axis1 = Axis{SweepParameter::temperature, 0.0, 0.8, 321};
  spec.fixed = pair_setting(pair);
  spec.fixed.delta_m_eff = -1.11;
  spec.pairs = {ModePair::parse(pair)};
  spec.kerr_signs = std::move(signs);
  return spec;
}

SweepSpec criterion3_spec() {
  return detuning_scan(pair_setting("mb"), "mb",
                       {KerrSign::zero, KerrSign::positive, KerrSign::negative});
}

// argmax over the axis for one sign series; NaN when nothing is entangled
std::pair<double, double> peak(const SweepResult& r, std::size_t sign) {
  double best_x = std::nan(""), best = 0.0;
  for (std::size_t i = 0; i < r.axis1_values.size(); ++i) {
    const auto& p = r.at(r.grid_index(i), sign);
    if (p.stable() && *p.log_negativity[0] > best) {
      best = *p.log_negativity[0];
      best_x = r.axis1_values[i];
    }
  }
  return {best_x, best};
}

Outcome c1_lyapunov() {
  const auto start = std::chrono::steady_clock::now();
  const auto points = testing::random_stable_points(1000);
  double worst_diff = 0.0, worst_res = 0.0;
  for (const auto& in : points) {
    const auto dd = build_normalized(operating_point_direct(in));
    const Matrix8 a = solve_lyapunov_schur(dd.drift, dd.diffusion);
    const Matrix8 b = solve_lyapunov_kronecker(dd.drift, dd.diffusion);
    worst_diff = std::max(worst_diff, (a - b).cwiseAbs().maxCoeff());
    worst_res = std::max(worst_res, relative_residual(dd.drift, a, dd.diffusion));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst_diff < 1e-8 && worst_res < 1e-10 && secs < 30.0,
          fmt::format("1000 points: max|dV| = {:.2e}, max relative residual = {:.2e}, {:.2f} s",
                      worst_diff, worst_res, secs)};
}

Outcome c2_log_negativity() {
  double worst = 0.0;
  for (const auto& in : testing::random_stable_points(1000)) {
    const auto dd = build_normalized(operating_point_direct(in));
    const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion).values;
    for (const auto& pair : all_mode_pairs()) {
      const auto r = reduced_covariance(V, pair);
      const double closed = min_pt_symplectic_eigenvalue(r);
      const double spectral = symplectic_eigenvalues_pt(r).second;
      worst = std::max(worst, std::abs(closed - spectral) / spectral);
    }
  }
  double worst_tmsv = 0.0;
  for (double r : {0.1, 0.5, 1.0}) {
    const double c = std::cosh(2.0 * r) / 2.0, s = std::sinh(2.0 * r) / 2.0;
    ReducedCovariance tmsv;
    tmsv.values << c, 0, s, 0, 0, c, 0, -s, s, 0, c, 0, 0, -s, 0, c;
    worst_tmsv = std::max(worst_tmsv, std::abs(log_negativity(tmsv) - 2.0 * r));
  }
  return {worst < 1e-10 && worst_tmsv < 1e-9,
          fmt::format("closed form vs PT spectrum max rel = {:.2e}; squeezed vacuum max err = {:.2e}",
                      worst, worst_tmsv)};
}

Outcome c3_peak_shifts() {
  const auto start = std::chrono::steady_clock::now();
  const auto& r = keep(run_sweep(criterion3_spec()));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double expected[] = {-1.0, -1.2, -0.8};
  const char* names[] = {"zero", "positive", "negative"};
  Outcome out;
  for (std::size_t s = 0; s < 3; ++s) {
    const double x = peak(r, s).first;
    const bool ok = std::abs(x - expected[s]) <= 0.05;
    out.pass &= ok;
    out.detail += fmt::format("{} {:.4f} (want {:.1f}); ", names[s], x, expected[s]);
  }
  out.pass &= secs < 10.0;
  out.detail += fmt::format("{:.2f} s", secs);
  return out;
}

Outcome c4_ordering() {
  const auto r = run_sweep(criterion3_spec());
  const double zero = peak(r, 0).second, pos = peak(r, 1).second, neg = peak(r, 2).second;
  return {pos > zero && zero > neg,
          fmt::format("peak E_N: positive {:.4f} > zero {:.4f} > negative {:.4f}", pos, zero, neg)};
}

Outcome c5_loci() {
  const auto start = std::chrono::steady_clock::now();
  const Axis dk{SweepParameter::delta_k, -0.2, 0.2, 50};
  const Axis dm{SweepParameter::delta_m_eff, -2.0, 0.0, 400};
  struct Target {
    const char* pair;
    std::array<double, 3> c;
  };
  const Target targets[] = {{"ac", {-0.4, -2.06, -1.0}}, {"mc", {-0.45, -2.1, -0.91}}};
  Outcome out;
  for (const auto& t : targets) {
    auto fixed = pair_setting(t.pair);
    fixed.delta_k = 0.0;
    const auto fit = optimal_locus(ModePair::parse(t.pair), dk, dm, fixed);

    SweepSpec spec;
    spec.axis1 = dk;
    spec.axis2 = dm;
    spec.fixed = fixed;
    spec.pairs = {ModePair::parse(t.pair)};
    keep(run_sweep(spec));

    bool ok = fit.gaps.empty();
    for (int k = 0; k < 3; ++k) ok &= std::abs(fit.coefficients[k] - t.c[k]) <= 0.25 * std::abs(t.c[k]);
    out.pass &= ok;
    out.detail += fmt::format("{}: ({:.3f}, {:.3f}, {:.3f}) vs ({}, {}, {}) {}; ", t.pair,
                              fit.coefficients[0], fit.coefficients[1], fit.coefficients[2], t.c[0],
                              t.c[1], t.c[2], ok ? "ok" : "OUT");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.pass &= secs < 300.0;
  out.detail += fmt::format("{:.2f} s", secs);
  return out;
}

Outcome c6_contrast() {
  Outcome out;
  for (const char* pair : {"ac", "mc"}) {
    const auto& r = keep(run_sweep(
        detuning_scan(pair_setting(pair), pair, {KerrSign::positive, KerrSign::negative})));
    double best = 0.0;
    bool bounded = r.has_contrast;
    for (const auto& chi : r.contrast) {
      if (!chi) continue;
      bounded &= *chi >= 0.0 && *chi <= 1.0;
      best = std::max(best, *chi);
    }

    const auto& t = keep(run_sweep(temperature_scan(pair, {KerrSign::positive, KerrSign::negative})));
    double worst_drop = 0.0;
    std::optional<double> previous;
    std::size_t span = 0;
    for (std::size_t i = 0; i < t.axis1_values.size(); ++i) {
      const auto& a = t.at(i, 0);
      const auto& b = t.at(i, 1);
      if (!(a.stable() && b.stable() && *a.log_negativity[0] > 0.0 && *b.log_negativity[0] > 0.0)) {
        break;
      }
      const double chi = *t.contrast[i];
      if (previous) worst_drop = std::max(worst_drop, *previous - chi);
      previous = chi;
      ++span;
    }
    const bool ok = bounded && best > 0.99 && span >= 2 && worst_drop <= 1e-12;
    out.pass &= ok;
    out.detail += fmt::format("{}: max chi {:.4f}, chi(T) over {} points, largest drop {:.1e}; ", pair,
                              best, span, worst_drop);
  }
  return out;
}

Outcome c7_survival() {
  Outcome out;
  for (const char* pair : {"ac", "mc"}) {
    const auto& r = keep(run_sweep(
        temperature_scan(pair, {KerrSign::zero, KerrSign::positive, KerrSign::negative})));
    double survival[3] = {-1.0, -1.0, -1.0};
    bool decreasing = true;
    for (std::size_t s = 0; s < 3; ++s) {
      double previous = INFINITY;
      for (std::size_t i = 0; i < r.axis1_values.size(); ++i) {
        const auto& p = r.at(i, s);
        if (!p.stable()) {
          decreasing = false;
          continue;
        }
        const double e = *p.log_negativity[0];
        decreasing &= e <= previous;
        previous = e;
        if (e > 1e-4) survival[s] = r.axis1_values[i];
      }
    }
    const bool ok = decreasing && survival[1] > survival[0] && survival[1] > survival[2];
    out.pass &= ok;
    out.detail += fmt::format("{}: survival T (+) {:.4f} K, (0) {:.4f} K, (-) {:.4f} K{}; ", pair,
                              survival[1], survival[0], survival[2],
                              decreasing ? "" : ", not monotone");
  }
  return out;
}

Outcome c8_physicality() {
  std::size_t checked = 0, bad = 0;
  double lowest = INFINITY;
  for (const auto& r : g_seen) {
    for (const auto& p : r.points) {
      if (!p.stable()) continue;
      ++checked;
      lowest = std::min(lowest, p.min_symplectic);
      bool ok = p.min_symplectic >= 0.5 - 1e-9;
      for (const auto& e : p.log_negativity) ok &= *e >= 0.0;
      bad += !ok;
    }
  }
  return {checked > 0 && bad == 0,
          fmt::format("{} stable points from criteria 3-7, {} violations, lowest symplectic "
                      "eigenvalue {:.12f}",
                      checked, bad, lowest)};
}

Outcome c9_steady_state() {
  std::size_t matched = 0, bistable = 0;
  double worst_agreement = 0.0, worst_residual = 0.0;
  std::string failure;
  for (int k = 0; k < 100; ++k) {
    SystemParams p;
    p.w_m = p.omega_a + p.omega_b;
    p.w_c = p.omega_c - p.omega_b;
    p.K0 = 1e-6;
    p.E_c = 2.3e13;
    p.E_m = 1.5e14 * k / 99.0;
    try {
      const auto set = solve_mean_fields(p, {.cross_check = true});
      std::size_t stable = 0;
      double low = INFINITY, high = 0.0;
      for (const auto& b : set.branches) {
        worst_residual = std::max(worst_residual, b.residual);
        if (b.stable) {
          ++stable;
          low = std::min(low, b.fields.magnon_number());
          high = std::max(high, b.fields.magnon_number());
        }
      }
      if (stable >= 2 && high > 2.0 * low) ++bistable;
      if (set.fixed_point_match) {
        ++matched;
        const auto fp = mean_field_fixed_point(p);
        const double x = set.branches[*set.fixed_point_match].fields.magnon_number();
        if (x > 0.0) worst_agreement = std::max(worst_agreement, std::abs(fp->magnon_number() - x) / x);
      }
    } catch (const std::exception& e) {
      if (failure.empty()) failure = fmt::format(" first failure at E_m = {:.3e}: {}", p.E_m, e.what());
    }
  }
  return {failure.empty() && matched == 100 && bistable > 0 && worst_agreement < 1e-8 &&
              worst_residual < 1e-10,
          fmt::format("{}/100 drives matched, {} bistable, max rel |m|^2 diff {:.1e}, max residual "
                      "{:.1e}{}",
                      matched, bistable, worst_agreement, worst_residual, failure)};
}

Outcome c10_determinism() {
  const auto spec = criterion3_spec();
  const std::string one = table_text(run_sweep(spec, 1));
  const std::string four = table_text(run_sweep(spec, 4));
  const std::string eight = table_text(run_sweep(spec, 8));
  return {one == four && one == eight,
          fmt::format("{} bytes; 1 vs 4 workers {}, 1 vs 8 workers {}", one.size(),
                      one == four ? "identical" : "DIFFER", one == eight ? "identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Lyapunov solver equivalence", c1_lyapunov},
      {"log-negativity oracle equivalence", c2_log_negativity},
      {"magnon-phonon peak shifts with Kerr sign", c3_peak_shifts},
      {"nonreciprocal peak ordering", c4_ordering},
      {"optimal-detuning loci", c5_loci},
      {"bidirectional contrast ratio", c6_contrast},
      {"thermal survival ordering", c7_survival},
      {"physicality of every stable point", c8_physicality},
      {"steady-state dual-method agreement", c9_steady_state},
      {"sweep determinism across workers", c10_determinism},
  };

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += !o.pass;
    fmt::print("{} C{:<2} {}: {}\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
