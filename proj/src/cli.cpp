#include "kerrcomm/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "kerrcomm/config.hpp"
#include "kerrcomm/dynamics.hpp"
#include "kerrcomm/entanglement.hpp"
#include "kerrcomm/lyapunov.hpp"
#include "kerrcomm/steady_state.hpp"
#include "kerrcomm/sweep.hpp"

#ifndef KERRCOMM_VERSION
#define KERRCOMM_VERSION "0.0.0"
#endif

namespace kerrcomm::cli {

namespace {

std::string sci(double v) { return fmt::format("{:.12e}", v); }

std::string complex_text(std::complex<double> z) {
  return fmt::format("({:.12e}, {:.12e})", z.real(), z.imag());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << content;
}

void print_operating_point(std::ostream& out, const OperatingPoint& op) {
  const double wb = op.omega_b;
  const double to_hz = 1.0 / constants::two_pi;
  out << "[operating point]\n";
  out << fmt::format("  delta_a/omega_b     = {}\n", sci(op.delta_a / wb));
  out << fmt::format("  delta_m_eff/omega_b = {}\n", sci(op.delta_m_eff / wb));
  out << fmt::format("  delta_c_eff/omega_b = {}\n", sci(op.delta_c_eff / wb));
  out << fmt::format("  delta_k/omega_b     = {}\n", sci(op.delta_k / wb));
  out << fmt::format("  G_m/2pi (Hz)        = {}\n", sci(op.G_m * to_hz));
  out << fmt::format("  G_c/2pi (Hz)        = {}\n", sci(op.G_c * to_hz));
  out << fmt::format("  g_am/2pi (Hz)       = {}\n", sci(op.g_am * to_hz));
  out << fmt::format("  omega_b/2pi (Hz)    = {}\n", sci(wb * to_hz));
  out << fmt::format("  n_a, n_m, n_b, n_c  = {}, {}, {}, {}\n", sci(op.n_a), sci(op.n_m),
                     sci(op.n_b), sci(op.n_c));
}

void print_branches(std::ostream& out, const SystemParams& params, const BranchSet& set) {
  out << fmt::format("[mean fields] {} branch(es), selected #{}\n", set.branches.size(),
                     set.selected);
  for (std::size_t k = 0; k < set.branches.size(); ++k) {
    const Branch& b = set.branches[k];
    const auto approx = approximate_magnon_amplitude(params, b.fields);
    const double x = b.fields.magnon_number();
    const double deviation = x > 0.0 ? std::abs(std::norm(approx) - x) / x : 0.0;
    out << fmt::format("  branch #{}{}: stable={} residual={}\n", k,
                       k == set.selected ? " (selected)" : "", b.stable ? "yes" : "no",
                       sci(b.residual));
    out << fmt::format("    |m|^2 = {}\n", sci(x));
    out << fmt::format("    <a> = {}\n", complex_text(b.fields.a));
    out << fmt::format("    <m> = {}\n", complex_text(b.fields.m));
    out << fmt::format("    <c> = {}\n", complex_text(b.fields.c));
    out << fmt::format("    <q> = {}  <p> = {}\n", sci(b.fields.q), sci(b.fields.p));
    out << fmt::format("    large-detuning |m|^2 relative deviation = {}\n", sci(deviation));
  }
  if (set.fixed_point_match) {
    out << fmt::format("  fixed-point cross-check: matches branch #{}\n", *set.fixed_point_match);
  }
}

int point_impl(const RunConfig& cfg, const Options& options, std::ostream& out) {
  OperatingPoint op;
  if (cfg.mode == RunMode::physical) {
    SteadyStateOptions ss;
    ss.cross_check = options.oracle;
    ss.homotopy_steps = cfg.solver.homotopy_steps;
    const BranchSet set = solve_mean_fields(cfg.physical, ss);
    print_branches(out, cfg.physical, set);
    op = operating_point_from_fields(cfg.physical, set.selected_branch().fields);
  } else {
    op = operating_point_direct(cfg.effective);
  }
  print_operating_point(out, op);

  const DriftDiffusion dd = build_normalized(op);
  const Stability st = is_stable(dd.drift, cfg.solver.stability_epsilon);
  out << "[stability]\n";
  out << fmt::format("  stable = {}\n", st.stable ? "yes" : "no");
  out << fmt::format("  margin/omega_b = {}\n", sci(st.margin));
  if (!st.stable) {
    out << "  no stationary state: entanglement not evaluated\n";
    return kUnstable;
  }

  const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion, cfg.solver.lyapunov).values;
  out << "[covariance]\n";
  out << fmt::format("  lyapunov residual (relative) = {}\n",
                     sci(relative_residual(dd.drift, V, dd.diffusion)));
  const auto nu = symplectic_eigenvalues(V);
  out << fmt::format("  symplectic eigenvalues = {}, {}, {}, {}\n", sci(nu[0]), sci(nu[1]),
                     sci(nu[2]), sci(nu[3]));
  if (options.oracle) {
    const auto other = cfg.solver.lyapunov == LyapunovMethod::schur ? LyapunovMethod::kronecker
                                                                    : LyapunovMethod::schur;
    const double diff =
        (V - solve_lyapunov(dd.drift, dd.diffusion, other).values).cwiseAbs().maxCoeff();
    out << fmt::format("  oracle |dV|max = {}\n", sci(diff));
    if (!(diff < 1e-8)) throw NumericalError("Lyapunov solvers disagree");
  }

  out << "[log negativity]\n";
  for (const ModePair& pair : cfg.point_pairs) {
    const auto reduced = reduced_covariance(V, pair);
    const double en = log_negativity(reduced);
    out << fmt::format("  E_N[{}] = {}\n", pair.label(), sci(en));
    if (options.oracle) {
      const double closed = min_pt_symplectic_eigenvalue(reduced);
      const double spectral = symplectic_eigenvalues_pt(reduced).second;
      if (!(std::abs(closed - spectral) <= 1e-10 * spectral)) {
        throw NumericalError(fmt::format("PT spectrum disagrees for {}", pair.label()));
      }
    }
  }
  return kSuccess;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const InstabilityError& e) {
    fmt::print(err, "unstable: {}\n", e.what());
    return kUnstable;
  } catch (const std::exception& e) {
    fmt::print(err, "numerical failure: {}\n", e.what());
    return kNumericalFailure;
  }
}

}  // namespace

const char* version() { return KERRCOMM_VERSION; }

int validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  const ConfigReport report = check_config_file(config);
  for (const auto& w : report.warnings) fmt::print(err, "warning: {}\n", w);
  if (report.errors.empty()) {
    out << "ok\n";
    return kSuccess;
  }
  for (const auto& e : report.errors) fmt::print(out, "{}\n", e);
  return kConfigError;
}

int point(const std::filesystem::path& config, const Options& options, std::ostream& out,
          std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config);
    std::ostringstream report;
    report << fmt::format("# kerrcomm {} point report ({} mode)\n", version(),
                          cfg.mode == RunMode::effective ? "effective" : "physical");
    int code = kNumericalFailure;
    try {
      code = point_impl(cfg, options, report);
    } catch (...) {
      out << report.str();
      throw;
    }
    out << report.str();
    if (!options.out.empty()) {
      std::filesystem::create_directories(options.out);
      write_file(options.out / "point.txt", report.str());
    }
    return code;
  });
}

int sweep(const std::filesystem::path& config, const Options& options, std::ostream& out,
          std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config);
    if (!cfg.sweep) throw ConfigError("sweep: block required for the sweep command");
    SweepSpec spec = make_sweep_spec(cfg);
    spec.cross_check = options.oracle;

    const SweepResult result = run_sweep(spec, options.threads);

    const std::filesystem::path dir = options.out.empty() ? "." : options.out;
    std::filesystem::create_directories(dir);
    export_table(result, dir / "sweep.csv");
    write_file(dir / "manifest.yaml",
               emit_config(cfg, {{"code_version", version()}, {"command", "sweep"}}));

    std::size_t ok = 0, unstable = 0, failed = 0;
    for (const auto& p : result.points) {
      if (p.status == PointStatus::ok) ++ok;
      if (p.status == PointStatus::unstable) ++unstable;
      if (p.status == PointStatus::failed) ++failed;
    }
    out << fmt::format("points: {} ok, {} unstable, {} failed\n", ok, unstable, failed);
    out << fmt::format("wrote {}\n", (dir / "sweep.csv").string());

    if (cfg.sweep->locus_pair) {
      const LocusFit fit = locus_from_result(result, *cfg.sweep->locus_pair);
      std::ostringstream csv;
      csv << "delta_k,delta_m_eff_optimum\n";
      for (std::size_t k = 0; k < fit.delta_k.size(); ++k) {
        csv << fmt::format("{:.16e},{:.16e}\n", fit.delta_k[k], fit.optimum[k]);
      }
      write_file(dir / "locus.csv", csv.str());
      const auto [c2, c1, c0] = fit.coefficients;
      out << fmt::format(
          "locus[{}]: delta_m_eff/omega_b = {:.6f} (delta_k/omega_b)^2 + {:.6f} (delta_k/omega_b) "
          "+ {:.6f}; {} gap row(s)\n",
          cfg.sweep->locus_pair->label(), c2, c1, c0, fit.gaps.size());
    }
    return failed == 0 ? kSuccess : kNumericalFailure;
  });
}

}  // namespace kerrcomm::cli
