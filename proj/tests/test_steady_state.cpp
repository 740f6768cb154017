#include "catch_amalgamated.hpp"

#include <cmath>
#include <complex>

#include "kerrcomm/steady_state.hpp"
#include "support.hpp"

using namespace kerrcomm;
using Catch::Approx;
using cplx = std::complex<double>;

namespace {

// Microwave drive 40 MHz above both microwave modes, optical drive 40 MHz
// below the cavity.
SystemParams sideband_params() {
  SystemParams p;
  p.w_m = p.omega_a + p.omega_b;
  p.w_c = p.omega_c - p.omega_b;
  return p;
}

SystemParams bistable_params(double E_m) {
  SystemParams p = sideband_params();
  p.K0 = 1e-6;
  p.E_c = 2.3e13;
  p.E_m = E_m;
  return p;
}

}  // namespace

TEST_CASE("Kerr shift", "[steady_state]") {
  CHECK(kerr_shift(0.5, 3.0) == 3.0);
  CHECK(kerr_shift(-0.5, 3.0) == -3.0);
  CHECK_THROWS_AS(kerr_shift(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("linear limit matches the direct two-mode solution", "[steady_state]") {
  SystemParams p = sideband_params();
  p.g_m = 0.0;
  p.g_c = 0.0;
  p.E_m = 5e12;
  p.E_c = 1e12;
  const auto roots = mean_field_roots(p);
  REQUIRE(roots.size() == 1);

  const cplx za(p.kappa_a, p.omega_a - p.w_m);
  const cplx zm(p.kappa_m, p.omega_m - p.w_m);
  const cplx m = p.E_m / (zm + p.g_am * p.g_am / za);
  const cplx a = cplx(0, -1) * p.g_am * m / za;
  const cplx c = p.E_c / cplx(p.kappa_c, p.omega_c - p.w_c);
  CHECK(std::abs(roots[0].m - m) < 1e-12 * std::abs(m));
  CHECK(std::abs(roots[0].a - a) < 1e-12 * std::abs(a));
  CHECK(std::abs(roots[0].c - c) < 1e-12 * std::abs(c));
  CHECK(roots[0].q == 0.0);
}

TEST_CASE("lossless limit reproduces the large-detuning amplitude exactly", "[steady_state]") {
  SystemParams p = sideband_params();
  p.kappa_a = 0.0;
  p.kappa_m = 0.0;
  p.g_m = 0.0;
  p.g_c = 0.0;
  p.E_m = 3e12;
  const auto roots = mean_field_roots(p);
  REQUIRE(roots.size() == 1);
  const cplx approx = approximate_magnon_amplitude(p, roots[0]);
  CHECK(std::abs(approx - roots[0].m) < 1e-12 * std::abs(roots[0].m));
}

TEST_CASE("large-detuning amplitude is close with finite linewidths", "[steady_state]") {
  SystemParams p = sideband_params();
  p.E_m = 3e12;
  p.E_c = 2e13;
  const auto set = solve_mean_fields(p);
  const auto& f = set.selected_branch().fields;
  const cplx approx = approximate_magnon_amplitude(p, f);
  CHECK(std::abs(std::norm(approx) / f.magnon_number() - 1.0) < 0.01);
}

TEST_CASE("no drive, no mean fields", "[steady_state]") {
  const auto roots = mean_field_roots(sideband_params());
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].magnon_number() == 0.0);
  CHECK(std::abs(roots[0].c) == 0.0);
  CHECK(roots[0].q == 0.0);
}

TEST_CASE("flipping the Kerr sign and the detunings mirrors the magnon number", "[steady_state]") {
  SystemParams p = sideband_params();
  p.g_m = 0.0;
  p.g_c = 0.0;
  p.K0 = 1e-6;
  p.E_m = 2e13;
  SystemParams mirror = p;
  mirror.K0 = -p.K0;
  mirror.w_m = p.omega_a - p.omega_b;

  const auto a = mean_field_roots(p);
  const auto b = mean_field_roots(mirror);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].magnon_number() == Approx(b[k].magnon_number()).epsilon(1e-10));
  }
}

TEST_CASE("fixed point lands on a polynomial root", "[steady_state]") {
  for (double E_m : {1e12, 5e12, 2e13, 6e13, 1.2e14}) {
    const SystemParams p = bistable_params(E_m);
    const auto roots = mean_field_roots(p);
    const auto fp = mean_field_fixed_point(p);
    REQUIRE(fp.has_value());
    bool matched = false;
    for (const auto& r : roots) {
      matched |= std::abs(r.magnon_number() - fp->magnon_number()) <= 1e-8 * r.magnon_number();
      CHECK(mean_field_residual(p, r) < 1e-10);
    }
    CHECK(matched);
    CHECK_NOTHROW(solve_mean_fields(p, {.cross_check = true}));
  }
}

TEST_CASE("Kerr bistability gives coexisting stable branches", "[steady_state]") {
  const auto set = solve_mean_fields(bistable_params(3e13));
  int stable = 0;
  for (const auto& b : set.branches) stable += b.stable;
  CHECK(stable >= 2);
  CHECK(std::is_sorted(set.branches.begin(), set.branches.end(), [](const auto& l, const auto& r) {
    return l.fields.magnon_number() < r.fields.magnon_number();
  }));
  // switching on from zero drive follows the lower branch
  CHECK(set.selected == 0);
  CHECK(set.selected_branch().stable);
}

TEST_CASE("drive that yields a 2 MHz magnomechanical coupling", "[steady_state]") {
  SystemParams p = sideband_params();
  const double target_G = 2e6;  // Hz
  const double m_abs = target_G / (std::sqrt(2.0) * p.g_m);
  const double x = m_abs * m_abs;

  // invert the magnon relation by hand: q from the radiation-pressure
  // balance, then |E_m| from |m| times the magnon response
  const double wb = p.omega_b;
  const double q = -(p.g_m / wb) * x;
  const cplx za(p.kappa_a / wb, (p.omega_a - p.w_m) / wb);
  const cplx chi = std::pow(p.g_am / wb, 2) / za;
  const cplx zm = cplx(p.kappa_m / wb, (p.omega_m - p.w_m) / wb + (p.g_m / wb) * q) + chi;
  p.E_m = wb * m_abs * std::abs(zm);

  const auto set = solve_mean_fields(p, {.cross_check = true});
  const auto op = operating_point_from_fields(p, set.selected_branch().fields);
  CHECK(op.G_m / constants::two_pi == Approx(target_G).epsilon(1e-9));
  CHECK(set.fixed_point_match.has_value());
}

TEST_CASE("operating point from fields", "[steady_state]") {
  SystemParams p = sideband_params();
  p.K0 = 2e-6;
  MeanFields f;
  f.m = {3e5, 4e5};
  f.c = {0.0, 1e6};
  f.q = 10.0;
  const auto op = operating_point_from_fields(p, f);
  CHECK(op.delta_k == Approx(to_angular(2.0 * p.K0 * 25e10)));
  CHECK(op.G_m == Approx(std::sqrt(2.0) * to_angular(p.g_m) * 5e5));
  CHECK(op.G_c == Approx(std::sqrt(2.0) * to_angular(p.g_c) * 1e6));
  CHECK(op.delta_m_eff == Approx(to_angular(-p.omega_b + p.g_m * 10.0)));
  CHECK(op.delta_c_eff == Approx(to_angular(p.omega_b - p.g_c * 10.0)));
}

TEST_CASE("resonant microwave drive is rejected", "[steady_state]") {
  SystemParams p;
  p.E_m = 1e12;
  CHECK_THROWS_AS(mean_field_roots(p), std::invalid_argument);
}

TEST_CASE("effective inputs convert to angular units once", "[steady_state]") {
  const auto op = operating_point_direct(testing::reference_inputs());
  CHECK(op.omega_b == Approx(to_angular(40e6)));
  CHECK(op.delta_a == Approx(-op.omega_b));
  CHECK(op.G_c == Approx(to_angular(8e6)));
  CHECK(op.n_b == Approx(4.7251).epsilon(1e-4));
}
