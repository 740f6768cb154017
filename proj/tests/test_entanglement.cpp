#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "kerrcomm/entanglement.hpp"
#include "kerrcomm/lyapunov.hpp"
#include "support.hpp"

using namespace kerrcomm;
using Catch::Approx;

namespace {

ReducedCovariance two_mode_squeezed(double r) {
  const double c = std::cosh(2.0 * r) / 2.0;
  const double s = std::sinh(2.0 * r) / 2.0;
  ReducedCovariance out;
  out.values << c, 0, s, 0,
                0, c, 0, -s,
                s, 0, c, 0,
                0, -s, 0, c;
  return out;
}

Eigen::Matrix2d local_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> squeeze(-0.8, 0.8);
  const double t1 = angle(rng), t2 = angle(rng), z = squeeze(rng);
  Eigen::Matrix2d R1, R2, S;
  R1 << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
  R2 << std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2);
  S << std::exp(z), 0, 0, std::exp(-z);
  return R1 * S * R2;
}

}  // namespace

TEST_CASE("two-mode squeezed vacuum", "[entanglement]") {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const auto tmsv = two_mode_squeezed(r);
    CHECK(log_negativity(tmsv) == Approx(2.0 * r).epsilon(1e-10));
    CHECK(min_pt_symplectic_eigenvalue(tmsv) == Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-10));
  }
}

TEST_CASE("separable states have zero log negativity", "[entanglement]") {
  ReducedCovariance vacuum;
  vacuum.values = 0.5 * Eigen::Matrix4d::Identity();
  CHECK(log_negativity(vacuum) == 0.0);

  ReducedCovariance thermal;
  thermal.values.setZero();
  thermal.values.diagonal() << 3.5, 3.5, 0.7, 0.7;
  CHECK(log_negativity(thermal) == 0.0);

  // any uncorrelated pair, however squeezed locally
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix2d S = local_symplectic(rng);
    ReducedCovariance r;
    r.values.setZero();
    r.values.topLeftCorner<2, 2>() = 0.5 * S * S.transpose();
    r.values.bottomRightCorner<2, 2>() = 1.3 * Eigen::Matrix2d::Identity();
    CHECK(log_negativity(r) == 0.0);
  }
}

TEST_CASE("local symplectic operations leave entanglement unchanged", "[entanglement]") {
  std::mt19937_64 rng(99);
  for (double r : {0.2, 0.7}) {
    const auto tmsv = two_mode_squeezed(r);
    for (int k = 0; k < 10; ++k) {
      Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
      S.topLeftCorner<2, 2>() = local_symplectic(rng);
      S.bottomRightCorner<2, 2>() = local_symplectic(rng);
      ReducedCovariance moved;
      moved.values = S * tmsv.values * S.transpose();
      CHECK(log_negativity(moved) == Approx(2.0 * r).epsilon(1e-9));
    }
  }
}

TEST_CASE("closed form matches the partial-transpose spectrum", "[entanglement]") {
  for (const auto& in : testing::random_stable_points(100, 21)) {
    const auto dd = build_normalized(operating_point_direct(in));
    const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion).values;
    for (const auto& pair : all_mode_pairs()) {
      const auto r = reduced_covariance(V, pair);
      const double closed = min_pt_symplectic_eigenvalue(r);
      const auto [upper, lower] = symplectic_eigenvalues_pt(r);
      CHECK(std::abs(closed - lower) <= 1e-10 * lower);
      CHECK(upper >= lower);
      CHECK(log_negativity(r) >= 0.0);
    }
  }
}

TEST_CASE("reduced covariance picks the right blocks", "[entanglement]") {
  Matrix8 V;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) V(i, j) = 10 * i + j;
  const auto r = reduced_covariance(V, ModePair(Mode::magnon, Mode::optical_photon));
  CHECK(r.values(0, 0) == V(2, 2));
  CHECK(r.values(1, 3) == V(3, 7));
  CHECK(r.values(3, 1) == V(7, 3));
  CHECK(r.values(2, 2) == V(6, 6));
  CHECK(r.block_c()(0, 1) == V(2, 7));
}

TEST_CASE("mode pair labels", "[entanglement]") {
  CHECK(ModePair::parse("mb") == ModePair(Mode::magnon, Mode::phonon));
  CHECK(ModePair::parse("ac").label() == "ac");
  CHECK_THROWS_AS(ModePair::parse("aa"), std::invalid_argument);
  CHECK_THROWS_AS(ModePair::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(ModePair::parse("ax"), std::invalid_argument);
  CHECK_THROWS_AS(ModePair(Mode::phonon, Mode::phonon), std::invalid_argument);
  CHECK(all_mode_pairs().size() == 6);
}

TEST_CASE("bidirectional contrast ratio", "[entanglement]") {
  CHECK(*contrast_ratio(0.3, 0.1) == Approx(0.5));
  CHECK(*contrast_ratio(0.1, 0.3) == Approx(0.5));
  CHECK(*contrast_ratio(0.2, 0.0) == 1.0);
  CHECK(*contrast_ratio(0.2, 0.2) == 0.0);
  CHECK_FALSE(contrast_ratio(0.0, 0.0).has_value());
  CHECK_THROWS_AS(contrast_ratio(-0.1, 0.2), std::invalid_argument);
}

TEST_CASE("reference point entangles magnons with phonons", "[entanglement]") {
  const auto dd = build_normalized(operating_point_direct(testing::reference_inputs()));
  const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion).values;
  CHECK(log_negativity(reduced_covariance(V, ModePair::parse("mb"))) > 0.1);
}

TEST_CASE("no coupling, no entanglement", "[entanglement]") {
  auto in = testing::reference_inputs();
  in.g_am = 0.0;
  in.G_m = 0.0;
  in.G_c = 0.0;
  const auto dd = build_normalized(operating_point_direct(in));
  const Matrix8 V = solve_lyapunov(dd.drift, dd.diffusion).values;
  for (const auto& pair : all_mode_pairs()) {
    CHECK(log_negativity(reduced_covariance(V, pair)) == 0.0);
  }
}
