#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ivol/phase.hpp"
#include "ivol/verify.hpp"

using namespace ivol;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log-domain quadrature on closed forms") {
  // int_0^1 x^2 dx = 1/3
  const double cubic = log_integrate([](double x) { return 2.0 * std::log(x); }, 0.0, 1.0);
  CHECK(cubic == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
  // int_0^inf e^{-pi s^2} ds = 1/2
  const double gauss = log_integrate_semi([](double s) { return -kPi * s * s; }, 0.0);
  CHECK(gauss == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  // int_0^inf s e^{-2 pi s} ds = 1/(4 pi^2)
  const double gamma2 = log_integrate_semi(
      [](double s) { return std::log(s) - 2.0 * kPi * s; }, 0.0);
  CHECK(gamma2 == doctest::Approx(-std::log(4.0 * kPi * kPi)).epsilon(1e-11));
}

TEST_CASE("ball Wills quadrature matches the exact sums") {
  CHECK(quad_ball_wills(1, 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  for (int n : {1, 2, 3, 8, 16, 32, 64}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double exact = wills(intrinsic_ball(n, lambda));
      CHECK(quad_ball_wills(n, lambda) == doctest::Approx(exact).epsilon(1e-8));
    }
  }
  // the point body has total volume one
  CHECK(quad_ball_wills(3, 0.0) ==
        doctest::Approx(wills(intrinsic_ball(3, 0.0))).epsilon(1e-8));
}

TEST_CASE("ball rigid-motion quadrature matches the exact sums") {
  CHECK(quad_ball_rm_total(1, 1.0) ==
        doctest::Approx(std::log(2.0 * (1.0 + kPi / 2.0))).epsilon(1e-9));
  double prev = kLogZero;
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double cur = quad_ball_rm_total(8, lambda);
    CHECK(cur > prev);  // monotone in the scale
    prev = cur;
  }
  for (int n : {1, 2, 3, 8, 16, 32, 64}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double exact = log_sum_exp(to_rigid_motion(intrinsic_ball(n, lambda)).log_values);
      CHECK(quad_ball_rm_total(n, lambda) == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("cube total quadrature matches the exact sums") {
  for (int n : {1, 2, 3, 8, 16, 32, 64}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const LogSequence cube = intrinsic_cube(n, lambda);
      const double rot = log_sum_exp(to_rotation(cube).log_values);
      const double rm = log_sum_exp(to_rigid_motion(cube).log_values);
      CHECK(quad_cube_totals(n, lambda, Kind::rotation) ==
            doctest::Approx(rot).epsilon(1e-9));
      CHECK(quad_cube_totals(n, lambda, Kind::rigid_motion) ==
            doctest::Approx(rm).epsilon(1e-9));
    }
  }
  // the two weightings coincide for the unit cube
  CHECK(quad_cube_totals(5, 1.0, Kind::rotation) ==
        doctest::Approx(quad_cube_totals(5, 1.0, Kind::rigid_motion)).epsilon(1e-9));
  CHECK_THROWS_AS(quad_cube_totals(3, 1.0, Kind::intrinsic), std::invalid_argument);
}

TEST_CASE("metric totals for balls via radial reduction") {
  for (int n : {1, 2, 3, 10, 25, 50}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const LogSequence ball = intrinsic_ball(n, lambda);
      const BodySpec body{Ball{n, lambda}};
      CHECK(metric_total(body, Kind::intrinsic) ==
            doctest::Approx(wills(ball)).epsilon(1e-8));
      CHECK(metric_total(body, Kind::rotation) ==
            doctest::Approx(log_sum_exp(to_rotation(ball).log_values)).epsilon(1e-8));
      CHECK(metric_total(body, Kind::rigid_motion) ==
            doctest::Approx(log_sum_exp(to_rigid_motion(ball).log_values)).epsilon(1e-8));
    }
  }
}

TEST_CASE("metric totals for small cubes via tensor quadrature") {
  // 1-D closed form: int e^{-pi dist^2} = side + 1
  CHECK(metric_total(BodySpec{Cube{1, 1.0}}, Kind::intrinsic) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  for (int n : {1, 2, 3}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const LogSequence cube = intrinsic_cube(n, lambda);
      const BodySpec body{Cube{n, lambda}};
      CHECK(metric_total(body, Kind::intrinsic) ==
            doctest::Approx(wills(cube)).epsilon(1e-6));
      CHECK(metric_total(body, Kind::rotation) ==
            doctest::Approx(log_sum_exp(to_rotation(cube).log_values)).epsilon(1e-6));
      CHECK(metric_total(body, Kind::rigid_motion) ==
            doctest::Approx(log_sum_exp(to_rigid_motion(cube).log_values)).epsilon(1e-6));
    }
  }
  // mixed-side box
  const std::vector<double> sides{0.5, 2.0};
  const LogSequence box = intrinsic_parallelotope(sides);
  CHECK(metric_total(BodySpec{Parallelotope{sides}}, Kind::intrinsic) ==
        doctest::Approx(wills(box)).epsilon(1e-6));
}

TEST_CASE("metric totals for larger boxes via the Steiner reduction") {
  const std::vector<double> sides{0.5, 1.0, 2.0, 4.0, 1.5};
  const LogSequence box = intrinsic_parallelotope(sides);
  const BodySpec body{Parallelotope{sides}};
  CHECK(metric_total(body, Kind::intrinsic) == doctest::Approx(wills(box)).epsilon(1e-7));
  CHECK(metric_total(body, Kind::rotation) ==
        doctest::Approx(log_sum_exp(to_rotation(box).log_values)).epsilon(1e-7));
  CHECK(metric_total(body, Kind::rigid_motion) ==
        doctest::Approx(log_sum_exp(to_rigid_motion(box).log_values)).epsilon(1e-7));
  CHECK_THROWS_AS(metric_total(BodySpec{Explicit{intrinsic_cube(2, 1.0)}}, Kind::intrinsic),
                  std::invalid_argument);
}

TEST_CASE("generalized Steiner residuals") {
  CHECK(generalized_steiner_check(2, 1.0, TestFunction::gauss_sq) <= 1e-8);
  CHECK(generalized_steiner_check(3, 1.0, TestFunction::exp_lin) <= 1e-8);
  CHECK(generalized_steiner_check(2, 0.5, TestFunction::cauchy_pow) <= 1e-8);
  CHECK(generalized_steiner_check(4, 2.0, TestFunction::gauss_sq) <= 1e-8);
  // point body: only the moment term survives
  CHECK(generalized_steiner_check(3, 0.0, TestFunction::gauss_sq) <= 1e-8);
}

TEST_CASE("distance-integral moment identities") {
  for (int n : {2, 3, 5}) {
    for (double theta : {-0.5, 0.0, 0.5}) {
      for (Kind kind : {Kind::intrinsic, Kind::rotation, Kind::rigid_motion}) {
        CHECK(moment_identity_check(n, 1.0, kind, theta, MomentWeight::one) <= 1e-7);
        CHECK(moment_identity_check(n, 1.0, kind, theta, MomentWeight::linear) <= 1e-7);
      }
    }
  }
  // theta = 0, h = 1, intrinsic specializes to the metric total check
  CHECK(moment_identity_check(3, 2.0, Kind::intrinsic, 0.0, MomentWeight::one) <= 1e-8);
}

TEST_CASE("Haar rotations are orthogonal with unit determinant") {
  std::mt19937_64 rng(42);
  CHECK(haar_rotation(1, rng)(0, 0) == doctest::Approx(1.0));
  for (int n : {2, 3, 6}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::MatrixXd q = haar_rotation(n, rng);
      const double ortho =
          (q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
      CHECK(ortho <= 1e-12);
      CHECK(q.determinant() == doctest::Approx(1.0).epsilon(1e-10));
      for (int c = 0; c < n; ++c) CHECK(q.col(c).norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("Haar trace statistics") {
  std::mt19937_64 rng(7);
  double sum = 0.0;
  const int samples = 10000;
  for (int k = 0; k < samples; ++k) sum += haar_rotation(3, rng).trace();
  CHECK(std::abs(sum / samples) <= 4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("Monte Carlo projection estimates are deterministic and unbiased") {
  const McConfig cfg{12345, 2000};
  const McEstimate a = mc_rand_proj(6, 3, 1.0, cfg);
  const McEstimate b = mc_rand_proj(6, 3, 1.0, cfg);
  CHECK(a.mean == b.mean);  // bit-identical under the same seed
  CHECK(a.std_error == b.std_error);

  const VolumeDistribution d = distribution(to_rotation(intrinsic_cube(6, 1.0)));
  const double exact = rand_proj(d, 3);
  CHECK(std::abs(a.mean - exact) <= 5.0 * a.std_error);

  // edge subspaces
  const McEstimate full = mc_rand_proj(6, 6, 1.0, McConfig{9, 200});
  CHECK(full.mean == doctest::Approx(1.0).epsilon(1e-9));
  const McEstimate none = mc_rand_proj(6, 0, 1.0, McConfig{9, 200});
  CHECK(none.mean == doctest::Approx(std::exp(-d.log_total)));
  CHECK(none.std_error == doctest::Approx(0.0));

  CHECK_THROWS_AS(mc_rand_proj(13, 3, 1.0, cfg), std::length_error);
  CHECK_THROWS_AS(mc_rand_proj(6, 7, 1.0, cfg), std::domain_error);
  CHECK_THROWS_AS(mc_rand_proj(6, 3, 1.0, McConfig{1, 50}), std::invalid_argument);
}

TEST_CASE("per-index projection formula within Monte Carlo error") {
  const McConfig cfg{777, 3000};
  for (int m : {1, 2, 3}) {
    const auto checks = mc_projection_formula(5, m, 1.0, cfg);
    REQUIRE(static_cast<int>(checks.size()) == m + 1);
    for (const auto& c : checks) {
      const double se = std::max(c.std_error, 1e-12);
      CHECK(std::abs(c.mean - c.exact) <= 5.0 * se);
    }
  }
}

TEST_CASE("repeated-seed bracketing of the exact projection value") {
  // 4-standard-error brackets should cover the exact value in at least
  // 95 of 100 seeded trials across the subspace dimensions.
  const VolumeDistribution d = distribution(to_rotation(intrinsic_cube(6, 1.0)));
  int covered = 0, trials = 0;
  for (int m = 1; m <= 5; ++m) {
    const double exact = rand_proj(d, m);
    for (int trial = 0; trial < 20; ++trial) {
      const McEstimate est = mc_rand_proj(6, m, 1.0, McConfig{1000 + 31u * trial + m, 1000});
      ++trials;
      if (std::abs(est.mean - exact) <= 4.0 * est.std_error) ++covered;
    }
  }
  CHECK(trials == 100);
  CHECK(covered >= 95);
}
