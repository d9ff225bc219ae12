#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>

#include "ivol/weighted.hpp"

// Independent verification oracles: adaptive quadrature of the integral
// representations of the total (weighted) volumes, distance-integral moment
// identities, and Monte Carlo over the rotation group.

namespace ivol {

struct QuadratureConfig {
  int nodes = 64;              // Gauss-Legendre nodes per panel
  double eps_trunc = 1e-18;    // neglected-tail weight for truncation
  double max_rel_error = 1e-10;  // panel-doubling stop criterion (log scale)
  int max_panels = 4096;
};

// log of the integral of exp(log_f) over [a, b], by Gauss-Legendre panels
// with doubling until successive log values agree to max_rel_error.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const QuadratureConfig& cfg = {});

// Same over [a, infinity); the truncation point is grown until the
// log-integrand has dropped eps_trunc below its observed maximum.
double log_integrate_semi(const std::function<double(double)>& log_f, double a,
                          const QuadratureConfig& cfg = {});

// log W(lambda B^n) via kappa_n lambda^n + omega_n int (lambda+s)^{n-1} e^{-pi s^2} ds.
double quad_ball_wills(int n, double lambda, const QuadratureConfig& cfg = {});

// log of the total rigid-motion volume of lambda B^n via the [0, pi/2] integral.
double quad_ball_rm_total(int n, double lambda, const QuadratureConfig& cfg = {});

// log of the total rotation / rigid-motion volume of lambda Q^n via the
// Gaussian-weighted integrals; kind must be rotation or rigid_motion.
double quad_cube_totals(int n, double lambda, Kind kind, const QuadratureConfig& cfg = {});

// The metric formulation of the total volume: an n-dimensional integral of a
// kind-specific kernel of the distance function.  Balls reduce to a radial
// 1-D quadrature; boxes use direct tensor quadrature for n <= 3 and the
// generalized Steiner reduction for larger n.
double metric_total(const BodySpec& body, Kind kind, const QuadratureConfig& cfg = {});

// Built-in radial test functions for the generalized Steiner formula:
// e^{-pi r^2}, e^{-2 pi r}, (1+r^2)^{-(n+1)/2}.
enum class TestFunction { gauss_sq, exp_lin, cauchy_pow };

// Relative residual between the two sides of the generalized Steiner formula
// for the ball lambda B^n, both sides by independent quadrature.
double generalized_steiner_check(int n, double lambda, TestFunction f,
                                 const QuadratureConfig& cfg = {});

// Moment weight h in the distance-integral identities: h == 1 or h(s) = s.
enum class MomentWeight { one, linear };

// Relative residual of the kind-appropriate distance-integral identity for
// the ball lambda B^n at tilt theta: gamma (rotation), beta (rigid motion),
// or chi-squared (intrinsic) moments against the weighted volume sums.
double moment_identity_check(int n, double lambda, Kind kind, double theta,
                             MomentWeight h = MomentWeight::one,
                             const QuadratureConfig& cfg = {});

// A Haar-distributed rotation (orthogonal, determinant +1) via Gaussian
// orthogonalization with sign correction.
Eigen::MatrixXd haar_rotation(int n, std::mt19937_64& rng);

struct McConfig {
  std::uint64_t seed = 0;
  int samples = 1000;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Monte Carlo estimate of the random projection functional for lambda Q^n:
// average of the projected zonotope's total rotation volume ratio over Haar
// subspace frames.  Requires n <= 12 (zonotope subset enumeration).
McEstimate mc_rand_proj(int n, int m, double lambda, const McConfig& cfg);

struct McIndexEstimate {
  int i = 0;         // rotation-volume index in the projected ambient m
  double mean = 0.0;
  double std_error = 0.0;
  double exact = 0.0;  // the ambient-n rotation volume it should match
};

// Per-index projection-formula check: the Monte Carlo mean of each projected
// rotation volume against the ambient rotation volume of matching index.
std::vector<McIndexEstimate> mc_projection_formula(int n, int m, double lambda,
                                                   const McConfig& cfg);

}  // namespace ivol
