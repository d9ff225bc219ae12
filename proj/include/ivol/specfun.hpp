#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

// Log-domain special functions and geometric constants.  Every volume-like
// quantity in this library is carried as a natural logarithm; an exact zero
// is represented by -infinity.

namespace ivol {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; respects -inf operands.
inline double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log-sum-exp over a sequence of log-domain values.
double log_sum_exp(std::span<const double> logs);

// ln Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// ln of the binomial coefficient C(n, k); -inf outside 0 <= k <= n.
double log_binomial(int n, int k);

// ln kappa_i, the volume of the unit ball in R^i.  Zero-extended below
// the support: returns -inf for i < 0.  kappa_0 = 1.
double log_kappa(int i);

// ln omega_i, the surface area of the unit sphere in R^i (omega_i = i kappa_i).
// Returns -inf for i <= 0.
double log_omega(int i);

// ln of the product of per-pair structure coefficients i!kappa_i / (j!kappa_j).
// Lists must have equal length and nonnegative entries.
double log_structure_coeff(std::span<const int> i_list, std::span<const int> j_list);

// The Bennett tail function (1+u)log(1+u) - u, with psi(-1) = 1 by
// continuity and psi(u) = +inf for u < -1.
double psi_tail(double u);

// Exact crossing probability for a needle of length L on planks of width D.
double buffon_probability(double length, double width);

// Checks both implications of the two-sided Buffon bound at the boundary
// ratios for alpha in (0, 0.36].
bool buffon_bounds_check(double alpha);

}  // namespace ivol
