#include "ivol/specfun.hpp"

#include <algorithm>
#include <numbers>

namespace ivol {

double log_sum_exp(std::span<const double> logs) {
  double m = kLogZero;
  for (double v : logs) m = std::max(m, v);
  if (m == kLogZero) return kLogZero;
  double acc = 0.0;
  for (double v : logs) {
    if (v != kLogZero) acc += std::exp(v - m);
  }
  return m + std::log(acc);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return kLogZero;
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double log_kappa(int i) {
  if (i < 0) return kLogZero;
  constexpr double log_pi = 1.1447298858494001741;  // ln(pi)
  return 0.5 * i * log_pi - log_gamma(1.0 + 0.5 * i);
}

double log_omega(int i) {
  if (i <= 0) return kLogZero;
  return std::log(static_cast<double>(i)) + log_kappa(i);
}

double log_structure_coeff(std::span<const int> i_list, std::span<const int> j_list) {
  if (i_list.size() != j_list.size())
    throw std::invalid_argument("log_structure_coeff: index lists differ in length");
  double acc = 0.0;
  for (std::size_t s = 0; s < i_list.size(); ++s) {
    const int i = i_list[s];
    const int j = j_list[s];
    if (i < 0 || j < 0) throw std::domain_error("log_structure_coeff: negative index");
    acc += (log_gamma(i + 1.0) + log_kappa(i)) - (log_gamma(j + 1.0) + log_kappa(j));
  }
  return acc;
}

double psi_tail(double u) {
  if (u < -1.0) return kPosInf;
  if (u == -1.0) return 1.0;
  return (1.0 + u) * std::log1p(u) - u;
}

double buffon_probability(double length, double width) {
  if (!(length > 0.0) || !(width > 0.0))
    throw std::domain_error("buffon_probability: lengths must be positive");
  const double ratio = length / width;
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  if (ratio <= 1.0) return two_over_pi * ratio;
  const double inv = width / length;
  return two_over_pi * (std::acos(inv) + ratio * (1.0 - std::sqrt(1.0 - inv * inv)));
}

bool buffon_bounds_check(double alpha) {
  if (!(alpha > 0.0) || alpha > 0.36)
    throw std::domain_error("buffon_bounds_check: alpha must lie in (0, 0.36]");
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  // Short-needle boundary: L/D = (2/pi) alpha must give p <= alpha.
  const double p_low = buffon_probability(two_over_pi * alpha, 1.0);
  // Long-needle boundary: L/D = (1 - 2/pi) / alpha must give p >= 1 - alpha.
  const double p_high = buffon_probability((1.0 - two_over_pi) / alpha, 1.0);
  return p_low <= alpha && p_high >= 1.0 - alpha;
}

}  // namespace ivol
