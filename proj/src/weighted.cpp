#include "ivol/weighted.hpp"

#include <cmath>
#include <stdexcept>

namespace ivol {

LogSequence to_rotation(const LogSequence& seq) {
  if (seq.kind != Kind::intrinsic)
    throw std::invalid_argument("to_rotation: expects an intrinsic sequence");
  const int n = seq.n;
  LogSequence out{n, Kind::rotation, std::vector<double>(n + 1)};
  const double lw = log_omega(n + 1);
  for (int i = 0; i <= n; ++i) {
    out.log_values[i] = lw - log_omega(i + 1) + seq.log_values[n - i];
  }
  return out;
}

LogSequence to_rigid_motion(const LogSequence& seq) {
  if (seq.kind != Kind::intrinsic)
    throw std::invalid_argument("to_rigid_motion: expects an intrinsic sequence");
  const int n = seq.n;
  LogSequence out{n, Kind::rigid_motion, std::vector<double>(n + 1)};
  const double lw = log_omega(n + 1);
  for (int i = 0; i <= n; ++i) {
    out.log_values[i] = lw - log_omega(i + 1) + seq.log_values[i];
  }
  return out;
}

double char_poly(const LogSequence& seq, double t) {
  if (!(t > 0.0)) throw std::domain_error("char_poly: t must be positive");
  const double log_t = std::log(t);
  std::vector<double> terms(seq.n + 1);
  for (int i = 0; i <= seq.n; ++i) {
    terms[i] = (seq.n - i) * log_t + seq.log_values[i];
  }
  return log_sum_exp(terms);
}

VolumeDistribution distribution(const LogSequence& seq) {
  const double total = log_sum_exp(seq.log_values);
  if (total == kLogZero)
    throw std::domain_error("distribution: sequence has no finite entry (empty body)");
  VolumeDistribution d{seq.n, seq.kind, std::vector<double>(seq.n + 1), total};
  // The value axis reverses the sequence index: P[I = n - i] = value_i / total.
  for (int k = 0; k <= seq.n; ++k) {
    d.log_pmf[k] = seq.log_values[seq.n - k] - total;
  }
  return d;
}

double central_volume(const VolumeDistribution& d) {
  double mean = 0.0;
  for (int k = 1; k <= d.n; ++k) {
    if (d.log_pmf[k] != kLogZero) mean += k * std::exp(d.log_pmf[k]);
  }
  return mean;
}

double exact_variance(const VolumeDistribution& d) {
  double mean = 0.0;
  double second = 0.0;
  for (int k = 1; k <= d.n; ++k) {
    if (d.log_pmf[k] == kLogZero) continue;
    const double p = std::exp(d.log_pmf[k]);
    mean += k * p;
    second += static_cast<double>(k) * k * p;
  }
  return std::max(0.0, second - mean * mean);
}

double exact_cgf(const VolumeDistribution& d, double theta) {
  std::vector<double> terms(d.n + 1);
  for (int k = 0; k <= d.n; ++k) {
    terms[k] = d.log_pmf[k] + theta * k;
  }
  return log_sum_exp(terms);
}

VolumeDistribution pmf_convolve(const VolumeDistribution& a, const VolumeDistribution& b) {
  if (a.kind != b.kind)
    throw std::invalid_argument("pmf_convolve: kind mismatch");
  VolumeDistribution out{a.n + b.n, a.kind,
                         std::vector<double>(a.n + b.n + 1, kLogZero),
                         a.log_total + b.log_total};
  std::vector<double> terms;
  for (int k = 0; k <= out.n; ++k) {
    terms.clear();
    for (int i = std::max(0, k - b.n); i <= std::min(k, a.n); ++i) {
      terms.push_back(a.log_pmf[i] + b.log_pmf[k - i]);
    }
    out.log_pmf[k] = log_sum_exp(terms);
  }
  return out;
}

bool is_log_concave(const LogSequence& seq) {
  constexpr double slack = 1e-10;
  for (int i = 1; i < seq.n; ++i) {
    const double left = seq.log_values[i - 1];
    const double right = seq.log_values[i + 1];
    if (left == kLogZero || right == kLogZero) continue;  // vacuous
    if (2.0 * seq.log_values[i] < left + right - slack) return false;
  }
  return true;
}

}  // namespace ivol
