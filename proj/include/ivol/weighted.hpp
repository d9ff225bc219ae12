#pragma once

#include "ivol/bodies.hpp"

// Rotation and rigid-motion reweightings of intrinsic volume sequences,
// the associated discrete random variables, and their exact moments.

namespace ivol {

// Rotation volumes: entry i = (omega_{n+1}/omega_{i+1}) V_{n-i}(K).
LogSequence to_rotation(const LogSequence& seq);

// Rigid motion volumes: entry i = (omega_{n+1}/omega_{i+1}) V_i(K).
LogSequence to_rigid_motion(const LogSequence& seq);

// Characteristic polynomial log sum_i t^{n-i} value_i, for t > 0.
double char_poly(const LogSequence& seq, double t);

// Normalized pmf of the (weighted) intrinsic volume random variable.
// The value axis is already reversed: pmf index k corresponds to the
// sequence entry n - k.
struct VolumeDistribution {
  int n = 0;
  Kind kind = Kind::intrinsic;
  std::vector<double> log_pmf;  // indexed by value k in {0,...,n}
  double log_total = kLogZero;  // log of the normalizing total volume

  double log_prob(int k) const { return (k >= 0 && k <= n) ? log_pmf[k] : kLogZero; }
};

VolumeDistribution distribution(const LogSequence& seq);

// Expectation of the volume random variable (the central volume).
double central_volume(const VolumeDistribution& d);

// Exact variance of the volume random variable.
double exact_variance(const VolumeDistribution& d);

// Exact cumulant generating function log E exp(theta I).
double exact_cgf(const VolumeDistribution& d, double theta);

// Exact law of the sum of two independent volume random variables.
VolumeDistribution pmf_convolve(const VolumeDistribution& a, const VolumeDistribution& b);

// Discrete log-concavity check: value_i^2 >= value_{i-1} value_{i+1} up to a
// 1e-10 log-domain slack.
bool is_log_concave(const LogSequence& seq);

}  // namespace ivol
