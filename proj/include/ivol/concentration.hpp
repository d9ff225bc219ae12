#pragma once

#include "ivol/weighted.hpp"

// Closed-form variance, cgf, and tail bounds for the (weighted) intrinsic
// volume random variables, as functions of the dimension and central volume.

namespace ivol {

// Parameters of the kind-specific concentration bounds.
struct TailBound {
  Kind kind = Kind::rotation;
  int n = 0;
  double delta = 0.0;  // central volume, in [0, n]

  static TailBound from(const VolumeDistribution& d) {
    return TailBound{d.kind, d.n, central_volume(d)};
  }

  // Complementary central volume: (n+1) - delta for rigid motions,
  // n - delta for intrinsic volumes.
  double delta_comp() const;

  // Variance proxy: delta for rotations, 2 delta delta_comp / (n+1) for
  // rigid motions, 2 delta delta_comp / n for intrinsic volumes.
  double variance_bound() const;
};

// Upper bound on the centered cgf xi_{I - delta}(theta).
double cgf_bound(const TailBound& b, double theta);

enum class TailSide { upper, lower };

// Log of the Poisson-type tail bound on P[I - delta >= t] (upper) or
// P[I - delta <= -t] (lower), for t >= 0.
double poisson_tail(const TailBound& b, double t, TailSide side);

// Log of the two-sided Bernstein bound on P[(I - delta)/t >= 1], t != 0.
double bernstein_tail(const TailBound& b, double t);

// Log Bernstein bound for the sum of two independent volume variables.
double sum_tail(const TailBound& k, const TailBound& m, double t);

enum class PhaseTheorem { rand_proj, rot_mean, rand_slice, kinematic };

// Transition width t*(alpha) of the named phase transition theorem.
// For the single-body theorems pass the body's central volume (or the
// variance proxy for random slices); for the two-body theorems pass the sum
// of central volumes.
double transition_width(const TailBound& b, double alpha, PhaseTheorem theorem);
double transition_width_pair(const TailBound& k, const TailBound& m, double alpha,
                             PhaseTheorem theorem);

}  // namespace ivol
