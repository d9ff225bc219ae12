#pragma once

#include <span>

#include "ivol/concentration.hpp"

// The four integral-geometry functionals evaluated exactly through their
// probabilistic reformulations, plus phase-transition classification.

namespace ivol {

enum class Functional { rand_proj, rand_slice, rot_mean, kinematic };
enum class PhaseClass { low, transition, high };

// Exact cdf P[I <= m] of a rotation-volume variable: the random projection
// functional RandProj_m.
double rand_proj(const VolumeDistribution& dist, int m);

// Exact cdf P[I <= m] of a rigid-motion variable: the random slice
// functional RandSlice_m.
double rand_slice(const VolumeDistribution& dist, int m);

// Exact P[I_K + I_M >= n] for two rotation-volume variables in the same
// ambient dimension: the rotation mean functional.
double rot_mean(const VolumeDistribution& dK, const VolumeDistribution& dM);

// Exact P[I_K + I_M >= n] for two rigid-motion variables: the kinematic
// functional.
double kinematic(const VolumeDistribution& dK, const VolumeDistribution& dM);

struct PhasePoint {
  double param1 = 0.0;  // first grid parameter (scale, or m for cdf sweeps)
  double param2 = 0.0;  // second scale for two-body functionals
  int m = -1;           // threshold parameter; -1 for two-body functionals
  double value = 0.0;   // exact functional value
  double width = 0.0;   // transition width t*(alpha) at this point
  PhaseClass cls = PhaseClass::transition;
};

struct PhaseReport {
  Functional functional = Functional::rand_proj;
  int n = 0;
  double location = 0.0;  // delta for cdf sweeps, n for two-body functionals
  double alpha = 0.0;
  std::vector<PhasePoint> points;
};

// Sweep of a single-body cdf functional over thresholds m.  Each point is
// classified by its position relative to the central volume: m <= delta - t*
// is "low", m >= delta + t* is "high", anything in the closed band between
// is "transition".
PhaseReport classify(Functional f, const VolumeDistribution& dist, double alpha,
                     std::span<const int> ms);

// Convenience overload sweeping m = 0..n.
PhaseReport classify(Functional f, const VolumeDistribution& dist, double alpha);

// One grid point of a two-body functional, classified by the position of the
// summed central volume relative to n +- t*.
PhasePoint classify_pair_point(Functional f, const VolumeDistribution& dK,
                               const VolumeDistribution& dM, double alpha,
                               double param1, double param2);

// Asymptotic normalized transition location for the two worked scale
// families: cubes of side zeta sqrt(2n/pi) under rotation volumes, and balls
// of radius lambda under rigid-motion volumes.
enum class ScaleFamily { scaled_cube_rotation, scaled_ball_rigid };
double asymptotic_location(ScaleFamily family, double param);

}  // namespace ivol
