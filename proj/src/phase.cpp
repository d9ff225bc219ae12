#include "ivol/phase.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ivol {

namespace {

double cdf(const VolumeDistribution& dist, int m, Kind expected, const char* name) {
  if (dist.kind != expected) throw std::invalid_argument(std::string(name) + ": wrong kind");
  if (m < 0 || m > dist.n) throw std::domain_error(std::string(name) + ": m out of range");
  double p = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (dist.log_pmf[k] != kLogZero) p += std::exp(dist.log_pmf[k]);
  }
  return std::min(p, 1.0);
}

// Both pair functionals reduce to the inclusive lower tail of the
// convolved value distribution at the ambient dimension n, which equals
// the double sum over sequence indices i + j >= n.
double lower_tail_at_n(const VolumeDistribution& dK, const VolumeDistribution& dM,
                       Kind expected, const char* name) {
  if (dK.kind != expected || dM.kind != expected)
    throw std::invalid_argument(std::string(name) + ": wrong kind");
  if (dK.n != dM.n) throw std::invalid_argument(std::string(name) + ": dimension mismatch");
  const VolumeDistribution sum = pmf_convolve(dK, dM);
  double p = 0.0;
  for (int k = 0; k <= dK.n; ++k) {
    if (sum.log_pmf[k] != kLogZero) p += std::exp(sum.log_pmf[k]);
  }
  return std::min(p, 1.0);
}

PhaseClass classify_position(double x, double location, double width) {
  if (x <= location - width) return PhaseClass::low;
  if (x >= location + width) return PhaseClass::high;
  return PhaseClass::transition;
}

PhaseTheorem theorem_of(Functional f) {
  switch (f) {
    case Functional::rand_proj:
      return PhaseTheorem::rand_proj;
    case Functional::rand_slice:
      return PhaseTheorem::rand_slice;
    case Functional::rot_mean:
      return PhaseTheorem::rot_mean;
    case Functional::kinematic:
      return PhaseTheorem::kinematic;
  }
  return PhaseTheorem::rand_proj;
}

}  // namespace

double rand_proj(const VolumeDistribution& dist, int m) {
  return cdf(dist, m, Kind::rotation, "rand_proj");
}

double rand_slice(const VolumeDistribution& dist, int m) {
  return cdf(dist, m, Kind::rigid_motion, "rand_slice");
}

double rot_mean(const VolumeDistribution& dK, const VolumeDistribution& dM) {
  return lower_tail_at_n(dK, dM, Kind::rotation, "rot_mean");
}

double kinematic(const VolumeDistribution& dK, const VolumeDistribution& dM) {
  return lower_tail_at_n(dK, dM, Kind::rigid_motion, "kinematic");
}

PhaseReport classify(Functional f, const VolumeDistribution& dist, double alpha,
                     std::span<const int> ms) {
  if (f != Functional::rand_proj && f != Functional::rand_slice)
    throw std::invalid_argument("classify: single-body sweep needs a cdf functional");
  const TailBound b = TailBound::from(dist);
  const double width = transition_width(b, alpha, theorem_of(f));
  PhaseReport report{f, dist.n, b.delta, alpha, {}};
  report.points.reserve(ms.size());
  for (int m : ms) {
    const double value = f == Functional::rand_proj ? rand_proj(dist, m) : rand_slice(dist, m);
    PhasePoint pt;
    pt.param1 = static_cast<double>(m);
    pt.m = m;
    pt.value = value;
    pt.width = width;
    pt.cls = classify_position(m, b.delta, width);
    report.points.push_back(pt);
  }
  return report;
}

PhaseReport classify(Functional f, const VolumeDistribution& dist, double alpha) {
  std::vector<int> ms(dist.n + 1);
  std::iota(ms.begin(), ms.end(), 0);
  return classify(f, dist, alpha, ms);
}

PhasePoint classify_pair_point(Functional f, const VolumeDistribution& dK,
                               const VolumeDistribution& dM, double alpha,
                               double param1, double param2) {
  if (f != Functional::rot_mean && f != Functional::kinematic)
    throw std::invalid_argument("classify_pair_point: needs a two-body functional");
  const TailBound bK = TailBound::from(dK);
  const TailBound bM = TailBound::from(dM);
  PhasePoint pt;
  pt.param1 = param1;
  pt.param2 = param2;
  pt.value = f == Functional::rot_mean ? rot_mean(dK, dM) : kinematic(dK, dM);
  pt.width = transition_width_pair(bK, bM, alpha, theorem_of(f));
  // The summed central volume plays the role of the sweeping parameter; the
  // transition sits at the ambient dimension n.  The functional is large
  // below the transition and small above it, so the class labels flip
  // relative to the single-body cdf sweeps.
  const double total_delta = bK.delta + bM.delta;
  const double n = static_cast<double>(dK.n);
  if (total_delta >= n + pt.width) {
    pt.cls = PhaseClass::low;
  } else if (total_delta <= n - pt.width) {
    pt.cls = PhaseClass::high;
  } else {
    pt.cls = PhaseClass::transition;
  }
  return pt;
}

double asymptotic_location(ScaleFamily family, double param) {
  if (!(param > 0.0)) throw std::domain_error("asymptotic_location: param must be positive");
  switch (family) {
    case ScaleFamily::scaled_cube_rotation:
      return 2.0 / (1.0 + std::sqrt(1.0 + 1.0 / (param * param)));
    case ScaleFamily::scaled_ball_rigid:
      return 1.0 / (1.0 + param * param);
  }
  return 0.0;
}

}  // namespace ivol
