#include "ivol/concentration.hpp"

#include <cmath>
#include <stdexcept>

namespace ivol {

namespace {

// Poisson cgf envelope v (e^{a theta} - a theta - 1) / a^2, with the
// Gaussian limit v theta^2 / 2 as a -> 0.
double poisson_cgf_envelope(double v, double a, double theta) {
  if (v == 0.0) return 0.0;
  if (a == 0.0) return 0.5 * v * theta * theta;
  const double x = a * theta;
  return v * (std::expm1(x) - x) / (a * a);
}

// Log Chernoff tail -(v/a^2) psi(sign * a t / v); -inf when psi diverges.
double poisson_log_tail(double v, double a, double u_scaled) {
  // u_scaled = +-(a t / v) already formed by the caller.
  const double p = psi_tail(u_scaled);
  if (p == kPosInf) return kLogZero;
  return -(v / (a * a)) * p;
}

}  // namespace

double TailBound::delta_comp() const {
  switch (kind) {
    case Kind::rotation:
      return 0.0;  // unused for rotations
    case Kind::rigid_motion:
      return (n + 1.0) - delta;
    case Kind::intrinsic:
      return static_cast<double>(n) - delta;
  }
  return 0.0;
}

double TailBound::variance_bound() const {
  switch (kind) {
    case Kind::rotation:
      return delta;
    case Kind::rigid_motion:
      return 2.0 * delta * delta_comp() / (n + 1.0);
    case Kind::intrinsic:
      return n > 0 ? 2.0 * delta * delta_comp() / n : 0.0;
  }
  return 0.0;
}

double cgf_bound(const TailBound& b, double theta) {
  if (b.kind == Kind::rotation) {
    return poisson_cgf_envelope(b.delta, 1.0, theta);
  }
  const double span = b.kind == Kind::rigid_motion ? b.n + 1.0 : static_cast<double>(b.n);
  const double v = b.variance_bound();
  // Scale beta_comp governs the upper branch; the lower branch integrates the
  // differential inequality with the negated scale -beta, so the exponential
  // grows in both directions.
  const double a = theta >= 0.0 ? 2.0 * b.delta_comp() / span : -2.0 * b.delta / span;
  return poisson_cgf_envelope(v, a, theta);
}

double poisson_tail(const TailBound& b, double t, TailSide side) {
  if (t < 0.0) throw std::domain_error("poisson_tail: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (b.kind == Kind::rotation) {
    if (b.delta == 0.0) return kLogZero;
    const double u = (side == TailSide::upper ? t : -t) / b.delta;
    return poisson_log_tail(b.delta, 1.0, u);
  }
  const double span = b.kind == Kind::rigid_motion ? b.n + 1.0 : static_cast<double>(b.n);
  const double v = b.variance_bound();
  if (v == 0.0) return kLogZero;
  // Both sides reduce to a Chernoff bound with a growing exponential
  // envelope, so the psi argument is positive on each branch.
  const double a = side == TailSide::upper ? 2.0 * b.delta_comp() / span : 2.0 * b.delta / span;
  const double u = a * t / v;
  return poisson_log_tail(v, a, u);
}

double bernstein_tail(const TailBound& b, double t) {
  if (t == 0.0) throw std::domain_error("bernstein_tail: t must be nonzero");
  const double at = std::abs(t);
  switch (b.kind) {
    case Kind::rotation:
      return -(t * t / 2.0) / (b.delta + at / 3.0);
    case Kind::rigid_motion:
      return -(t * t / 4.0) / (std::min(b.delta, b.delta_comp()) + at / 3.0);
    case Kind::intrinsic:
      return -(t * t / 4.0) / (b.variance_bound() + at / 3.0);
  }
  return 0.0;
}

double sum_tail(const TailBound& k, const TailBound& m, double t) {
  if (k.kind != m.kind) throw std::invalid_argument("sum_tail: kind mismatch");
  if (t == 0.0) throw std::domain_error("sum_tail: t must be nonzero");
  const double at = std::abs(t);
  if (k.kind == Kind::rotation) {
    return -(t * t / 2.0) / ((k.delta + m.delta) + at / 3.0);
  }
  if (k.kind == Kind::rigid_motion) {
    const double v = std::min(k.delta, k.delta_comp()) + std::min(m.delta, m.delta_comp());
    return -(t * t / 4.0) / (v + at / 3.0);
  }
  throw std::invalid_argument("sum_tail: only rotation and rigid-motion kinds");
}

double transition_width(const TailBound& b, double alpha, PhaseTheorem theorem) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("transition_width: alpha must lie in (0,1)");
  const double L = std::log(1.0 / alpha);
  switch (theorem) {
    case PhaseTheorem::rand_proj:
      return std::sqrt(2.0 * b.delta * L) + (2.0 / 3.0) * L;
    case PhaseTheorem::rand_slice: {
      const double sigma2 = std::min(b.delta, b.delta_comp());
      return std::sqrt(4.0 * sigma2 * L) + (4.0 / 3.0) * L;
    }
    default:
      throw std::invalid_argument("transition_width: two-body theorem needs a pair");
  }
}

double transition_width_pair(const TailBound& k, const TailBound& m, double alpha,
                             PhaseTheorem theorem) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("transition_width: alpha must lie in (0,1)");
  const double L = std::log(1.0 / alpha);
  const double sum = k.delta + m.delta;
  switch (theorem) {
    case PhaseTheorem::rot_mean:
      return std::sqrt(2.0 * sum * L) + (2.0 / 3.0) * L;
    case PhaseTheorem::kinematic:
      return std::sqrt(4.0 * sum * L) + (4.0 / 3.0) * L;
    default:
      throw std::invalid_argument("transition_width_pair: single-body theorem");
  }
}

}  // namespace ivol
