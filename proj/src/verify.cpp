#include "ivol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ivol {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Gauss-Legendre rules
// ---------------------------------------------------------------------------

struct GlRule {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;
};

GlRule make_gl_rule(int n) {
  GlRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, refined by Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GlRule& gl_rule(int n) {
  static std::map<int, GlRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
  return it->second;
}

double panel_value(const std::function<double(double)>& log_f, double a, double b,
                   int panels, const GlRule& rule, std::vector<double>& terms) {
  terms.clear();
  const double h = (b - a) / panels;
  const double log_half_h = std::log(h / 2.0);
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double g = log_f(mid + 0.5 * h * rule.x[i]);
      if (g != kLogZero) terms.push_back(g + std::log(rule.w[i]) + log_half_h);
    }
  }
  return log_sum_exp(terms);
}

}  // namespace

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const QuadratureConfig& cfg) {
  if (!(b > a)) return kLogZero;
  const GlRule& rule = gl_rule(cfg.nodes);
  std::vector<double> terms;
  double prev = panel_value(log_f, a, b, 1, rule, terms);
  for (int panels = 2; panels <= cfg.max_panels; panels *= 2) {
    const double cur = panel_value(log_f, a, b, panels, rule, terms);
    if (cur == kLogZero && prev == kLogZero) return kLogZero;
    if (std::abs(cur - prev) <= cfg.max_rel_error) return cur;
    prev = cur;
  }
  return prev;
}

double log_integrate_semi(const std::function<double(double)>& log_f, double a,
                          const QuadratureConfig& cfg) {
  const double drop = std::log(1.0 / cfg.eps_trunc) + 10.0;
  double span = std::sqrt(std::log(1.0 / cfg.eps_trunc) / kPi) + 1.0;
  for (int grow = 0; grow < 200; ++grow) {
    double gmax = kLogZero;
    const int scan = 512;
    for (int i = 1; i <= scan; ++i) {
      gmax = std::max(gmax, log_f(a + span * i / scan));
    }
    if (gmax == kLogZero || log_f(a + span) <= gmax - drop) break;
    span *= 1.5;
  }
  return log_integrate(log_f, a, a + span, cfg);
}

namespace {

// log(kappa_n lambda^n), the atom of the ball's radial reduction; -inf at 0.
double log_ball_volume(int n, double lambda) {
  return lambda > 0.0 ? log_kappa(n) + n * std::log(lambda) : kLogZero;
}

}  // namespace

double quad_ball_wills(int n, double lambda, const QuadratureConfig& cfg) {
  if (n < 1 || lambda < 0.0) throw std::domain_error("quad_ball_wills: bad arguments");
  const auto g = [n, lambda](double s) { return (n - 1) * std::log(lambda + s) - kPi * s * s; };
  return log_add(log_ball_volume(n, lambda), log_omega(n) + log_integrate_semi(g, 0.0, cfg));
}

double quad_ball_rm_total(int n, double lambda, const QuadratureConfig& cfg) {
  if (n < 1 || lambda < 0.0) throw std::domain_error("quad_ball_rm_total: bad arguments");
  const auto g = [n, lambda](double theta) {
    const double base = lambda * std::sin(theta) + std::cos(theta);
    return base > 0.0 ? (n - 1) * std::log(base) : kLogZero;
  };
  const double atom = lambda > 0.0 ? n * std::log(lambda) - std::log(n) : kLogZero;
  return log_omega(n) + log_add(atom, log_integrate(g, 0.0, kPi / 2.0, cfg));
}

double quad_cube_totals(int n, double lambda, Kind kind, const QuadratureConfig& cfg) {
  if (n < 1 || lambda < 0.0) throw std::domain_error("quad_cube_totals: bad arguments");
  std::function<double(double)> g;
  if (kind == Kind::rotation) {
    g = [n, lambda](double s) { return n * std::log(lambda + s) - kPi * s * s; };
  } else if (kind == Kind::rigid_motion) {
    g = [n, lambda](double s) { return n * std::log1p(lambda * s) - kPi * s * s; };
  } else {
    throw std::invalid_argument("quad_cube_totals: kind must be rotation or rigid_motion");
  }
  return log_omega(n + 1) + log_integrate_semi(g, 0.0, cfg);
}

// ---------------------------------------------------------------------------
// Metric formulations
// ---------------------------------------------------------------------------

namespace {

// log of the 1-D moment integral int_0^infty f(r) r^{k-1} dr for the built-in
// radial test functions; the Cauchy kernel carries the ambient exponent n.
double log_moment(TestFunction f, int k, int n, const QuadratureConfig& cfg) {
  switch (f) {
    case TestFunction::gauss_sq:
      return log_integrate_semi(
          [k](double r) { return (k - 1) * std::log(r) - kPi * r * r; }, 0.0, cfg);
    case TestFunction::exp_lin:
      return log_integrate_semi(
          [k](double r) { return (k - 1) * std::log(r) - 2.0 * kPi * r; }, 0.0, cfg);
    case TestFunction::cauchy_pow:
      // r = tan(phi) turns the moment into a finite beta-type integral.
      return log_integrate(
          [k, n](double phi) {
            return (k - 1) * std::log(std::sin(phi)) + (n - k) * std::log(std::cos(phi));
          },
          0.0, kPi / 2.0, cfg);
  }
  return kLogZero;
}

// log of f(0) V_n + sum_k omega_k M_k(f) V_{n-k}: the generalized Steiner
// reduction of an integral of a radial distance kernel (f(0) = 1 for all
// built-in kernels).
double steiner_total(const LogSequence& seq, TestFunction f, const QuadratureConfig& cfg) {
  const int n = seq.n;
  std::vector<double> terms;
  terms.push_back(seq.log_values[n]);
  for (int k = 1; k <= n; ++k) {
    terms.push_back(log_omega(k) + log_moment(f, k, n, cfg) + seq.log_values[n - k]);
  }
  return log_sum_exp(terms);
}

double metric_ball(int n, double lambda, Kind kind, const QuadratureConfig& cfg) {
  const double atom = log_ball_volume(n, lambda);
  switch (kind) {
    case Kind::intrinsic:
      return log_add(atom, log_omega(n) +
                               log_integrate_semi(
                                   [n, lambda](double r) {
                                     return (n - 1) * std::log(lambda + r) - kPi * r * r;
                                   },
                                   0.0, cfg));
    case Kind::rotation:
      return log_omega(n + 1) - std::log(2.0) +
             log_add(atom, log_omega(n) +
                               log_integrate_semi(
                                   [n, lambda](double r) {
                                     return (n - 1) * std::log(lambda + r) - 2.0 * kPi * r;
                                   },
                                   0.0, cfg));
    case Kind::rigid_motion:
      // r = tan(phi) reduces the polynomially decaying kernel to [0, pi/2].
      return log_add(atom, log_omega(n) +
                               log_integrate(
                                   [n, lambda](double phi) {
                                     const double base =
                                         lambda * std::cos(phi) + std::sin(phi);
                                     return base > 0.0 ? (n - 1) * std::log(base) : kLogZero;
                                   },
                                   0.0, kPi / 2.0, cfg));
  }
  return kLogZero;
}

struct Node1D {
  double e;  // excess coordinate |x| - h, clamped to zero inside the core
  double w;  // linear quadrature weight (Jacobian and symmetry included)
};

// Per-dimension tail nodes for the box tensor quadrature.  Each node stores
// its signed excess |x| - h (zero inside the core) and a linear-domain
// weight.  The axis splits at the faces +-h so each block sees a smooth
// integrand.  The exponentially decaying kernels use truncated tails graded
// geometrically toward the face (the radial kernel has a cusp at the
// corner); the polynomially decaying rigid-motion kernel uses the map
// excess = sinh(u), which turns the slowly decaying far field into a smooth
// exponentially decaying integrand on a finite u-range.
std::vector<Node1D> box_axis_nodes(double h, Kind kind, int refine, const GlRule& rule) {
  std::vector<Node1D> nodes;
  // One core panel suffices: the kernel is constant along an in-core axis.
  if (h > 0.0) {
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      nodes.push_back({0.0, rule.w[i] * h});  // excess 0, weight for [-h, h]
    }
  }
  // Graded segment boundaries for one tail, in the mapped variable.
  std::vector<double> bounds{0.0};
  const bool rigid = kind == Kind::rigid_motion;
  const double span = rigid ? 48.0 : 8.0;  // sinh(48) covers the fat tail
  const int levels = rigid ? 13 : 11;
  for (int k = levels - 1; k >= 0; --k) bounds.push_back(span * std::pow(2.0, -k));
  const auto add_tail_segment = [&](double a, double b) {
    const double step = (b - a) / refine;
    for (int p = 0; p < refine; ++p) {
      const double mid = a + (p + 0.5) * step;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double u = mid + 0.5 * step * rule.x[i];
        const double excess = rigid ? std::sinh(u) : u;
        const double jac = rigid ? std::cosh(u) : 1.0;
        // Two symmetric tails contribute identically: fold them into one
        // node with a doubled weight.
        nodes.push_back({excess, 2.0 * rule.w[i] * (step / 2.0) * jac});
      }
    }
  };
  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    add_tail_segment(bounds[s], bounds[s + 1]);
  }
  return nodes;
}

double box_tensor_pass(std::span<const double> half, Kind kind, int n, int refine,
                       const QuadratureConfig& cfg) {
  const GlRule& rule = gl_rule(16);
  std::vector<std::vector<Node1D>> axes;
  for (double h : half) axes.push_back(box_axis_nodes(h, kind, refine, rule));

  // Linear-domain kernels as a function of the squared excess distance.
  const auto kernel = [kind, n](double d2) {
    switch (kind) {
      case Kind::intrinsic:
        return std::exp(-kPi * d2);
      case Kind::rotation:
        return std::exp(-2.0 * kPi * std::sqrt(d2));
      case Kind::rigid_motion: {
        const double t = 1.0 + d2;
        if (n == 1) return 1.0 / t;
        if (n == 2) return 1.0 / (t * std::sqrt(t));
        return 1.0 / (t * t);  // n == 3
      }
    }
    return 0.0;
  };

  double sum = 0.0, comp = 0.0;  // Kahan accumulation
  const auto accumulate = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  if (n == 1) {
    for (const auto& a : axes[0]) {
      accumulate(a.w * kernel(a.e * a.e));
    }
  } else if (n == 2) {
    for (const auto& a : axes[0]) {
      const double e0 = a.e * a.e;
      for (const auto& b : axes[1]) {
        accumulate(a.w * b.w * kernel(e0 + b.e * b.e));
      }
    }
  } else {
    for (const auto& a : axes[0]) {
      const double e0 = a.e * a.e;
      for (const auto& b : axes[1]) {
        const double e01 = e0 + b.e * b.e;
        const double w01 = a.w * b.w;
        for (const auto& c : axes[2]) {
          accumulate(w01 * c.w * kernel(e01 + c.e * c.e));
        }
      }
    }
  }
  (void)cfg;
  return std::log(sum);
}

double metric_box(std::span<const double> sides, Kind kind, const QuadratureConfig& cfg) {
  const int n = static_cast<int>(sides.size());
  double result;
  if (n <= 3) {
    std::vector<double> half(sides.begin(), sides.end());
    for (double& h : half) h *= 0.5;
    const int cap = n == 3 ? 2 : 4;
    double prev = box_tensor_pass(half, kind, n, 1, cfg);
    for (int refine = 2; refine <= cap; refine *= 2) {
      const double cur = box_tensor_pass(half, kind, n, refine, cfg);
      const bool converged = std::abs(cur - prev) <= 1e-10;
      prev = cur;
      if (converged) break;
    }
    result = prev;
  } else {
    const LogSequence seq = intrinsic_parallelotope(sides);
    const TestFunction f = kind == Kind::intrinsic   ? TestFunction::gauss_sq
                           : kind == Kind::rotation  ? TestFunction::exp_lin
                                                     : TestFunction::cauchy_pow;
    result = steiner_total(seq, f, cfg);
  }
  if (kind == Kind::rotation) result += log_omega(n + 1) - std::log(2.0);
  return result;
}

}  // namespace

double metric_total(const BodySpec& body, Kind kind, const QuadratureConfig& cfg) {
  if (const auto* ball = std::get_if<Ball>(&body.variant)) {
    return metric_ball(ball->n, ball->scale, kind, cfg);
  }
  if (const auto* cube = std::get_if<Cube>(&body.variant)) {
    std::vector<double> sides(cube->n, cube->scale);
    return metric_box(sides, kind, cfg);
  }
  if (const auto* ptope = std::get_if<Parallelotope>(&body.variant)) {
    return metric_box(ptope->sides, kind, cfg);
  }
  throw std::invalid_argument("metric_total: body must be a ball, cube, or parallelotope");
}

double generalized_steiner_check(int n, double lambda, TestFunction f,
                                 const QuadratureConfig& cfg) {
  if (n < 1 || lambda < 0.0) throw std::domain_error("generalized_steiner_check: bad arguments");
  // Left side: the full-space integral by the ball's radial reduction.
  std::function<double(double)> g;
  double lhs_tail;
  switch (f) {
    case TestFunction::gauss_sq:
      lhs_tail = log_integrate_semi(
          [n, lambda](double r) { return (n - 1) * std::log(lambda + r) - kPi * r * r; }, 0.0,
          cfg);
      break;
    case TestFunction::exp_lin:
      lhs_tail = log_integrate_semi(
          [n, lambda](double r) { return (n - 1) * std::log(lambda + r) - 2.0 * kPi * r; }, 0.0,
          cfg);
      break;
    case TestFunction::cauchy_pow:
      lhs_tail = log_integrate(
          [n, lambda](double phi) {
            const double base = lambda * std::cos(phi) + std::sin(phi);
            return base > 0.0 ? (n - 1) * std::log(base) : kLogZero;
          },
          0.0, kPi / 2.0, cfg);
      break;
  }
  const double lhs = log_add(log_ball_volume(n, lambda), log_omega(n) + lhs_tail);
  // Right side: the weighted sum with 1-D moment quadrature.
  const double rhs = steiner_total(intrinsic_ball(n, lambda), f, cfg);
  return std::abs(std::expm1(lhs - rhs));
}

double moment_identity_check(int n, double lambda, Kind kind, double theta, MomentWeight h,
                             const QuadratureConfig& cfg) {
  if (n < 1 || lambda < 0.0) throw std::domain_error("moment_identity_check: bad arguments");
  const LogSequence base = intrinsic_ball(n, lambda);
  const double atom = log_ball_volume(n, lambda);
  const bool linear = h == MomentWeight::linear;

  double lhs = kLogZero;
  std::vector<double> rhs_terms;
  switch (kind) {
    case Kind::rotation: {
      const auto g = [n, lambda, theta, linear](double r) {
        double v = -2.0 * kPi * std::exp(theta) * r + (n - 1) * std::log(lambda + r);
        if (linear) v += std::log(2.0 * kPi) + theta + std::log(r);
        return v;
      };
      const double core =
          linear ? log_omega(n) + log_integrate_semi(g, 0.0, cfg)
                 : log_add(atom, log_omega(n) + log_integrate_semi(g, 0.0, cfg));
      lhs = log_omega(n + 1) + n * theta - std::log(2.0) + core;
      const LogSequence rot = to_rotation(base);
      for (int i = 0; i <= n; ++i) {
        const double log_mean = linear ? (i > 0 ? std::log(i) : kLogZero) : 0.0;
        if (log_mean == kLogZero && linear) continue;
        rhs_terms.push_back(log_mean + (n - i) * theta + rot.log_values[i]);
      }
      break;
    }
    case Kind::rigid_motion: {
      // r = e^theta tan(phi) collapses the kernel to a finite integral.
      const auto g = [n, lambda, theta, linear](double phi) {
        const double base_v = lambda * std::cos(phi) + std::exp(theta) * std::sin(phi);
        if (!(base_v > 0.0)) return kLogZero;
        double v = (n - 1) * std::log(base_v);
        if (linear) v += 2.0 * std::log(std::sin(phi));
        return v;
      };
      const double tail = log_omega(n) + theta + log_integrate(g, 0.0, kPi / 2.0, cfg);
      lhs = linear ? tail : log_add(atom, tail);
      const LogSequence rm = to_rigid_motion(base);
      for (int i = 0; i <= n; ++i) {
        double log_mean = 0.0;
        if (linear) {
          if (i == n) continue;  // Beta mean (n-i)/(n+1) vanishes at i = n
          log_mean = std::log(n - i) - std::log(n + 1.0);
        }
        rhs_terms.push_back(log_mean + (n - i) * theta + rm.log_values[i]);
      }
      break;
    }
    case Kind::intrinsic: {
      const auto g = [n, lambda, theta, linear](double r) {
        const double scale = std::exp(-2.0 * theta);
        double v = -kPi * scale * r * r + (n - 1) * std::log(lambda + r);
        if (linear) v += std::log(2.0 * kPi * scale) + 2.0 * std::log(r);
        return v;
      };
      const double tail = log_omega(n) + log_integrate_semi(g, 0.0, cfg);
      lhs = linear ? tail : log_add(atom, tail);
      for (int i = 0; i <= n; ++i) {
        double log_mean = 0.0;
        if (linear) {
          if (i == n) continue;  // chi-squared mean n-i vanishes at i = n
          log_mean = std::log(n - i);
        }
        rhs_terms.push_back(log_mean + (n - i) * theta + base.log_values[i]);
      }
      break;
    }
  }
  const double rhs = log_sum_exp(rhs_terms);
  return std::abs(std::expm1(lhs - rhs));
}

// ---------------------------------------------------------------------------
// Monte Carlo over the rotation group
// ---------------------------------------------------------------------------

Eigen::MatrixXd haar_rotation(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::domain_error("haar_rotation: dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd gaussian(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) gaussian(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign correction makes the factorization unique and the law Haar.
  for (int c = 0; c < n; ++c) {
    if (r_mat(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  if (q.determinant() < 0.0) q.col(n - 1) = -q.col(n - 1);
  return q;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent per-sample substream: reproducible and order-free.
std::mt19937_64 substream(std::uint64_t seed, int sample) {
  return std::mt19937_64(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (sample + 1))));
}

void check_mc_args(int n, int m, const McConfig& cfg) {
  if (n < 1 || n > 12) throw std::length_error("mc_rand_proj: requires 1 <= n <= 12");
  if (m < 0 || m > n) throw std::domain_error("mc_rand_proj: m out of range");
  if (cfg.samples < 100) throw std::invalid_argument("mc_rand_proj: needs >= 100 samples");
}

// Rotation volumes of the projection of lambda Q^n onto the span of the
// first m rows of a Haar rotation; the projected cube is a zonotope.
LogSequence projected_rotation_volumes(const Eigen::MatrixXd& q, int n, int m, double lambda) {
  std::vector<std::vector<double>> generators(n, std::vector<double>(m));
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < m; ++r) generators[j][r] = lambda * q(r, j);
  return to_rotation(intrinsic_zonotope(generators));
}

}  // namespace

McEstimate mc_rand_proj(int n, int m, double lambda, const McConfig& cfg) {
  check_mc_args(n, m, cfg);
  const double log_total_n =
      log_sum_exp(to_rotation(intrinsic_cube(n, lambda)).log_values);
  double mean = 0.0, m2 = 0.0;  // Welford accumulation
  for (int k = 0; k < cfg.samples; ++k) {
    double ratio;
    if (m == 0) {
      ratio = std::exp(-log_total_n);
    } else {
      auto rng = substream(cfg.seed, k);
      const Eigen::MatrixXd q = haar_rotation(n, rng);
      const LogSequence rot = projected_rotation_volumes(q, n, m, lambda);
      ratio = std::exp(log_sum_exp(rot.log_values) - log_total_n);
    }
    const double d = ratio - mean;
    mean += d / (k + 1);
    m2 += d * (ratio - mean);
  }
  const double var = cfg.samples > 1 ? m2 / (cfg.samples - 1) : 0.0;
  return McEstimate{mean, std::sqrt(var / cfg.samples), cfg.samples};
}

std::vector<McIndexEstimate> mc_projection_formula(int n, int m, double lambda,
                                                   const McConfig& cfg) {
  check_mc_args(n, m, cfg);
  if (m < 1) throw std::domain_error("mc_projection_formula: m must be >= 1");
  const LogSequence exact = to_rotation(intrinsic_cube(n, lambda));
  std::vector<double> mean(m + 1, 0.0), m2(m + 1, 0.0);
  for (int k = 0; k < cfg.samples; ++k) {
    auto rng = substream(cfg.seed, k);
    const Eigen::MatrixXd q = haar_rotation(n, rng);
    const LogSequence rot = projected_rotation_volumes(q, n, m, lambda);
    for (int i = 0; i <= m; ++i) {
      const double v = rot.log_values[i] == kLogZero ? 0.0 : std::exp(rot.log_values[i]);
      const double d = v - mean[i];
      mean[i] += d / (k + 1);
      m2[i] += d * (v - mean[i]);
    }
  }
  std::vector<McIndexEstimate> out;
  for (int i = 0; i <= m; ++i) {
    const double var = cfg.samples > 1 ? m2[i] / (cfg.samples - 1) : 0.0;
    out.push_back({i, mean[i], std::sqrt(var / cfg.samples),
                   std::exp(exact.log_values[n - m + i])});
  }
  return out;
}

}  // namespace ivol
