#include "ivol/bodies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ivol {

namespace {

LogSequence point_sequence(int n) {
  LogSequence seq{n, Kind::intrinsic, std::vector<double>(n + 1, kLogZero)};
  seq.log_values[0] = 0.0;
  return seq;
}

}  // namespace

LogSequence intrinsic_ball(int n, double scale) {
  if (n < 1) throw std::domain_error("intrinsic_ball: dimension must be >= 1");
  if (scale < 0.0) throw std::domain_error("intrinsic_ball: negative scale");
  if (scale == 0.0) return point_sequence(n);
  LogSequence seq{n, Kind::intrinsic, std::vector<double>(n + 1)};
  const double log_scale = std::log(scale);
  const double lkn = log_kappa(n);
  for (int i = 0; i <= n; ++i) {
    seq.log_values[i] = log_binomial(n, i) + lkn - log_kappa(n - i) + i * log_scale;
  }
  return seq;
}

LogSequence intrinsic_cube(int n, double scale) {
  if (n < 1) throw std::domain_error("intrinsic_cube: dimension must be >= 1");
  if (scale < 0.0) throw std::domain_error("intrinsic_cube: negative scale");
  if (scale == 0.0) return point_sequence(n);
  LogSequence seq{n, Kind::intrinsic, std::vector<double>(n + 1)};
  const double log_scale = std::log(scale);
  for (int i = 0; i <= n; ++i) {
    seq.log_values[i] = log_binomial(n, i) + i * log_scale;
  }
  return seq;
}

LogSequence intrinsic_parallelotope(std::span<const double> sides) {
  const int n = static_cast<int>(sides.size());
  for (double s : sides) {
    if (s < 0.0) throw std::domain_error("intrinsic_parallelotope: negative side");
  }
  const bool small = std::ranges::all_of(sides, [](double s) { return s <= 1e3; });
  LogSequence seq{n, Kind::intrinsic, std::vector<double>(n + 1, kLogZero)};
  if (small) {
    // Ascending recurrence for elementary symmetric polynomials, exact for
    // modest side lengths.
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    int used = 0;
    for (double s : sides) {
      ++used;
      for (int i = used; i >= 1; --i) e[i] += s * e[i - 1];
    }
    for (int i = 0; i <= n; ++i) {
      seq.log_values[i] = e[i] > 0.0 ? std::log(e[i]) : kLogZero;
    }
  } else {
    seq.log_values[0] = 0.0;
    int used = 0;
    for (double s : sides) {
      ++used;
      const double ls = s > 0.0 ? std::log(s) : kLogZero;
      for (int i = used; i >= 1; --i) {
        seq.log_values[i] = log_add(seq.log_values[i], ls + seq.log_values[i - 1]);
      }
    }
  }
  return seq;
}

LogSequence intrinsic_product(const LogSequence& a, const LogSequence& b) {
  if (a.kind != Kind::intrinsic || b.kind != Kind::intrinsic)
    throw std::invalid_argument("intrinsic_product: both sequences must be intrinsic");
  LogSequence out{a.n + b.n, Kind::intrinsic, std::vector<double>(a.n + b.n + 1, kLogZero)};
  std::vector<double> terms;
  for (int i = 0; i <= out.n; ++i) {
    terms.clear();
    for (int j = std::max(0, i - b.n); j <= std::min(i, a.n); ++j) {
      terms.push_back(a.log_values[j] + b.log_values[i - j]);
    }
    out.log_values[i] = log_sum_exp(terms);
  }
  return out;
}

LogSequence intrinsic_zonotope(const std::vector<std::vector<double>>& generators) {
  const int g = static_cast<int>(generators.size());
  if (g > 20) throw std::length_error("intrinsic_zonotope: too many generators (max 20)");
  if (g == 0) throw std::domain_error("intrinsic_zonotope: no generators");
  const int m = static_cast<int>(generators.front().size());
  if (m < 1) throw std::domain_error("intrinsic_zonotope: ambient dimension must be >= 1");
  for (const auto& v : generators) {
    if (static_cast<int>(v.size()) != m)
      throw std::invalid_argument("intrinsic_zonotope: inconsistent generator dimensions");
  }

  Eigen::MatrixXd gens(m, g);
  for (int j = 0; j < g; ++j)
    for (int r = 0; r < m; ++r) gens(r, j) = generators[j][r];

  // Volume sums per subset size; accumulated in linear domain (subset volumes
  // of at most 20 generators stay in range).
  std::vector<double> sums(m + 1, 0.0);
  const unsigned total = 1u << g;
  Eigen::MatrixXd sub(m, std::min(g, m));
  for (unsigned mask = 1; mask < total; ++mask) {
    const int size = std::popcount(mask);
    if (size > m) continue;
    int col = 0;
    for (int j = 0; j < g; ++j) {
      if (mask & (1u << j)) sub.col(col++) = gens.col(j);
    }
    // Gram determinant via orthogonal factorization; |prod diag(R)| is the
    // subset's parallelepiped volume.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub.leftCols(size));
    double vol = 1.0;
    for (int r = 0; r < size; ++r) vol *= std::abs(qr.matrixR()(r, r));
    if (vol * vol < 1e-24) continue;  // numerically rank-deficient subset
    sums[size] += vol;
  }

  LogSequence seq{m, Kind::intrinsic, std::vector<double>(m + 1, kLogZero)};
  seq.log_values[0] = 0.0;
  for (int i = 1; i <= m; ++i) {
    seq.log_values[i] = sums[i] > 0.0 ? std::log(sums[i]) : kLogZero;
  }
  return seq;
}

double wills(const LogSequence& seq) {
  if (seq.kind != Kind::intrinsic)
    throw std::invalid_argument("wills: expects an intrinsic sequence");
  return log_sum_exp(seq.log_values);
}

int BodySpec::dimension() const {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Cube>) {
          return v.n;
        } else if constexpr (std::is_same_v<T, Parallelotope>) {
          return static_cast<int>(v.sides.size());
        } else if constexpr (std::is_same_v<T, Product>) {
          return v.left->dimension() + v.right->dimension();
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return v.ambient;
        } else {
          return v.seq.n;
        }
      },
      variant);
}

LogSequence intrinsic_volumes(const BodySpec& body) {
  return std::visit(
      [](const auto& v) -> LogSequence {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return intrinsic_ball(v.n, v.scale);
        } else if constexpr (std::is_same_v<T, Cube>) {
          return intrinsic_cube(v.n, v.scale);
        } else if constexpr (std::is_same_v<T, Parallelotope>) {
          return intrinsic_parallelotope(v.sides);
        } else if constexpr (std::is_same_v<T, Product>) {
          return intrinsic_product(intrinsic_volumes(*v.left), intrinsic_volumes(*v.right));
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return intrinsic_zonotope(v.generators);
        } else {
          return v.seq;
        }
      },
      body.variant);
}

namespace {

using nlohmann::json;

json seq_to_json(const LogSequence& seq) {
  json values = json::array();
  for (double v : seq.log_values) {
    if (v == kLogZero) {
      values.push_back(nullptr);
    } else {
      values.push_back(v);
    }
  }
  const char* kind = seq.kind == Kind::intrinsic    ? "intrinsic"
                     : seq.kind == Kind::rotation   ? "rotation"
                                                    : "rigid_motion";
  return json{{"n", seq.n}, {"kind", kind}, {"log_values", values}};
}

LogSequence seq_from_json(const json& j) {
  LogSequence seq;
  seq.n = j.at("n").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  seq.kind = kind == "intrinsic"  ? Kind::intrinsic
             : kind == "rotation" ? Kind::rotation
                                  : Kind::rigid_motion;
  for (const auto& v : j.at("log_values")) {
    seq.log_values.push_back(v.is_null() ? kLogZero : v.get<double>());
  }
  return seq;
}

json body_to_json(const BodySpec& body) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return json{{"variant", "ball"}, {"n", v.n}, {"scale", v.scale}};
        } else if constexpr (std::is_same_v<T, Cube>) {
          return json{{"variant", "cube"}, {"n", v.n}, {"scale", v.scale}};
        } else if constexpr (std::is_same_v<T, Parallelotope>) {
          return json{{"variant", "parallelotope"}, {"sides", v.sides}};
        } else if constexpr (std::is_same_v<T, Product>) {
          return json{{"variant", "product"},
                      {"left", body_to_json(*v.left)},
                      {"right", body_to_json(*v.right)}};
        } else if constexpr (std::is_same_v<T, Zonotope>) {
          return json{{"variant", "zonotope"},
                      {"ambient", v.ambient},
                      {"generators", v.generators}};
        } else {
          return json{{"variant", "explicit"}, {"sequence", seq_to_json(v.seq)}};
        }
      },
      body.variant);
}

BodySpec body_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "ball") {
    return BodySpec{Ball{j.at("n").get<int>(), j.at("scale").get<double>()}};
  }
  if (variant == "cube") {
    return BodySpec{Cube{j.at("n").get<int>(), j.at("scale").get<double>()}};
  }
  if (variant == "parallelotope") {
    return BodySpec{Parallelotope{j.at("sides").get<std::vector<double>>()}};
  }
  if (variant == "product") {
    return BodySpec{Product{std::make_shared<BodySpec>(body_from_json(j.at("left"))),
                            std::make_shared<BodySpec>(body_from_json(j.at("right")))}};
  }
  if (variant == "zonotope") {
    return BodySpec{Zonotope{j.at("ambient").get<int>(),
                             j.at("generators").get<std::vector<std::vector<double>>>()}};
  }
  if (variant == "explicit") {
    return BodySpec{Explicit{seq_from_json(j.at("sequence"))}};
  }
  throw std::invalid_argument("BodySpec: unknown variant '" + variant + "'");
}

}  // namespace

std::string BodySpec::to_json() const { return body_to_json(*this).dump(); }

BodySpec BodySpec::from_json(const std::string& text) {
  return body_from_json(json::parse(text));
}

}  // namespace ivol
