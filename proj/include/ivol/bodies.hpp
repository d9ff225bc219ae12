#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ivol/specfun.hpp"

// Catalog of convex bodies with exact intrinsic volume sequences.

namespace ivol {

enum class Kind { intrinsic, rotation, rigid_motion };

// A length-(n+1) sequence of nonnegative reals in log domain.  Holds the
// intrinsic volumes V_i of a body, or one of their reweightings.
struct LogSequence {
  int n = 0;
  Kind kind = Kind::intrinsic;
  std::vector<double> log_values;  // size n + 1; -inf encodes zero

  double at(int i) const { return (i >= 0 && i <= n) ? log_values[i] : kLogZero; }
};

struct BodySpec;

struct Ball {
  int n;
  double scale;
};
struct Cube {
  int n;
  double scale;
};
struct Parallelotope {
  std::vector<double> sides;
};
struct Product {
  std::shared_ptr<BodySpec> left;
  std::shared_ptr<BodySpec> right;
};
struct Zonotope {
  int ambient;                              // dimension m of the generators
  std::vector<std::vector<double>> generators;  // each of size ambient
};
struct Explicit {
  LogSequence seq;
};

// Symbolic descriptor of a convex body.
struct BodySpec {
  std::variant<Ball, Cube, Parallelotope, Product, Zonotope, Explicit> variant;

  int dimension() const;
  std::string to_json() const;
  static BodySpec from_json(const std::string& text);
};

// Intrinsic volume sequence of the scaled ball lambda B^n:
// V_i = C(n,i) kappa_n / kappa_{n-i} lambda^i.
LogSequence intrinsic_ball(int n, double scale);

// Intrinsic volume sequence of the scaled cube lambda Q^n: V_i = C(n,i) lambda^i.
LogSequence intrinsic_cube(int n, double scale);

// Intrinsic volumes of the axis-aligned box with the given side lengths:
// the elementary symmetric polynomials of the sides.
LogSequence intrinsic_parallelotope(std::span<const double> sides);

// Intrinsic volumes of a Cartesian product: log-domain convolution.
LogSequence intrinsic_product(const LogSequence& a, const LogSequence& b);

// Intrinsic volumes of the zonotope spanned by the generators (Minkowski sum
// of segments): entry i sums the i-volumes of parallelepipeds over i-subsets.
// Requires at most 20 generators.
LogSequence intrinsic_zonotope(const std::vector<std::vector<double>>& generators);

// Total intrinsic volume W(K) = sum_i V_i(K), in log domain.
double wills(const LogSequence& seq);

// Evaluates the body spec to its intrinsic volume sequence.
LogSequence intrinsic_volumes(const BodySpec& body);

}  // namespace ivol
