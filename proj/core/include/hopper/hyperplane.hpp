#pragma once

#include "hopper/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hopper {

/// The hyperplane normal . x = offset. Stored as a primitive integer vector
/// (gcd of all entries is 1) whose first nonzero normal entry is positive, so
/// equal hyperplanes compare equal and hash equal.
struct Hyperplane {
  IntegerVector normal;
  Integer offset;

  /// Brings (normal, offset) into canonical form. Throws DegenerateInput on a
  /// zero normal.
  static Hyperplane canonical(IntegerVector normal, Integer offset);

  std::size_t dimension() const noexcept { return normal.size(); }

  /// normal . x - offset, exactly.
  Rational evaluate(std::span<const Rational> x) const;
  /// Sign of evaluate(x).
  int side(std::span<const Rational> x) const;

  /// Unit normal and matching offset in binary64.
  std::vector<double> unit_normal() const;
  double unit_offset() const;

  bool operator==(const Hyperplane&) const = default;
};

struct HyperplaneHash {
  std::size_t operator()(const Hyperplane& h) const noexcept;
};

enum class Sense { LessEqual, GreaterEqual };

struct SignedConstraint {
  Hyperplane plane;
  Sense sense = Sense::LessEqual;

  bool satisfied_by(std::span<const Rational> x) const;
  /// Same half-space written as normal . x <= offset in binary64 (unit normal).
  std::pair<std::vector<double>, double> as_float_le() const;
};

/// Intersection of signed constraints, optionally restricted to a flat.
struct Region {
  std::vector<SignedConstraint> constraints;
  std::optional<Hyperplane> equality;
};

/// Hyperplane through exactly d affinely independent points of R^d.
/// Throws AffinelyDependent otherwise.
Hyperplane hyperplane_through(const std::vector<RationalVector>& points);

/// Same, for points given as integer homogeneous rows (k*p, k) with k > 0.
/// Returns nullopt if the rows are dependent.
std::optional<Hyperplane> hyperplane_through_homogeneous(std::span<const IntegerVector* const> rows);

/// Fraction-free (Bareiss) determinant. The matrix is consumed.
Integer bareiss_determinant(std::vector<IntegerVector>& m);

}  // namespace hopper
