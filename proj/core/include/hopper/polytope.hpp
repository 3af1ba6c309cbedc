#pragma once

#include "hopper/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hopper {

/// Convex hull of n points in R^d, stored as an n x d row-major matrix of
/// exact rationals. Geometric validity (full dimension, every row a vertex)
/// is checked by proper_spanning_check, not by the constructor.
class Polytope {
 public:
  Polytope() = default;
  Polytope(std::size_t dimension, std::vector<Rational> coordinates);

  static Polytope from_rows(const std::vector<RationalVector>& rows);
  static Polytope from_doubles(const Eigen::MatrixXd& rows);

  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<const Rational> vertex(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  const Rational& at(std::size_t i, std::size_t j) const { return coords_[i * dimension_ + j]; }
  Rational& at(std::size_t i, std::size_t j) { return coords_[i * dimension_ + j]; }

  Eigen::MatrixXd to_float() const;

  Polytope with_vertex_replaced(std::size_t i, std::span<const Rational> point) const;
  Polytope with_vertex_added(std::span<const Rational> point) const;
  Polytope without_vertex(std::size_t i) const;

  bool operator==(const Polytope&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<Rational> coords_;
};

/// Text format: a line "n d", then n lines of d values (decimal or p/q).
Polytope parse_polytope(std::istream& in);
Polytope parse_polytope(const std::string& text);
Polytope read_polytope_file(const std::filesystem::path& path);
void write_polytope(std::ostream& out, const Polytope& p);
std::string format_polytope(const Polytope& p);

}  // namespace hopper
