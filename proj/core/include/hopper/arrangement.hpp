#pragma once

#include "hopper/hyperplane.hpp"
#include "hopper/polytope.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hopper {

/// Every distinct hyperplane spanned by d vertices of a polytope, with the
/// d-subsets that generate it. Plane order is insertion order and is stable
/// across incremental updates only for untouched planes.
class ArrangementCache {
 public:
  struct Entry {
    Hyperplane plane;
    std::vector<std::vector<std::uint32_t>> generators;  // sorted subsets
    Eigen::VectorXd unit_normal;
    double unit_offset = 0;
  };

  static ArrangementCache build(const Polytope& p);

  /// Cache for p obtained from the cached polytope by replacing vertex i.
  ArrangementCache replaced(const Polytope& p, std::size_t changed) const;
  /// Cache for p obtained by appending one vertex.
  ArrangementCache added(const Polytope& p) const;
  /// Cache for p obtained by deleting vertex i (later indices shift down).
  ArrangementCache removed(const Polytope& p, std::size_t deleted) const;

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::optional<std::size_t> find(const Hyperplane& h) const;

  /// Subsets examined when the cache was (re)built, for diagnostics.
  std::uint64_t subsets_examined() const noexcept { return examined_; }

  /// Set equality of the plane sets and of every generator list.
  bool same_planes(const ArrangementCache& other) const;

 private:
  void insert(Hyperplane plane, std::vector<std::uint32_t> subset);
  void insert_subsets_containing(const Polytope& p, std::size_t vertex);
  void insert_all(const Polytope& p);
  void compact();

  std::size_t dimension_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<Hyperplane, std::size_t, HyperplaneHash> index_;
  std::uint64_t examined_ = 0;
};

}  // namespace hopper
