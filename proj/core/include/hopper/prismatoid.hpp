#pragma once

#include "hopper/combinatorics.hpp"
#include "hopper/hull.hpp"

#include <cstdint>
#include <optional>

namespace hopper {

enum class Deck { Top, Bottom };

/// A polytope with two parallel facets (decks) that together hold every
/// vertex. The top deck is the one whose outward normal is the canonical
/// orientation of the shared direction.
struct Prismatoid {
  Polytope polytope;
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;
  Hyperplane top_plane;
  Hyperplane bottom_plane;
  std::size_t top_facet = 0;  // index into the hull facets used for detection
  std::size_t bottom_facet = 0;
  bool ambiguous = false;  // more than one valid deck pair exists

  const std::vector<std::size_t>& deck(Deck which) const { return which == Deck::Top ? top : bottom; }
  const Hyperplane& plane(Deck which) const { return which == Deck::Top ? top_plane : bottom_plane; }
  /// Deck holding vertex i.
  Deck deck_of(std::size_t i) const;
};

/// Throws NotPrismatoid. The hull must be exact.
Prismatoid detect_prismatoid(const Polytope& p, const Hull& exact_hull);
Prismatoid detect_prismatoid(const Polytope& p);

/// Float-only structural test used to screen search candidates: every row
/// lies on one of the two given planes and each deck spans its plane.
bool keeps_prismatoid_structure(const Eigen::MatrixXd& rows, const Hyperplane& top_plane,
                                const Hyperplane& bottom_plane);

/// A prismatoid together with its hull and facet-ridge graph, computed once.
struct PrismatoidView {
  Prismatoid prismatoid;
  Hull hull;
  Graph ridges;
  std::vector<long> from_top;     // facet-ridge distances
  std::vector<long> from_bottom;

  std::size_t top_node() const { return prismatoid.top_facet; }
  std::size_t bottom_node() const { return prismatoid.bottom_facet; }
};

/// Exact by default. In float mode the decks are matched against the float
/// hull and deck planes are still exact.
PrismatoidView analyze_prismatoid(const Polytope& p, Arithmetic arithmetic = Arithmetic::Exact);
PrismatoidView analyze_prismatoid(const Polytope& p, Hull hull);

std::size_t width(const PrismatoidView& view);
std::size_t width(const Prismatoid& q);

/// Number of shortest paths between the two base facets.
std::uint64_t defect(const PrismatoidView& view);
std::uint64_t defect(const Prismatoid& q);

enum class PairConvention { ExcludeEqual, IncludeEqual };

/// Mean facet-ridge distance between neighbours of the bottom deck facet and
/// neighbours of the top deck facet.
double average_width(const PrismatoidView& view, PairConvention pairs = PairConvention::ExcludeEqual);

/// Simple top-to-bottom paths of exactly `length` edges, counted by a
/// distance-pruned search. Stops (and reports saturated) after
/// `expansion_cap` node expansions.
struct PathCount {
  std::uint64_t count = 0;
  bool saturated = false;
};
PathCount count_simple_paths(const PrismatoidView& view, std::size_t length,
                             std::uint64_t expansion_cap = 2'000'000);

/// Simple top-to-bottom paths of length width + 2.
PathCount long_path_count(const PrismatoidView& view, std::uint64_t expansion_cap = 2'000'000);

}  // namespace hopper
