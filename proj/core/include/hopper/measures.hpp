#pragma once

#include "hopper/prismatoid.hpp"

#include <optional>

namespace hopper {

struct Neighbourliness {
  std::size_t k = 0;      // every set of at most k vertices is a proper face
  double fraction = 0;    // share of (k+1)-sets that are proper faces
  double score() const { return static_cast<double>(k) + fraction; }
};

/// k is at most n-1: the full vertex set is never a proper face.
Neighbourliness neighbourliness_fitness(const Hull& hull);
Neighbourliness neighbourliness_fitness(const Polytope& p);

enum class TieBreak { Error, Lexicographic };

/// Longest path (in edges) of the vertex-edge graph oriented by increasing
/// c . v. Ties raise NonGenericFunctional unless broken lexicographically by
/// coordinates.
std::size_t monotone_path_length(const Polytope& p, const RationalVector& functional,
                                 TieBreak ties = TieBreak::Error);

/// Longest DAG path given node values and the undirected graph; values must
/// be strictly ordered along `order`.
std::size_t longest_increasing_path(const Graph& g, const std::vector<std::size_t>& order);

/// Longest monotone path of the polar dual (taken about the vertex centroid)
/// for the first-coordinate functional, computed from the exact hull of p
/// without building the dual.
std::size_t dual_monotone_path_length(const Polytope& p, const Hull& exact_hull, TieBreak ties = TieBreak::Error);
std::size_t dual_monotone_path_length(const Polytope& p, TieBreak ties = TieBreak::Error);

struct HirschGap {
  std::size_t facets = 0;
  std::size_t vertex_edge_diameter = 0;
  std::size_t facet_ridge_diameter = 0;
  long gap = 0;        // vertex_edge_diameter - (facets - d)
  long dual_gap = 0;   // facet_ridge_diameter - (vertices - d)
  std::optional<long> width_excess;             // width - d, prismatoids only
  std::optional<std::size_t> implied_dimension;  // vertices - d when width_excess > 0
};

HirschGap hirsch_gap(const Polytope& p);

struct ScaleProfile {
  double eigen_min = 0;
  double eigen_max = 0;
  double ratio() const { return eigen_max / eigen_min; }
};

/// Whitens the bottom deck inside its plane and reports the extreme
/// covariance eigenvalues of the top deck under the same map.
ScaleProfile pca_scale_profile(const Prismatoid& q);

}  // namespace hopper
