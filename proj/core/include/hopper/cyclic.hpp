#pragma once

#include "hopper/hull.hpp"

namespace hopper {

/// Points (t, t^2, ..., t^d) for t = 1..n.
Polytope cyclic_polytope(std::size_t n, std::size_t d);

/// Facets of C(n, d) by Gale's evenness condition, each a sorted index list.
std::vector<std::vector<std::size_t>> gale_evenness_facets(std::size_t n, std::size_t d);

/// True iff the vertex-facet incidences of the hull are those of C(n, d) up
/// to relabelling of vertices.
bool is_combinatorially_cyclic(const Hull& hull);

/// Backtracking search for a vertex bijection mapping facets onto facets.
bool isomorphic_facet_systems(std::size_t n, const std::vector<std::vector<std::size_t>>& a,
                              const std::vector<std::vector<std::size_t>>& b);

}  // namespace hopper
