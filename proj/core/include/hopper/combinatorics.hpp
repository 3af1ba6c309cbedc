#pragma once

#include "hopper/graph.hpp"
#include "hopper/hull.hpp"

namespace hopper {

/// Nodes are hull.facets (same order); two facets are adjacent iff they share
/// a ridge, i.e. their common vertices lie in no third facet and number at
/// least d-1.
Graph facet_ridge_graph(const Hull& hull);
Graph facet_ridge_graph(const Polytope& p, Arithmetic arithmetic = Arithmetic::Exact);

/// Nodes are the input rows; edges are the 1-dimensional faces.
Graph vertex_edge_graph(const Hull& hull);

/// Polar of p translated so its vertex centroid is the origin. Vertex i of
/// the result corresponds to facet i of the exact hull of p.
Polytope polar_dual(const Polytope& p);
Polytope polar_dual(const Polytope& p, const Hull& exact_hull);

/// Vertex centroid, exactly.
RationalVector vertex_centroid(const Polytope& p);

}  // namespace hopper
