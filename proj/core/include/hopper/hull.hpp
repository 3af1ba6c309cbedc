#pragma once

#include "hopper/hyperplane.hpp"
#include "hopper/polytope.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace hopper {

/// Binary64 is used for search-time pre-selection, exact rationals for every
/// final decision.
enum class Arithmetic { Exact, Float };

/// Tolerance for float sidedness tests (relative to row norms).
inline constexpr double kGeometryEpsilon = 1e-9;

using VertexSet = boost::dynamic_bitset<>;

VertexSet make_vertex_set(std::size_t n, const std::vector<std::size_t>& members);
std::vector<std::size_t> members_of(const VertexSet& s);

/// Outward facet inequality normal . x <= offset, primitive integers.
struct Halfspace {
  IntegerVector normal;
  Integer offset;
};

struct Facet {
  std::vector<std::size_t> vertices;  // sorted
  VertexSet incidence;
  std::vector<double> normal;  // outward, unit length
  double offset = 0;
  std::optional<Halfspace> exact;  // set in exact mode

  /// Canonical supporting hyperplane; exact mode only.
  Hyperplane plane() const;
};

/// Facets of conv(rows) together with vertex/facet incidences.
struct Hull {
  std::size_t dimension = 0;
  std::size_t vertex_count = 0;
  Arithmetic arithmetic = Arithmetic::Exact;
  std::vector<Facet> facets;  // ordered lexicographically by vertex list
  std::vector<std::vector<std::size_t>> facets_of_vertex;

  /// Intersection of all facets containing s (all vertices if none does).
  VertexSet closure(const VertexSet& s) const;
  /// True iff s is exactly the vertex set of a proper face.
  bool is_face(const VertexSet& s) const;
  /// Rows that are not vertices of the hull (interior, duplicated, or on a face).
  std::vector<std::size_t> non_vertices() const;
};

struct SpanningReport {
  bool ok = false;
  bool rank_deficient = false;
  std::size_t affine_rank = 0;
  std::vector<std::size_t> offending;  // rows that are not vertices
};

/// Hull of the rows without checking that every row is a vertex.
/// Throws DegenerateInput if the rows do not affinely span R^d.
Hull convex_hull(const Polytope& p, Arithmetic arithmetic = Arithmetic::Exact);

/// Facets of a valid polytope. Throws DegenerateInput if p is rank deficient
/// or some row is not a vertex.
Hull facet_enumeration(const Polytope& p, Arithmetic arithmetic = Arithmetic::Exact);

SpanningReport proper_spanning_check(const Polytope& p, Arithmetic arithmetic = Arithmetic::Exact);

/// Exact decision whether the vertices S span a proper face of p.
bool face_test(const Polytope& p, const std::vector<std::size_t>& s);
bool face_test(const Hull& hull, const std::vector<std::size_t>& s);

}  // namespace hopper
