#include "hopper/combinatorics.hpp"

#include "hopper/errors.hpp"

namespace hopper {

Graph facet_ridge_graph(const Hull& hull) {
  const std::size_t f = hull.facets.size();
  const std::size_t d = hull.dimension;
  Graph g(f);
  for (std::size_t a = 0; a < f; ++a) {
    const auto& fa = hull.facets[a].incidence;
    for (std::size_t b = a + 1; b < f; ++b) {
      VertexSet common = fa & hull.facets[b].incidence;
      if (common.count() + 1 < d) continue;
      // Any third facet containing the common face must contain its sparsest vertex.
      std::size_t pick = common.find_first();
      for (auto v = common.find_next(pick); v != VertexSet::npos; v = common.find_next(v)) {
        if (hull.facets_of_vertex[v].size() < hull.facets_of_vertex[pick].size()) pick = v;
      }
      bool ridge = true;
      for (auto h : hull.facets_of_vertex[pick]) {
        if (h != a && h != b && common.is_subset_of(hull.facets[h].incidence)) {
          ridge = false;
          break;
        }
      }
      if (ridge) g.add_edge(a, b);
    }
  }
  return g;
}

Graph facet_ridge_graph(const Polytope& p, Arithmetic arithmetic) {
  return facet_ridge_graph(facet_enumeration(p, arithmetic));
}

Graph vertex_edge_graph(const Hull& hull) {
  const std::size_t n = hull.vertex_count;
  Graph g(n);
  VertexSet pair(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair.reset();
      pair.set(i);
      pair.set(j);
      if (hull.is_face(pair)) g.add_edge(i, j);
    }
  }
  return g;
}

RationalVector vertex_centroid(const Polytope& p) {
  RationalVector c(p.dimension(), Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.dimension(); ++j) c[j] += p.at(i, j);
  }
  const Rational n(static_cast<long>(p.size()));
  for (auto& x : c) x /= n;
  return c;
}

Polytope polar_dual(const Polytope& p, const Hull& hull) {
  if (hull.arithmetic != Arithmetic::Exact) throw Error("polar_dual needs an exact hull");
  const RationalVector c = vertex_centroid(p);
  const std::size_t d = p.dimension();
  std::vector<Rational> coords;
  coords.reserve(hull.facets.size() * d);
  for (const auto& f : hull.facets) {
    Rational shifted = f.exact->offset;
    for (std::size_t j = 0; j < d; ++j) shifted -= Rational(f.exact->normal[j]) * c[j];
    if (shifted <= 0) throw DegenerateInput("centroid is not interior");
    for (std::size_t j = 0; j < d; ++j) coords.push_back(Rational(f.exact->normal[j]) / shifted);
  }
  return Polytope(d, std::move(coords));
}

Polytope polar_dual(const Polytope& p) { return polar_dual(p, facet_enumeration(p, Arithmetic::Exact)); }

}  // namespace hopper
