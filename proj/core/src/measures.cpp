#include "hopper/measures.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hopper {
namespace {

// Calls visit(subset) for each k-subset of 0..n-1 in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::size_t> strict_order(const std::vector<Rational>& values,
                                      const std::vector<RationalVector>& tie_keys, TieBreak ties) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return tie_keys[a] < tie_keys[b];
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (values[order[i]] != values[order[i - 1]]) continue;
    if (ties == TieBreak::Error) throw NonGenericFunctional("two vertices share a functional value");
    if (tie_keys[order[i]] == tie_keys[order[i - 1]]) throw NonGenericFunctional("coincident vertices");
  }
  return order;
}

}  // namespace

Neighbourliness neighbourliness_fitness(const Hull& hull) {
  const std::size_t n = hull.vertex_count;
  Neighbourliness out;
  VertexSet s(n);
  for (std::size_t size = 1; size < n; ++size) {
    std::size_t faces = 0;
    std::size_t total = 0;
    for_each_subset(n, size, [&](const std::vector<std::size_t>& idx) {
      s.reset();
      for (auto i : idx) s.set(i);
      ++total;
      if (hull.is_face(s)) ++faces;
    });
    if (faces < total) {
      out.fraction = static_cast<double>(faces) / static_cast<double>(total);
      return out;
    }
    out.k = size;
  }
  out.fraction = 0;
  return out;
}

Neighbourliness neighbourliness_fitness(const Polytope& p) {
  return neighbourliness_fitness(facet_enumeration(p, Arithmetic::Exact));
}

std::size_t longest_increasing_path(const Graph& g, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  std::vector<std::size_t> best(order.size(), 0);
  std::size_t longest = 0;
  for (std::size_t v : order) {
    for (std::size_t u : g.neighbors(v)) {
      if (rank[u] < rank[v]) best[v] = std::max(best[v], best[u] + 1);
    }
    longest = std::max(longest, best[v]);
  }
  return longest;
}

std::size_t monotone_path_length(const Polytope& p, const RationalVector& functional, TieBreak ties) {
  const Hull hull = facet_enumeration(p, Arithmetic::Exact);
  std::vector<Rational> values(p.size());
  std::vector<RationalVector> keys(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < p.dimension(); ++j) v += functional[j] * p.at(i, j);
    values[i] = v;
    keys[i].assign(p.vertex(i).begin(), p.vertex(i).end());
  }
  return longest_increasing_path(vertex_edge_graph(hull), strict_order(values, keys, ties));
}

std::size_t dual_monotone_path_length(const Polytope& p, const Hull& hull, TieBreak ties) {
  if (hull.arithmetic != Arithmetic::Exact) throw Error("dual monotone length needs an exact hull");
  const RationalVector c = vertex_centroid(p);
  const std::size_t d = p.dimension();
  std::vector<Rational> values(hull.facets.size());
  std::vector<RationalVector> keys(hull.facets.size());
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    const Halfspace& h = *hull.facets[f].exact;
    Rational shifted = h.offset;
    for (std::size_t j = 0; j < d; ++j) shifted -= Rational(h.normal[j]) * c[j];
    keys[f].resize(d);
    for (std::size_t j = 0; j < d; ++j) keys[f][j] = Rational(h.normal[j]) / shifted;
    values[f] = keys[f][0];
  }
  return longest_increasing_path(facet_ridge_graph(hull), strict_order(values, keys, ties));
}

std::size_t dual_monotone_path_length(const Polytope& p, TieBreak ties) {
  return dual_monotone_path_length(p, facet_enumeration(p, Arithmetic::Exact), ties);
}

HirschGap hirsch_gap(const Polytope& p) {
  const Hull hull = facet_enumeration(p, Arithmetic::Exact);
  const long d = static_cast<long>(p.dimension());
  HirschGap out;
  out.facets = hull.facets.size();
  out.vertex_edge_diameter = graph_diameter(vertex_edge_graph(hull));
  const Graph ridges = facet_ridge_graph(hull);
  out.facet_ridge_diameter = graph_diameter(ridges);
  out.gap = static_cast<long>(out.vertex_edge_diameter) - (static_cast<long>(out.facets) - d);
  out.dual_gap = static_cast<long>(out.facet_ridge_diameter) - (static_cast<long>(p.size()) - d);
  try {
    const Prismatoid q = detect_prismatoid(p, hull);
    const long w = bfs_distances(ridges, q.top_facet)[q.bottom_facet];
    out.width_excess = w - d;
    if (w > d) out.implied_dimension = p.size() - p.dimension();
  } catch (const NotPrismatoid&) {
  }
  return out;
}

ScaleProfile pca_scale_profile(const Prismatoid& q) {
  const auto n = q.bottom_plane.unit_normal();
  const Eigen::Index d = static_cast<Eigen::Index>(n.size());
  const Eigen::Map<const Eigen::VectorXd> normal(n.data(), d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(normal.transpose(), Eigen::ComputeFullV);
  const Eigen::MatrixXd basis = svd.matrixV().rightCols(d - 1);
  const Eigen::MatrixXd rows = q.polytope.to_float();

  auto covariance = [&](const std::vector<std::size_t>& deck) {
    if (static_cast<Eigen::Index>(deck.size()) < d) throw DegenerateDeck("deck has too few vertices");
    Eigen::MatrixXd y(static_cast<Eigen::Index>(deck.size()), d - 1);
    for (std::size_t k = 0; k < deck.size(); ++k) {
      y.row(static_cast<Eigen::Index>(k)) = rows.row(static_cast<Eigen::Index>(deck[k])) * basis;
    }
    const Eigen::MatrixXd centered = y.rowwise() - y.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(deck.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const auto ev = eig.eigenvalues();
    if (ev.minCoeff() <= 1e-12 * std::max(1.0, ev.maxCoeff())) throw DegenerateDeck("deck is rank deficient");
    return cov;
  };

  const Eigen::MatrixXd top = covariance(q.top);
  const Eigen::MatrixXd bottom = covariance(q.bottom);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> gen(top, bottom);
  ScaleProfile out;
  out.eigen_min = gen.eigenvalues().minCoeff();
  out.eigen_max = gen.eigenvalues().maxCoeff();
  return out;
}

}  // namespace hopper
