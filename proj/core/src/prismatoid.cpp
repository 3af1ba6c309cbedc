#include "hopper/prismatoid.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopper {
namespace {

bool opposite(const Facet& a, const Facet& b, Arithmetic arithmetic) {
  if (arithmetic == Arithmetic::Exact) {
    const auto& na = a.exact->normal;
    const auto& nb = b.exact->normal;
    for (std::size_t j = 0; j < na.size(); ++j) {
      if (na[j] != -nb[j]) return false;
    }
    return true;
  }
  double dot = 0;
  for (std::size_t j = 0; j < a.normal.size(); ++j) dot += a.normal[j] * b.normal[j];
  return dot < -1 + kGeometryEpsilon;
}

// Outward normal agrees with the canonical orientation of its plane.
bool canonical_outward(const std::vector<double>& normal) {
  for (double x : normal) {
    if (std::abs(x) > kGeometryEpsilon) return x > 0;
  }
  return true;
}

// Exact plane through a vertex subset known to be coplanar in float.
Hyperplane plane_through_subset(const Polytope& p, const std::vector<std::size_t>& subset) {
  const std::size_t d = p.dimension();
  const Eigen::MatrixXd rows = p.to_float();
  std::vector<std::size_t> chosen{subset.front()};
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(d), 0);
  for (std::size_t i : subset) {
    if (chosen.size() == d) break;
    Eigen::VectorXd v = (rows.row(static_cast<Eigen::Index>(i)) - rows.row(static_cast<Eigen::Index>(chosen[0]))).transpose();
    Eigen::VectorXd r = v;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) r -= basis.col(k) * basis.col(k).dot(r);
    if (r.norm() > 1e-9 * std::max(1.0, v.norm())) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r.normalized();
      chosen.push_back(i);
    }
  }
  if (chosen.size() != d) throw NotPrismatoid("deck does not span a facet");
  std::vector<RationalVector> pts;
  for (std::size_t i : chosen) pts.emplace_back(p.vertex(i).begin(), p.vertex(i).end());
  Hyperplane h;
  try {
    h = hyperplane_through(pts);
  } catch (const AffinelyDependent&) {
    throw NotPrismatoid("deck does not span a facet");
  }
  for (std::size_t i : subset) {
    if (h.side(p.vertex(i)) != 0) throw NotPrismatoid("deck vertices are not coplanar");
  }
  return h;
}

}  // namespace

Deck Prismatoid::deck_of(std::size_t i) const {
  return std::binary_search(top.begin(), top.end(), i) ? Deck::Top : Deck::Bottom;
}

namespace {

Prismatoid detect(const Polytope& p, const Hull& hull) {
  const std::size_t n = p.size();
  Prismatoid q;
  bool found = false;
  for (std::size_t a = 0; a < hull.facets.size(); ++a) {
    for (std::size_t b = a + 1; b < hull.facets.size(); ++b) {
      const Facet& fa = hull.facets[a];
      const Facet& fb = hull.facets[b];
      if (fa.vertices.size() + fb.vertices.size() != n) continue;
      if (fa.incidence.intersects(fb.incidence)) continue;
      if (!opposite(fa, fb, hull.arithmetic)) continue;
      if (found) {
        q.ambiguous = true;
        return q;
      }
      found = true;
      const bool a_top = canonical_outward(fa.normal);
      q.top_facet = a_top ? a : b;
      q.bottom_facet = a_top ? b : a;
    }
  }
  if (!found) throw NotPrismatoid("no pair of parallel facets covers all vertices");
  return q;
}

}  // namespace

Prismatoid detect_prismatoid(const Polytope& p, const Hull& hull) {
  Prismatoid q = detect(p, hull);
  q.polytope = p;
  q.top = hull.facets[q.top_facet].vertices;
  q.bottom = hull.facets[q.bottom_facet].vertices;
  if (hull.arithmetic == Arithmetic::Exact) {
    q.top_plane = hull.facets[q.top_facet].plane();
    q.bottom_plane = hull.facets[q.bottom_facet].plane();
  } else {
    q.top_plane = plane_through_subset(p, q.top);
    q.bottom_plane = plane_through_subset(p, q.bottom);
    if (q.top_plane.normal != q.bottom_plane.normal) throw NotPrismatoid("decks are not parallel");
  }
  return q;
}

Prismatoid detect_prismatoid(const Polytope& p) { return detect_prismatoid(p, facet_enumeration(p, Arithmetic::Exact)); }

bool keeps_prismatoid_structure(const Eigen::MatrixXd& rows, const Hyperplane& top_plane,
                                const Hyperplane& bottom_plane) {
  const auto nt = top_plane.unit_normal();
  const auto nb = bottom_plane.unit_normal();
  const Eigen::Map<const Eigen::VectorXd> ut(nt.data(), static_cast<Eigen::Index>(nt.size()));
  const Eigen::Map<const Eigen::VectorXd> ub(nb.data(), static_cast<Eigen::Index>(nb.size()));
  const double bt = top_plane.unit_offset();
  const double bb = bottom_plane.unit_offset();
  std::vector<Eigen::Index> top;
  std::vector<Eigen::Index> bottom;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double scale = std::max(1.0, rows.row(i).cwiseAbs().maxCoeff());
    if (std::abs(rows.row(i).dot(ut) - bt) <= kGeometryEpsilon * scale) {
      top.push_back(i);
    } else if (std::abs(rows.row(i).dot(ub) - bb) <= kGeometryEpsilon * scale) {
      bottom.push_back(i);
    } else {
      return false;
    }
  }
  const Eigen::Index d = rows.cols();
  auto spans = [&](const std::vector<Eigen::Index>& deck) {
    if (static_cast<Eigen::Index>(deck.size()) < d) return false;
    Eigen::MatrixXd centered(static_cast<Eigen::Index>(deck.size()) - 1, d);
    for (std::size_t k = 1; k < deck.size(); ++k) {
      centered.row(static_cast<Eigen::Index>(k) - 1) = rows.row(deck[k]) - rows.row(deck[0]);
    }
    Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(centered);
    qr.setThreshold(kGeometryEpsilon);
    return qr.rank() == d - 1;
  };
  return spans(top) && spans(bottom);
}

PrismatoidView analyze_prismatoid(const Polytope& p, Arithmetic arithmetic) {
  return analyze_prismatoid(p, facet_enumeration(p, arithmetic));
}

PrismatoidView analyze_prismatoid(const Polytope& p, Hull hull) {
  PrismatoidView view;
  view.hull = std::move(hull);
  view.prismatoid = detect_prismatoid(p, view.hull);
  view.ridges = facet_ridge_graph(view.hull);
  view.from_top = bfs_distances(view.ridges, view.top_node());
  view.from_bottom = bfs_distances(view.ridges, view.bottom_node());
  return view;
}

std::size_t width(const PrismatoidView& view) {
  const long w = view.from_top[view.bottom_node()];
  if (w == kUnreachable) throw Disconnected("deck facets are not connected");
  return static_cast<std::size_t>(w);
}

std::size_t width(const Prismatoid& q) { return width(analyze_prismatoid(q.polytope)); }

std::uint64_t defect(const PrismatoidView& view) {
  return count_shortest_paths(view.ridges, view.top_node(), view.bottom_node()).count;
}

std::uint64_t defect(const Prismatoid& q) { return defect(analyze_prismatoid(q.polytope)); }

double average_width(const PrismatoidView& view, PairConvention pairs) {
  const auto& lower = view.ridges.neighbors(view.bottom_node());
  const auto& upper = view.ridges.neighbors(view.top_node());
  double total = 0;
  std::size_t count = 0;
  for (std::size_t u : lower) {
    const auto dist = bfs_distances(view.ridges, u);
    for (std::size_t v : upper) {
      if (u == v && pairs == PairConvention::ExcludeEqual) continue;
      if (dist[v] == kUnreachable) throw Disconnected("facet-ridge graph is disconnected");
      total += static_cast<double>(dist[v]);
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

PathCount count_simple_paths(const PrismatoidView& view, std::size_t length, std::uint64_t expansion_cap) {
  PathCount out;
  const Graph& g = view.ridges;
  const std::size_t target = view.bottom_node();
  std::vector<char> on_path(g.size(), 0);
  std::uint64_t expansions = 0;

  struct Frame {
    std::size_t node;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({view.top_node()});
  on_path[view.top_node()] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const std::size_t depth = stack.size() - 1;
    const auto& nb = g.neighbors(f.node);
    if (f.next == nb.size()) {
      on_path[f.node] = 0;
      stack.pop_back();
      continue;
    }
    const std::size_t w = nb[f.next++];
    if (on_path[w]) continue;
    const std::size_t remaining = length - depth - 1;
    const long to_target = view.from_bottom[w];
    if (to_target == kUnreachable || static_cast<std::size_t>(to_target) > remaining) continue;
    if (w == target) {
      if (remaining == 0) ++out.count;
      continue;
    }
    if (remaining == 0) continue;
    if (++expansions > expansion_cap) {
      out.saturated = true;
      break;
    }
    on_path[w] = 1;
    stack.push_back({w});
  }
  return out;
}

PathCount long_path_count(const PrismatoidView& view, std::uint64_t expansion_cap) {
  return count_simple_paths(view, width(view) + 2, expansion_cap);
}

}  // namespace hopper
