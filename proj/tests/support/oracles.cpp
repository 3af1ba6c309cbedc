#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace hopper::testing {

namespace {

// Normal of the hyperplane through the given points, or nullopt if they are
// affinely dependent. Null space of the difference matrix by elimination.
std::optional<RationalVector> normal_through(const std::vector<RationalVector>& pts) {
  const std::size_t d = pts[0].size();
  std::vector<RationalVector> m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = pts[i][j] - pts[0][j];
    m.push_back(row);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const Rational lead = m[r][c];
    for (auto& x : m[r]) x /= lead;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][c] == 0) continue;
      const Rational f = m[k][c];
      for (std::size_t j = 0; j < d; ++j) m[k][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (r != d - 1) return std::nullopt;
  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  RationalVector n(d, Rational(0));
  n[free_col] = 1;
  for (std::size_t k = 0; k < pivots.size(); ++k) n[pivots[k]] = -m[k][free_col];
  return n;
}

Rational dot(const RationalVector& a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

FacetSet brute_force_facets(const Polytope& p) {
  const std::size_t n = p.size(), d = p.dimension();
  FacetSet out;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      std::vector<RationalVector> pts;
      for (std::size_t i : idx) pts.emplace_back(p.vertex(i).begin(), p.vertex(i).end());
      auto normal = normal_through(pts);
      if (!normal) return;
      const Rational offset = dot(*normal, p.vertex(idx[0]));
      int sign = 0;
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < n; ++i) {
        const Rational s = dot(*normal, p.vertex(i)) - offset;
        if (s == 0) {
          on.push_back(i);
          continue;
        }
        const int si = s > 0 ? 1 : -1;
        if (sign == 0) sign = si;
        else if (sign != si) return;
      }
      if (sign != 0) out.insert(on);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::set<std::pair<std::size_t, std::size_t>> brute_force_edges(const Polytope& p) {
  const FacetSet facets = brute_force_facets(p);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      std::optional<std::vector<std::size_t>> common;
      for (const auto& f : facets) {
        if (!std::binary_search(f.begin(), f.end(), i) || !std::binary_search(f.begin(), f.end(), j)) continue;
        if (!common) {
          common = f;
        } else {
          std::vector<std::size_t> next;
          std::set_intersection(common->begin(), common->end(), f.begin(), f.end(), std::back_inserter(next));
          common = next;
        }
      }
      if (common && common->size() == 2) edges.insert({i, j});
    }
  }
  return edges;
}

std::size_t brute_force_monotone_length(const Polytope& p, const std::vector<double>& functional) {
  const auto edges = brute_force_edges(p);
  const Eigen::MatrixXd x = p.to_float();
  std::vector<double> value(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    value[i] = 0;
    for (std::size_t j = 0; j < p.dimension(); ++j) value[i] += functional[j] * x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::vector<std::vector<std::size_t>> up(p.size());
  for (auto [i, j] : edges) {
    if (value[i] < value[j]) up[i].push_back(j);
    else if (value[j] < value[i]) up[j].push_back(i);
  }
  std::size_t best = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t len) {
    best = std::max(best, len);
    for (std::size_t v : up[u]) dfs(v, len + 1);
  };
  for (std::size_t s = 0; s < p.size(); ++s) dfs(s, 0);
  return best;
}

Polytope random_integer_points(std::size_t n, std::size_t d, int range, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(-range, range);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < n * d; ++i) c.emplace_back(coord(rng));
  return Polytope(d, std::move(c));
}

Polytope random_sphere_points(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Rational> c;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d);
    double norm = 0;
    for (auto& v : x) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double v : x) c.push_back(snap_to_dyadic(v / norm, 16));
  }
  return Polytope(d, std::move(c));
}

Polytope cube(std::size_t d) {
  std::vector<Rational> c;
  for (std::size_t m = 0; m < (std::size_t{1} << d); ++m)
    for (std::size_t j = 0; j < d; ++j) c.emplace_back(static_cast<int>((m >> j) & 1));
  return Polytope(d, std::move(c));
}

Polytope simplex(std::size_t d) {
  std::vector<Rational> c(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c.emplace_back(i == j ? 1 : 0);
  return Polytope(d, std::move(c));
}

Polytope cross_polytope(std::size_t d) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1})
      for (std::size_t j = 0; j < d; ++j) c.emplace_back(i == j ? s : 0);
  return Polytope(d, std::move(c));
}

Polytope triangular_prism() {
  return parse_polytope("6 3\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 0 1\n0 1 1\n");
}

}  // namespace hopper::testing
