#include "hopper/cyclic.hpp"

#include <algorithm>
#include <set>

namespace hopper {

Polytope cyclic_polytope(std::size_t n, std::size_t d) {
  std::vector<Rational> coords;
  coords.reserve(n * d);
  for (std::size_t t = 1; t <= n; ++t) {
    Integer power = 1;
    for (std::size_t j = 0; j < d; ++j) {
      power *= static_cast<long>(t);
      coords.emplace_back(power);
    }
  }
  return Polytope(d, std::move(coords));
}

std::vector<std::vector<std::size_t>> gale_evenness_facets(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  if (d > n) return out;
  while (true) {
    std::vector<char> in(n, 0);
    for (auto i : idx) in[i] = 1;
    bool even = true;
    for (std::size_t a = 0; a < n && even; ++a) {
      if (in[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (in[b]) continue;
        std::size_t between = 0;
        for (std::size_t k = a + 1; k < b; ++k) between += in[k];
        if (between % 2 != 0) even = false;
        break;
      }
    }
    if (even) out.push_back(idx);
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

class Matcher {
 public:
  Matcher(std::size_t n, const std::vector<std::vector<std::size_t>>& a, const std::vector<std::vector<std::size_t>>& b)
      : n_(n), a_(a), pair_a_(pair_counts(n, a)), pair_b_(pair_counts(n, b)), map_(n, npos), used_(n, 0) {
    for (const auto& f : b) facets_b_.insert(f);
    facets_of_a_.resize(n);
    for (std::size_t f = 0; f < a.size(); ++f) {
      for (auto v : a[f]) facets_of_a_[v].push_back(f);
    }
  }

  bool run() { return extend(0); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static std::vector<std::vector<std::size_t>> pair_counts(std::size_t n, const std::vector<std::vector<std::size_t>>& fs) {
    std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n, 0));
    for (const auto& f : fs) {
      for (auto u : f) {
        for (auto v : f) ++c[u][v];
      }
    }
    return c;
  }

  bool consistent(std::size_t v) const {
    for (std::size_t u = 0; u <= v; ++u) {
      if (pair_a_[u][v] != pair_b_[map_[u]][map_[v]]) return false;
    }
    // Facets whose vertices are now all mapped must land on facets.
    for (auto f : facets_of_a_[v]) {
      const auto& facet = a_[f];
      if (facet.back() != v) continue;
      std::vector<std::size_t> image;
      image.reserve(facet.size());
      for (auto u : facet) image.push_back(map_[u]);
      std::sort(image.begin(), image.end());
      if (!facets_b_.count(image)) return false;
    }
    return true;
  }

  bool extend(std::size_t v) {
    if (v == n_) return true;
    for (std::size_t w = 0; w < n_; ++w) {
      if (used_[w]) continue;
      map_[v] = w;
      used_[w] = 1;
      if (consistent(v) && extend(v + 1)) return true;
      used_[w] = 0;
    }
    map_[v] = npos;
    return false;
  }

  std::size_t n_;
  const std::vector<std::vector<std::size_t>>& a_;
  std::vector<std::vector<std::size_t>> pair_a_;
  std::vector<std::vector<std::size_t>> pair_b_;
  std::vector<std::vector<std::size_t>> facets_of_a_;
  std::set<std::vector<std::size_t>> facets_b_;
  std::vector<std::size_t> map_;
  std::vector<char> used_;
};

}  // namespace

bool isomorphic_facet_systems(std::size_t n, const std::vector<std::vector<std::size_t>>& a,
                              const std::vector<std::vector<std::size_t>>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> sa;
  std::vector<std::size_t> sb;
  for (const auto& f : a) sa.push_back(f.size());
  for (const auto& f : b) sb.push_back(f.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<std::vector<std::size_t>> a_sorted = a;
  for (auto& f : a_sorted) std::sort(f.begin(), f.end());
  std::vector<std::vector<std::size_t>> b_sorted = b;
  for (auto& f : b_sorted) std::sort(f.begin(), f.end());
  return Matcher(n, a_sorted, b_sorted).run();
}

bool is_combinatorially_cyclic(const Hull& hull) {
  std::vector<std::vector<std::size_t>> facets;
  facets.reserve(hull.facets.size());
  for (const auto& f : hull.facets) facets.push_back(f.vertices);
  return isomorphic_facet_systems(hull.vertex_count, facets, gale_evenness_facets(hull.vertex_count, hull.dimension));
}

}  // namespace hopper
