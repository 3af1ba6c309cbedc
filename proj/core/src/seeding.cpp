#include "hopper/seeding.hpp"

#include "hopper/errors.hpp"
#include "hopper/hull.hpp"
#include "hopper/prismatoid.hpp"

#include <cmath>

namespace hopper {

namespace {

constexpr int kSnapBits = 20;
constexpr int kMaxRejections = 1000;

RationalVector sphere_point(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> x(dim);
  double norm = 0;
  do {
    norm = 0;
    for (auto& v : x) {
      v = normal(rng);
      norm += v * v;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  RationalVector out;
  out.reserve(dim);
  for (double v : x) out.push_back(snap_to_dyadic(v / norm, kSnapBits));
  return out;
}

bool valid_prismatoid(const Polytope& p, std::size_t top, std::size_t bottom) {
  try {
    const Hull hull = facet_enumeration(p, Arithmetic::Exact);
    const Prismatoid prism = detect_prismatoid(p, hull);
    return prism.top.size() + prism.bottom.size() == p.size() &&
           ((prism.top.size() == top && prism.bottom.size() == bottom) ||
            (prism.top.size() == bottom && prism.bottom.size() == top));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Polytope random_seed_polytope(const RunConfig& config, std::mt19937_64& rng) {
  const std::size_t d = config.dimension;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<RationalVector> rows;
    if (config.scenario == Scenario::Hirsch) {
      for (std::size_t i = 0; i < config.top_vertices + config.bottom_vertices; ++i) {
        RationalVector r = sphere_point(d - 1, rng);
        r.push_back(Rational(i < config.top_vertices ? 1 : -1));
        rows.push_back(std::move(r));
      }
      Polytope p = Polytope::from_rows(rows);
      if (valid_prismatoid(p, config.top_vertices, config.bottom_vertices)) return p;
    } else {
      for (std::size_t i = 0; i < config.vertices; ++i) rows.push_back(sphere_point(d, rng));
      Polytope p = Polytope::from_rows(rows);
      if (proper_spanning_check(p, Arithmetic::Exact).ok) return p;
    }
  }
  throw SeedingFailed("no valid seed polytope after " + std::to_string(kMaxRejections) + " attempts");
}

}  // namespace hopper
