#include "hopper/arrangement.hpp"
#include "hopper/hull.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hopper;
using namespace hopper::testing;

TEST(Arrangement, SmallCounts) {
  EXPECT_EQ(ArrangementCache::build(parse_polytope("3 2\n0 0\n1 0\n0 1\n")).size(), 3u);
  EXPECT_EQ(ArrangementCache::build(parse_polytope("4 2\n0 0\n3 0\n0 2\n5 7\n")).size(), 6u);
  // Square: 4 sides plus 2 diagonals.
  EXPECT_EQ(ArrangementCache::build(parse_polytope("4 2\n0 0\n1 0\n0 1\n1 1\n")).size(), 6u);
  // Collinear triple spans one line, not three.
  EXPECT_EQ(ArrangementCache::build(parse_polytope("4 2\n0 0\n1 0\n2 0\n0 1\n")).size(), 4u);
}

TEST(Arrangement, ExaminesEverySubsetOfTheData) {
  const ArrangementCache cache = ArrangementCache::build(read_polytope_file(HOPPER_DATA_DIR "/prismatoid_24.txt"));
  EXPECT_EQ(cache.subsets_examined(), 42504u);  // C(24, 5)
  EXPECT_GT(cache.size(), 0u);
  EXPECT_LE(cache.size(), 42504u);
}

TEST(Arrangement, PlanesPassThroughTheirGenerators) {
  std::mt19937_64 rng(1);
  const Polytope p = random_sphere_points(9, 3, rng);
  const ArrangementCache cache = ArrangementCache::build(p);
  std::size_t generators = 0;
  for (const auto& e : cache.entries()) {
    ASSERT_FALSE(e.generators.empty());
    for (const auto& subset : e.generators) {
      ++generators;
      for (std::uint32_t v : subset) EXPECT_EQ(e.plane.side(p.vertex(v)), 0);
    }
    EXPECT_NEAR(e.unit_normal.norm(), 1.0, 1e-12);
    EXPECT_EQ(cache.find(e.plane), std::optional<std::size_t>(&e - cache.entries().data()));
  }
  EXPECT_EQ(generators, 84u);  // C(9, 3), generic points
}

TEST(Arrangement, IncrementalUpdatesMatchRebuild) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t d = 2 + seed % 3;
    Polytope p = random_integer_points(d + 3, d, 4, rng);
    ArrangementCache cache = ArrangementCache::build(p);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int step = 0; step < 8; ++step) {
      const int op = static_cast<int>(rng() % 3);
      RationalVector point;
      for (std::size_t j = 0; j < d; ++j) point.emplace_back(coord(rng));
      if (op == 0 || (op == 2 && p.size() <= d + 1)) {
        const std::size_t v = rng() % p.size();
        p = p.with_vertex_replaced(v, point);
        cache = cache.replaced(p, v);
      } else if (op == 1) {
        p = p.with_vertex_added(point);
        cache = cache.added(p);
      } else {
        const std::size_t v = rng() % p.size();
        p = p.without_vertex(v);
        cache = cache.removed(p, v);
      }
      ASSERT_TRUE(cache.same_planes(ArrangementCache::build(p))) << "seed " << seed << " step " << step;
    }
  }
}
