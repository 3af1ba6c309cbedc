#include "hopper/errors.hpp"
#include "hopper/prismatoid.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace hopper;
using namespace hopper::testing;

namespace {

Polytope data_prismatoid() { return read_polytope_file(HOPPER_DATA_DIR "/prismatoid_24.txt"); }

// Mean distance over neighbour pairs straight from BFS.
double brute_average_width(const PrismatoidView& v, bool include_equal) {
  const auto& a = v.ridges.neighbors(v.bottom_node());
  const auto& b = v.ridges.neighbors(v.top_node());
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t u : a) {
    const auto dist = bfs_distances(v.ridges, u);
    for (std::size_t w : b) {
      if (u == w && !include_equal) continue;
      total += static_cast<double>(dist[w]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

// Shortest top-to-bottom paths by exhaustive enumeration of simple paths.
std::uint64_t brute_defect(const PrismatoidView& v, std::size_t width) {
  std::uint64_t count = 0;
  std::vector<char> seen(v.ridges.size(), 0);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t len) {
    if (u == v.bottom_node()) {
      if (len == width) ++count;
      return;
    }
    if (len >= width) return;
    seen[u] = 1;
    for (std::size_t w : v.ridges.neighbors(u))
      if (!seen[w]) dfs(w, len + 1);
    seen[u] = 0;
  };
  dfs(v.top_node(), 0);
  return count;
}

}  // namespace

TEST(Prismatoid, DetectsDataDecks) {
  const Prismatoid q = detect_prismatoid(data_prismatoid());
  EXPECT_EQ(q.top.size(), 12u);
  EXPECT_EQ(q.bottom.size(), 12u);
  EXPECT_EQ(q.polytope.dimension(), 5u);
  for (std::size_t i : q.top) EXPECT_EQ(q.deck_of(i), Deck::Top);
}

TEST(Prismatoid, DataWidthIsSix) {
  const PrismatoidView v = analyze_prismatoid(data_prismatoid());
  EXPECT_EQ(width(v), 6u);
}

TEST(Prismatoid, DataDefectMatchesExhaustiveCount) {
  const PrismatoidView v = analyze_prismatoid(data_prismatoid());
  EXPECT_EQ(defect(v), brute_defect(v, width(v)));
}

TEST(Prismatoid, FloatAnalysisAgreesOnData) {
  const PrismatoidView exact = analyze_prismatoid(data_prismatoid());
  const PrismatoidView fl = analyze_prismatoid(data_prismatoid(), Arithmetic::Float);
  EXPECT_EQ(width(fl), width(exact));
  EXPECT_EQ(defect(fl), defect(exact));
}

TEST(Prismatoid, TriangularPrism) {
  const PrismatoidView v = analyze_prismatoid(triangular_prism());
  EXPECT_EQ(width(v), 2u);
  EXPECT_EQ(defect(v), 3u);
}

TEST(Prismatoid, CubeAverageWidthConventions) {
  const PrismatoidView v = analyze_prismatoid(cube(3));
  EXPECT_EQ(width(v), 2u);
  EXPECT_NEAR(average_width(v, PairConvention::ExcludeEqual), brute_average_width(v, false), 1e-12);
  EXPECT_NEAR(average_width(v, PairConvention::IncludeEqual), brute_average_width(v, true), 1e-12);
  EXPECT_NEAR(average_width(v, PairConvention::ExcludeEqual), 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(average_width(v, PairConvention::IncludeEqual), 1.0, 1e-12);
}

TEST(Prismatoid, SimplexIsNotAPrismatoid) {
  EXPECT_THROW(detect_prismatoid(simplex(3)), NotPrismatoid);
}

TEST(Prismatoid, OctahedronIsAnAntiprism) {
  const Prismatoid q = detect_prismatoid(cross_polytope(3));
  EXPECT_EQ(q.top.size(), 3u);
  EXPECT_EQ(q.bottom.size(), 3u);
}

TEST(Prismatoid, PathCountsAreConsistent) {
  const PrismatoidView v = analyze_prismatoid(data_prismatoid());
  const std::size_t w = width(v);
  EXPECT_EQ(count_simple_paths(v, w).count, defect(v));
  const PathCount longer = long_path_count(v);
  EXPECT_FALSE(longer.saturated);
  EXPECT_EQ(longer.count, count_simple_paths(v, w + 2).count);
  EXPECT_TRUE(count_simple_paths(v, w + 2, 10).saturated);
}

TEST(Prismatoid, StructureScreen) {
  const Prismatoid q = detect_prismatoid(triangular_prism());
  EXPECT_TRUE(keeps_prismatoid_structure(q.polytope.to_float(), q.top_plane, q.bottom_plane));
  Eigen::MatrixXd moved = q.polytope.to_float();
  moved(0, 2) = 0.5;
  EXPECT_FALSE(keeps_prismatoid_structure(moved, q.top_plane, q.bottom_plane));
}

TEST(Prismatoid, CubeIsAmbiguousWithFourShortestPaths) {
  const PrismatoidView v = analyze_prismatoid(cube(3));
  EXPECT_TRUE(v.prismatoid.ambiguous);
  EXPECT_EQ(defect(v), 4u);
}

TEST(Prismatoid, AverageWidthBoundedByWidthPlusTwo) {
  for (const Polytope& p : {cube(3), triangular_prism(), cube(4), data_prismatoid()}) {
    const PrismatoidView v = analyze_prismatoid(p);
    EXPECT_LE(average_width(v, PairConvention::IncludeEqual), static_cast<double>(width(v) + 2));
    EXPECT_LE(average_width(v, PairConvention::ExcludeEqual), static_cast<double>(width(v) + 2));
  }
  const PrismatoidView prism = analyze_prismatoid(triangular_prism());
  EXPECT_NEAR(average_width(prism, PairConvention::ExcludeEqual), brute_average_width(prism, false), 1e-12);
}
