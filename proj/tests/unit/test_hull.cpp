#include "hopper/errors.hpp"
#include "hopper/hull.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hopper;
using namespace hopper::testing;

namespace {

FacetSet facet_sets(const Hull& h) {
  FacetSet out;
  for (const auto& f : h.facets) out.insert(f.vertices);
  return out;
}

}  // namespace

TEST(Hull, CubeAndSimplexCounts) {
  for (std::size_t d = 2; d <= 5; ++d) {
    EXPECT_EQ(facet_enumeration(cube(d)).facets.size(), 2 * d);
    EXPECT_EQ(facet_enumeration(simplex(d)).facets.size(), d + 1);
    EXPECT_EQ(facet_enumeration(cross_polytope(d)).facets.size(), std::size_t{1} << d);
  }
}

TEST(Hull, MatchesBruteForceOracleOnRandomPoints) {
  std::size_t mismatches = 0, checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t d = 2 + seed % 3;
    const std::size_t n = d + 1 + seed % (10 - d);
    const Polytope p = random_integer_points(n, d, 3, rng);
    Hull h;
    try {
      h = convex_hull(p);
    } catch (const DegenerateInput&) {
      EXPECT_TRUE(brute_force_facets(p).empty()) << "seed " << seed;
      continue;
    }
    ++checked;
    if (facet_sets(h) != brute_force_facets(p)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0u);
  EXPECT_GT(checked, 80u);
}

TEST(Hull, FloatModeAgreesOnGenericPoints) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const Polytope p = random_sphere_points(9, 4, rng);
    EXPECT_EQ(facet_sets(convex_hull(p, Arithmetic::Float)), facet_sets(convex_hull(p))) << seed;
  }
}

TEST(Hull, ProperSpanningRejectsInteriorAndFlatInputs) {
  const Polytope square_with_centre = parse_polytope("5 2\n0 0\n2 0\n0 2\n2 2\n1 1\n");
  const SpanningReport r = proper_spanning_check(square_with_centre);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.offending, std::vector<std::size_t>{4});
  EXPECT_THROW(facet_enumeration(square_with_centre), DegenerateInput);

  const Polytope flat = parse_polytope("3 3\n0 0 0\n1 0 0\n0 1 0\n");
  EXPECT_TRUE(proper_spanning_check(flat).rank_deficient);
  EXPECT_THROW(convex_hull(flat), DegenerateInput);
}

TEST(Hull, EdgeMidpointIsNotAVertex) {
  const Polytope p = parse_polytope("4 2\n0 0\n2 0\n0 2\n1 0\n");
  EXPECT_EQ(proper_spanning_check(p).offending, std::vector<std::size_t>{3});
}

TEST(Hull, FaceTest) {
  const Polytope c = cube(3);
  EXPECT_TRUE(face_test(c, {0, 1}));
  EXPECT_FALSE(face_test(c, {0, 7}));
  EXPECT_TRUE(face_test(c, {0, 1, 2, 3}));
  EXPECT_FALSE(face_test(c, {0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Hull, IncidencesAreConsistent) {
  std::mt19937_64 rng(5);
  const Polytope p = random_sphere_points(12, 4, rng);
  const Hull h = facet_enumeration(p);
  for (std::size_t f = 0; f < h.facets.size(); ++f) {
    for (std::size_t v : h.facets[f].vertices) {
      const auto& of = h.facets_of_vertex[v];
      EXPECT_NE(std::find(of.begin(), of.end(), f), of.end());
    }
    EXPECT_GE(h.facets[f].vertices.size(), 4u);
  }
}
