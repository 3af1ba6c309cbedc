#include "hopper/arrangement.hpp"
#include "hopper/chebyshev.hpp"
#include "hopper/errors.hpp"
#include "hopper/hop_target.hpp"
#include "hopper/prismatoid.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hopper;
using namespace hopper::testing;

namespace {

std::vector<double> uniform(const ArrangementCache& c) { return std::vector<double>(c.size(), 1.0); }

std::vector<int> sign_vector(const ArrangementCache& cache, const Eigen::VectorXd& x) {
  std::vector<int> s;
  for (const auto& e : cache.entries()) {
    const double v = e.unit_normal.dot(x) - e.unit_offset;
    s.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
  }
  return s;
}

}  // namespace

TEST(HopTarget, UnitSquareClearance) {
  const ArrangementCache cache = ArrangementCache::build(cube(2));
  ASSERT_EQ(cache.size(), 6u);
  std::mt19937_64 rng(11);
  const Deadline deadline(std::chrono::seconds(10));
  const HopProposal p = construct_hop_target(cache, uniform(cache), nullptr, {}, {}, rng, deadline);
  EXPECT_GT(p.radius, 0);
  for (const auto& e : cache.entries())
    EXPECT_GE(std::abs(e.unit_normal.dot(p.target_float) - e.unit_offset), 0.8 * p.radius - 1e-12);
  EXPECT_GE(min_plane_distance(cache, p.target_float, nullptr), 0.8 * p.radius - 1e-12);
  for (const auto& c : p.region.constraints) EXPECT_TRUE(c.satisfied_by(p.target));
}

TEST(HopTarget, ParallelLinesGiveNoRegion) {
  const ArrangementCache cache = ArrangementCache::build(cube(2));
  std::vector<double> weights(cache.size(), 0.0);
  // Keep only the two horizontal sides y = 0 and y = 1.
  for (std::size_t i = 0; i < cache.size(); ++i)
    if (std::abs(cache[i].unit_normal(0)) < 1e-12) weights[i] = 1.0;
  ASSERT_EQ(std::count(weights.begin(), weights.end(), 1.0), 2);
  std::mt19937_64 rng(1);
  const Deadline deadline(std::chrono::seconds(10));
  EXPECT_THROW(construct_hop_target(cache, weights, nullptr, {}, {}, rng, deadline), NoRegionFound);
}

TEST(HopTarget, RegionsAreSingleCells) {
  const ArrangementCache cache = ArrangementCache::build(parse_polytope("3 2\n0 0\n4 0\n1 3\n"));
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  const Deadline deadline(std::chrono::seconds(60));
  for (int seed = 0; seed < 1000; ++seed) {
    rng.seed(static_cast<std::uint64_t>(seed));
    const HopProposal p = construct_hop_target(cache, uniform(cache), nullptr, {}, {}, rng, deadline);
    const auto centre = sign_vector(cache, p.target_float);
    ASSERT_EQ(std::count(centre.begin(), centre.end(), 0), 0);
    for (int k = 0; k < 16; ++k) {
      Eigen::Vector2d dir(normal(rng), normal(rng));
      const Eigen::VectorXd x = p.target_float + dir.normalized() * 0.79 * p.radius;
      ASSERT_EQ(sign_vector(cache, x), centre) << "seed " << seed;
    }
  }
}

TEST(HopTarget, DeckFlatKeepsTargetOnDeck) {
  const Prismatoid q = detect_prismatoid(triangular_prism());
  const ArrangementCache cache = ArrangementCache::build(q.polytope);
  const DeckFlat flat{Deck::Top, q.top_plane};
  const auto eligible = eligible_planes(cache, &flat);
  std::vector<double> w(cache.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = eligible[i] ? 1.0 : 0.0;
  const Deadline deadline(std::chrono::seconds(10));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const HopProposal p = construct_hop_target(cache, w, &flat, {}, {}, rng, deadline);
    EXPECT_EQ(q.top_plane.side(p.target), 0);
    ASSERT_TRUE(p.deck);
    EXPECT_EQ(*p.deck, Deck::Top);
    EXPECT_GE(min_plane_distance(cache, p.target_float, &flat), 0.8 * p.radius - 1e-12);
  }
}

TEST(HopTarget, IterationFuseTrips) {
  std::mt19937_64 rng(3);
  const Polytope p = random_sphere_points(10, 3, rng);
  const ArrangementCache cache = ArrangementCache::build(p);
  GuardConfig tight;
  tight.max_while_iterations = 1;
  tight.max_abs_coordinate = 1e-9;  // rejects every sampled region
  const Deadline deadline(std::chrono::seconds(10));
  RejectedRegions rejected;
  EXPECT_THROW(construct_hop_target(cache, uniform(cache), nullptr, tight, {}, rng, deadline, &rejected), NoRegionFound);
  EXPECT_EQ(rejected.size(), 1u);
}

TEST(HopTarget, ExpiredDeadlineTrips) {
  const ArrangementCache cache = ArrangementCache::build(cube(3));
  std::mt19937_64 rng(3);
  const Deadline deadline(std::chrono::milliseconds(0));
  EXPECT_THROW(construct_hop_target(cache, uniform(cache), nullptr, {}, {}, rng, deadline), FuseTripped);
}
