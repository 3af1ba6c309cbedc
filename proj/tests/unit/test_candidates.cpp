#include "hopper/agent.hpp"
#include "hopper/candidates.hpp"
#include "hopper/errors.hpp"
#include "hopper/prismatoid.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hopper;
using namespace hopper::testing;

namespace {

HopProposal proposal_at(RationalVector target, std::optional<Deck> deck = std::nullopt) {
  HopProposal p;
  p.target_float.resize(static_cast<Eigen::Index>(target.size()));
  for (std::size_t i = 0; i < target.size(); ++i) p.target_float(static_cast<Eigen::Index>(i)) = to_double(target[i]);
  p.target = std::move(target);
  p.radius = 0.1;
  p.deck = deck;
  return p;
}

const Deadline kForever(std::chrono::hours(1));

}  // namespace

TEST(Candidates, TriangleWithTargetBeyondAnEdge) {
  const Polytope t = parse_polytope("3 2\n0 0\n4 0\n1 3\n");
  std::mt19937_64 rng(1);
  const auto c = generate_candidates(t, proposal_at({Rational(2), Rational(-1)}), HopMode::Rigid, nullptr, {}, rng, kForever);
  EXPECT_EQ(c.size(), 3u);
  for (const auto& x : c) {
    EXPECT_EQ(x.kind, CandidateKind::Replace);
    EXPECT_EQ(x.polytope.size(), 3u);
  }
}

TEST(Candidates, InteriorTargetMatchesExhaustiveOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const Polytope p = random_sphere_points(8, 3, rng);
    if (!proper_spanning_check(p).ok) continue;
    // Centroid-ish interior point on a dyadic grid.
    RationalVector c(3, Rational(0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) c[j] += p.at(i, j) / 4;
    const auto got = generate_candidates(p, proposal_at(c), HopMode::Rigid, nullptr, {}, rng, kForever);
    std::size_t oracle = 0;
    for (std::size_t v = 0; v < p.size(); ++v) {
      const Polytope q = p.with_vertex_replaced(v, c);
      if (proper_spanning_check(q).ok) ++oracle;
    }
    EXPECT_EQ(got.size(), oracle) << seed;
  }
}

TEST(Candidates, FlexibleAddKeepsDecks) {
  const Prismatoid q = detect_prismatoid(triangular_prism());
  const DeckConstraint decks{q.top_plane, q.bottom_plane, q.top, q.bottom};
  // A point on the top deck plane beyond the triangle's long edge, so all
  // four deck points stay in convex position.
  RationalVector target(3);
  const Eigen::MatrixXd rows = q.polytope.to_float();
  const double z = rows(static_cast<Eigen::Index>(q.top[0]), 2);
  target = {Rational(3, 4), Rational(3, 4), rational_from_double(z)};
  std::mt19937_64 rng(2);
  const auto c = generate_candidates(q.polytope, proposal_at(target, Deck::Top), HopMode::Flexible, &decks, {}, rng, kForever);
  bool has_add = false;
  for (const auto& x : c) {
    EXPECT_TRUE(admissible_exact(x.polytope, &decks, {}));
    if (x.kind == CandidateKind::Add) {
      has_add = true;
      EXPECT_EQ(x.polytope.size(), 7u);
      const Prismatoid after = detect_prismatoid(x.polytope);
      EXPECT_EQ(after.top.size() + after.bottom.size(), 7u);
    }
    if (x.kind == CandidateKind::Replace) EXPECT_EQ(q.deck_of(x.vertex), Deck::Top);
  }
  EXPECT_TRUE(has_add);
}

TEST(Candidates, OffDeckCandidatesAreRejected) {
  const Prismatoid q = detect_prismatoid(triangular_prism());
  const DeckConstraint decks{q.top_plane, q.bottom_plane, q.top, q.bottom};
  const Polytope moved = q.polytope.with_vertex_replaced(q.top[0], RationalVector{Rational(0), Rational(0), Rational(1, 2)});
  EXPECT_FALSE(admissible(moved, &decks, {}));
  EXPECT_FALSE(admissible_exact(moved, &decks, {}));
}

TEST(Guards, CoordinateAndAspectLimits) {
  const Polytope big = parse_polytope("3 2\n0 0\n10000000 0\n0 1\n");
  const Hull h = convex_hull(big, Arithmetic::Float);
  EXPECT_FALSE(check_guards(big.to_float(), h, {}).ok);
  GuardConfig loose;
  loose.max_abs_coordinate = 1e9;
  loose.max_aspect_ratio = 1e12;
  loose.min_facet_angle = 1e-9;  // the long edges meet at about 1e-7 rad
  EXPECT_TRUE(check_guards(big.to_float(), h, loose).ok);
  const Polytope t = parse_polytope("3 2\n0 0\n1 0\n0 1\n");
  EXPECT_TRUE(check_guards(t.to_float(), convex_hull(t, Arithmetic::Float), {}).ok);
}

TEST(Gate, UptickNeedsFewerShortestPaths) {
  FitnessVector before, after;
  before.defect = 64;
  after.defect = 50;
  EXPECT_TRUE(uptick_downtick_gate(before, after, CandidateKind::Add));
  after.defect = 64;
  EXPECT_FALSE(uptick_downtick_gate(before, after, CandidateKind::Add));
  after.defect = 80;
  EXPECT_FALSE(uptick_downtick_gate(before, after, CandidateKind::Add));
  EXPECT_TRUE(uptick_downtick_gate(before, after, CandidateKind::Replace));
}

TEST(Gate, DowntickNeedsMoreLongPaths) {
  FitnessVector before, after;
  before.long_paths = 100;
  after.long_paths = 101;
  EXPECT_TRUE(uptick_downtick_gate(before, after, CandidateKind::Delete));
  after.long_paths = 100;
  EXPECT_FALSE(uptick_downtick_gate(before, after, CandidateKind::Delete));
}

TEST(Gate, MissingCountsThrow) {
  FitnessVector before, after;
  before.defect = 3;
  EXPECT_THROW(uptick_downtick_gate(before, after, CandidateKind::Add), MissingMetric);
  EXPECT_THROW(uptick_downtick_gate(before, after, CandidateKind::Delete), MissingMetric);
}
