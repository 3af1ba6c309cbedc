#include "hopper/errors.hpp"
#include "hopper/orchestrator.hpp"
#include "hopper/prismatoid.hpp"
#include "hopper/seeding.hpp"
#include "hopper/verify.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hopper;
using namespace hopper::testing;

namespace {

RunConfig small_config(Scenario s, std::size_t budget) {
  RunConfig c;
  c.scenario = s;
  c.hop_budget = budget;
  c.seed = 5;
  c.silo_capacity = 100'000;
  if (s == Scenario::Hirsch) {
    c.dimension = 4;
    c.top_vertices = 5;
    c.bottom_vertices = 5;
    c.mode = HopMode::Flexible;
  } else {
    c.dimension = s == Scenario::Monotone ? 4 : 6;
    c.vertices = s == Scenario::Monotone ? 8 : 10;
  }
  return c;
}

}  // namespace

TEST(Seeding, HirschSeedIsPrismatoid) {
  RunConfig c;
  std::mt19937_64 rng(1);
  const Polytope p = random_seed_polytope(c, rng);
  EXPECT_EQ(p.size(), 24u);
  EXPECT_EQ(p.dimension(), 5u);
  const Hull hull = facet_enumeration(p);
  const Prismatoid prism = detect_prismatoid(p, hull);
  EXPECT_EQ(prism.top.size(), 12u);
  EXPECT_EQ(prism.bottom.size(), 12u);
}

TEST(Seeding, GeneralSeedsAreProper) {
  RunConfig c;
  c.scenario = Scenario::Monotone;
  c.vertices = 9;
  std::mt19937_64 rng(2);
  const Polytope p = random_seed_polytope(c, rng);
  EXPECT_EQ(p.size(), 9u);
  EXPECT_TRUE(proper_spanning_check(p).ok);
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(random_seed_polytope(c, a), random_seed_polytope(c, b));
}

TEST(Seeding, ImpossibleRequestFails) {
  RunConfig c;
  c.dimension = 2;
  c.top_vertices = 3;  // three points on a 0-sphere always repeat
  c.bottom_vertices = 1;
  std::mt19937_64 rng(1);
  EXPECT_THROW(random_seed_polytope(c, rng), SeedingFailed);
}

TEST(Orchestrator, ZeroBudgetReportsSeeds) {
  RunConfig c = small_config(Scenario::Neighbourly, 0);
  c.agents = 2;
  const RunResult r = run_scenario(c);
  EXPECT_EQ(r.report.steps, 0u);
  ASSERT_EQ(r.report.seeds.size(), 2u);
  ASSERT_TRUE(r.report.best);
  const double best_seed = std::max(r.report.seeds[0].fitness.value, r.report.seeds[1].fitness.value);
  EXPECT_DOUBLE_EQ(r.report.best->value, best_seed);
  EXPECT_EQ(r.report.stop_reason, "budget");
}

TEST(Orchestrator, SingleAgentRunsAreDeterministic) {
  const RunConfig c = small_config(Scenario::Hirsch, 15);
  const auto a = to_json(run_scenario(c).report);
  const auto b = to_json(run_scenario(c).report);
  EXPECT_EQ(a, b);
}

TEST(Orchestrator, NeighbourlySearchBeatsSeeds) {
  RunConfig c = small_config(Scenario::Neighbourly, 1000);
  c.agents = 2;
  const RunResult r = run_scenario(c);
  EXPECT_EQ(r.report.steps, 1000u);
  ASSERT_TRUE(r.report.best);
  EXPECT_GT(r.report.best->value, r.report.mean_seed_value);
  EXPECT_EQ(r.repository->best_value(), r.report.best->value);
}

TEST(Orchestrator, HirschRunSamplesVerify) {
  const RunConfig c = small_config(Scenario::Hirsch, 20);
  const RunResult r = run_scenario(c);
  EXPECT_GT(r.silo->total_appended(), 0u);
  EXPECT_EQ(r.report.samples_checked, r.report.samples_verified);
  EXPECT_EQ(r.report.sample_counts[0] + r.report.sample_counts[1] + r.report.sample_counts[2], r.silo->total_appended());
  // The best polytope in the report is the one in the repository.
  EXPECT_EQ(parse_polytope(r.report.best_polytope), r.repository->best()->polytope);
  EXPECT_DOUBLE_EQ(evaluate(r.repository->best()->polytope, c.schedule().objectives[0]).width.value_or(0),
                   static_cast<double>(r.report.best->width.value_or(0)));
}

TEST(Orchestrator, HookStopsEarly) {
  const RunConfig c = small_config(Scenario::Monotone, 500);
  RunHooks hooks;
  hooks.stop = [](const Repository& repo, const HopSilo&) { return repo.size() >= 1; };
  const RunResult r = run_scenario(c, nullptr, hooks);
  EXPECT_EQ(r.report.stop_reason, "hook");
  EXPECT_LT(r.report.steps, 500u);
}

TEST(Orchestrator, ReportJsonRoundTrip) {
  const RunResult r = run_scenario(small_config(Scenario::Monotone, 10));
  const auto j = to_json(r.report);
  EXPECT_EQ(to_json(run_report_from_json(j)), j);
  EXPECT_FALSE(summarize(r.report).empty());
  const std::string svg = trajectory_svg(r.report);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Verify, DataPrismatoid) {
  const auto report = verify_file(HOPPER_DATA_DIR "/prismatoid_24.txt");
  EXPECT_TRUE(report.at("properSpanning").get<bool>());
  EXPECT_TRUE(report.at("isPrismatoid").get<bool>());
  EXPECT_EQ(report.at("decks"), nlohmann::json({12, 12}));
  EXPECT_EQ(report.at("width"), 6);
  EXPECT_EQ(report.at("facets"), 307);
  EXPECT_EQ(report.at("impliedDimension"), 19);
  EXPECT_FALSE(format_verification(report).empty());
}

TEST(Verify, CubeReport) {
  const auto report = verification_report(cube(3));
  EXPECT_EQ(report.at("facets"), 6);
  EXPECT_EQ(report.at("vertexEdgeDiameter"), 3);
  EXPECT_EQ(report.at("facetRidgeDiameter"), 2);
  EXPECT_EQ(report.at("hirschGap"), 0);
  EXPECT_EQ(report.at("width"), 2);
}

TEST(Verify, DefectMatchesExhaustiveCount) {
  const auto report = verification_report(triangular_prism());
  EXPECT_EQ(report.at("width"), 2);
  EXPECT_EQ(report.at("defect"), 3);
  const auto pca = pca_report(triangular_prism());
  EXPECT_GT(pca.at("eigenMax").get<double>(), 0);
}
