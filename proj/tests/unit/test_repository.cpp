#include "hopper/errors.hpp"
#include "hopper/repository.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

using namespace hopper;
using namespace hopper::testing;

namespace {

RepositoryEntry entry_with(double value, std::string key = {}) {
  RepositoryEntry e;
  e.polytope = simplex(2);
  e.fitness.objective = "test";
  e.fitness.value = value;
  e.key = std::move(key);
  return e;
}

RepositoryConfig value_only(std::size_t max_size) {
  RepositoryConfig c;
  c.max_size = max_size;
  c.fitness_weight = 1;
  c.recency_weight = 0;
  c.failure_weight = 0;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / (name + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
}

HopSample sample_on_cube(HopLabel label, std::uint64_t defect) {
  auto snapshot = std::make_shared<HopSnapshot>();
  snapshot->polytope = cube(3);
  HopSample s;
  s.snapshot = snapshot;
  std::vector<RationalVector> pts;
  for (std::size_t i : {0, 1, 2}) pts.emplace_back(snapshot->polytope.vertex(i).begin(), snapshot->polytope.vertex(i).end());
  s.plane = hyperplane_through(pts);
  s.label = label;
  s.defect = defect;
  return s;
}

}  // namespace

TEST(Repository, InsertBelowCapacityKeepsEverything) {
  Repository repo(value_only(5));
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(repo.insert(entry_with(i)).accepted);
  EXPECT_EQ(repo.size(), 5u);
  EXPECT_EQ(repo.evictions(), 0u);
  EXPECT_DOUBLE_EQ(repo.best_value(), 4.0);
}

TEST(Repository, FullOfEqualsEvictsExactlyOne) {
  Repository repo(value_only(4));
  for (int i = 0; i < 4; ++i) repo.insert(entry_with(1.0));
  const InsertResult r = repo.insert(entry_with(1.0));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.evicted, 1u);
  EXPECT_EQ(repo.size(), 4u);
}

TEST(Repository, EmptyStoreHasNoBest) {
  Repository repo;
  EXPECT_FALSE(repo.best());
  EXPECT_EQ(repo.best_value(), -std::numeric_limits<double>::infinity());
  std::mt19937_64 rng(1);
  EXPECT_FALSE(repo.steal(rng));
}

TEST(Repository, EvictionFavoursLowImportance) {
  Repository repo(value_only(100));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::map<std::uint64_t, double> inserted;
  for (int i = 0; i < 10000; ++i) {
    const double v = value(rng);
    const InsertResult r = repo.insert(entry_with(v));
    ASSERT_TRUE(r.accepted);
    inserted[r.id] = v;
  }
  EXPECT_EQ(repo.size(), 100u);
  std::set<std::uint64_t> survivors;
  double survivor_mean = 0;
  for (const auto& e : repo.entries()) {
    survivors.insert(e.id);
    survivor_mean += e.fitness.value;
  }
  survivor_mean /= 100.0;
  double evicted_mean = 0;
  for (const auto& [id, v] : inserted)
    if (!survivors.count(id)) evicted_mean += v;
  evicted_mean /= static_cast<double>(inserted.size() - survivors.size());
  EXPECT_GE(survivor_mean, evicted_mean);
  EXPECT_GT(survivor_mean, 0.8);
}

TEST(Repository, BestIsNeverEvicted) {
  RepositoryConfig c = value_only(3);
  c.recency_weight = 10;  // new arrivals look far more important than the best
  Repository repo(c);
  repo.insert(entry_with(100.0));
  for (int i = 0; i < 500; ++i) repo.insert(entry_with(1.0));
  EXPECT_DOUBLE_EQ(repo.best_value(), 100.0);
}

TEST(Repository, StealDisabledByReadProbability) {
  RepositoryConfig c;
  c.p_read = 0;
  Repository repo(c);
  repo.insert(entry_with(1));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_FALSE(repo.steal(rng));
}

TEST(Repository, StealProportionalToImportance) {
  RepositoryConfig c = value_only(10);
  c.p_read = 1;
  Repository repo(c);
  const auto high = repo.insert(entry_with(3.0)).id;
  repo.insert(entry_with(1.0));
  std::mt19937_64 rng(7);
  int hits = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) hits += repo.steal(rng)->id == high;
  EXPECT_NEAR(static_cast<double>(hits) / draws, 0.75, 0.05);
}

TEST(Repository, FailuresLowerImportance) {
  RepositoryConfig c = value_only(10);
  c.failure_weight = 0.1;
  Repository repo(c);
  const auto id = repo.insert(entry_with(1.0)).id;
  const double before = repo.best()->importance;
  repo.record_failure(id);
  repo.record_failure(id);
  EXPECT_NEAR(repo.best()->importance, before - 0.2, 1e-12);
  EXPECT_EQ(repo.best()->failure_count, 2u);
}

TEST(Repository, DuplicateKeysReplaceOnlyWhenMoreImportant) {
  Repository repo(value_only(10));
  repo.insert(entry_with(2.0, "k"));
  repo.insert(entry_with(1.0, "other"));
  InsertResult worse = repo.insert(entry_with(1.5, "k"));
  EXPECT_TRUE(worse.duplicate);
  EXPECT_FALSE(worse.accepted);
  InsertResult better = repo.insert(entry_with(2.5, "k"));
  EXPECT_TRUE(better.duplicate);
  EXPECT_TRUE(better.accepted);
  EXPECT_EQ(repo.size(), 2u);
  EXPECT_DOUBLE_EQ(repo.best_value(), 2.5);
}

TEST(Repository, CombinatorialKeyIgnoresCoordinates) {
  const Polytope a = cube(3);
  Polytope b = a;
  for (std::size_t i = 0; i < b.size(); ++i) b.at(i, 0) *= Rational(3);
  EXPECT_EQ(combinatorial_key(facet_enumeration(a)), combinatorial_key(facet_enumeration(b)));
  EXPECT_NE(combinatorial_key(facet_enumeration(a)), combinatorial_key(facet_enumeration(cross_polytope(3))));
}

TEST(Repository, ConcurrentInsertsKeepTheBest) {
  Repository repo(value_only(64));
  std::atomic<long> max_seen{-1};
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      std::mt19937_64 rng(static_cast<std::uint64_t>(t));
      std::uniform_int_distribution<long> value(0, 1'000'000);
      for (int i = 0; i < 2000; ++i) {
        const long v = value(rng);
        const double before = repo.best_value();
        repo.insert(entry_with(static_cast<double>(v)));
        long prev = max_seen.load();
        while (v > prev && !max_seen.compare_exchange_weak(prev, v)) {
        }
        if (i % 7 == 0) repo.steal(rng);
        if (i % 11 == 0) repo.record_failure(static_cast<std::uint64_t>(i));
        ASSERT_GE(repo.best_value(), before);
      }
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(repo.size(), 64u);
  EXPECT_DOUBLE_EQ(repo.best_value(), static_cast<double>(max_seen.load()));
}

TEST(Repository, SnapshotRoundTrip) {
  Repository repo(value_only(10));
  RepositoryEntry e = entry_with(5.0, "a");
  e.polytope = cube(3);
  e.generation = 7;
  e.history = {{0, "test", 1.0}, {7, "test", 5.0}};
  e.ascension_generation = 7;
  repo.insert(e);
  repo.insert(entry_with(2.0, "b"));
  const auto path = temp_path("hopper-repo");
  repo.save(path);
  auto loaded = Repository::load(path, value_only(10));
  std::filesystem::remove(path);
  ASSERT_EQ(loaded->size(), 2u);
  const auto best = *loaded->best();
  EXPECT_EQ(best.polytope, cube(3));
  EXPECT_EQ(best.generation, 7u);
  EXPECT_EQ(best.history.size(), 2u);
  EXPECT_EQ(best.ascension_generation, std::optional<std::size_t>(7));
  EXPECT_EQ(best.key, "a");
  EXPECT_DOUBLE_EQ(best.fitness.value, 5.0);
}

TEST(Repository, LoadRejectsForeignFile) {
  const auto path = temp_path("hopper-bad");
  { std::ofstream(path) << "not a repository\n"; }
  EXPECT_THROW(Repository::load(path), Error);
  std::filesystem::remove(path);
}

TEST(Silo, StoresInOrder) {
  HopSilo silo(100);
  std::vector<HopSample> batch = {sample_on_cube(HopLabel::Success, 1), sample_on_cube(HopLabel::GeomRejected, 2),
                                  sample_on_cube(HopLabel::FeasibleNoSuccess, 3)};
  silo.append(batch);
  const auto out = silo.records();
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(out[i].label, batch[i].label);
    EXPECT_EQ(out[i].defect, batch[i].defect);
  }
  const auto counts = silo.label_counts();
  EXPECT_EQ(counts[0] + counts[1] + counts[2], 3u);
  EXPECT_EQ(silo.since(2).size(), 1u);
}

TEST(Silo, DropsOldestWhenFull) {
  HopSilo silo(10);
  for (std::uint64_t i = 0; i < 15; ++i) {
    const HopSample s = sample_on_cube(HopLabel::Success, i);
    silo.append(std::span(&s, 1));
  }
  EXPECT_EQ(silo.size(), 10u);
  EXPECT_EQ(silo.dropped(), 5u);
  EXPECT_EQ(silo.total_appended(), 15u);
  EXPECT_EQ(silo.records().front().defect, 5u);
  EXPECT_EQ(silo.since(12).size(), 3u);
}

TEST(Silo, ConcurrentAppendsLoseNothing) {
  HopSilo silo(1'000'000);
  std::vector<std::thread> workers;
  for (std::uint64_t t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      for (std::uint64_t i = 0; i < 500; ++i) {
        const HopSample s = sample_on_cube(HopLabel::FeasibleNoSuccess, t * 1000 + i);
        silo.append(std::span(&s, 1));
      }
    });
  }
  for (auto& w : workers) w.join();
  const auto all = silo.records();
  ASSERT_EQ(all.size(), 4000u);
  std::uint64_t sum = 0;
  for (const auto& s : all) sum += s.defect;
  std::uint64_t expected = 0;
  for (std::uint64_t t = 0; t < 8; ++t)
    for (std::uint64_t i = 0; i < 500; ++i) expected += t * 1000 + i;
  EXPECT_EQ(sum, expected);
}

TEST(Silo, FileRoundTrip) {
  const auto path = temp_path("hopper-silo");
  std::filesystem::remove(path);
  std::vector<HopSample> batch = {sample_on_cube(HopLabel::Success, 4), sample_on_cube(HopLabel::GeomRejected, 9)};
  {
    HopSilo silo(1, path);  // the file keeps everything even when memory drops it
    silo.append(batch);
  }
  const auto back = HopSilo::read_file(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].label, batch[i].label);
    EXPECT_EQ(back[i].defect, batch[i].defect);
    EXPECT_EQ(back[i].plane, batch[i].plane);
    EXPECT_EQ(back[i].snapshot->polytope, batch[i].snapshot->polytope);
    EXPECT_TRUE(verify_hop_sample(back[i]));
  }
}
