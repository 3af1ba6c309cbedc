#pragma once

#include "hopper/config.hpp"
#include "hopper/repository.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hopper {

struct TrajectoryPoint {
  std::size_t step = 0;  // global step index
  std::size_t agent = 0;
  std::size_t generation = 0;
  std::size_t vertices = 0;
  std::size_t top = 0;  // deck sizes, zero outside prismatoid searches
  std::size_t bottom = 0;
  std::string objective;
  double value = 0;
  double headline = 0;
};

struct AscensionEvent {
  std::size_t step = 0;
  std::size_t agent = 0;
  std::size_t generation = 0;
  FitnessVector fitness;
  std::string polytope;  // text format
};

struct SeedRecord {
  std::size_t agent = 0;
  FitnessVector fitness;
};

struct RunReport {
  std::string scenario;
  std::string mode;
  std::size_t dimension = 0;
  std::size_t agents = 0;
  std::uint64_t seed = 0;
  std::size_t hop_budget = 0;

  std::size_t steps = 0;
  std::size_t improvements = 0;
  std::size_t lateral_moves = 0;
  std::size_t rescales = 0;
  std::size_t objective_switches = 0;
  std::size_t steals = 0;
  std::size_t fresh_seeds = 0;
  std::map<std::string, std::size_t> diagnostics;

  std::vector<SeedRecord> seeds;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<AscensionEvent> ascensions;

  std::optional<FitnessVector> best;
  std::string best_polytope;
  double mean_seed_value = 0;

  std::array<std::uint64_t, 3> sample_counts{};  // success, geomRejected, feasibleNoSuccess
  std::uint64_t samples_dropped = 0;
  std::uint64_t samples_checked = 0;
  std::uint64_t samples_verified = 0;

  std::size_t repository_size = 0;
  std::size_t evictions = 0;
  std::string stop_reason;  // budget, first-success, time-limit, hook
};

nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& j);
/// Short human-readable digest.
std::string summarize(const RunReport& report);

struct RunHooks {
  /// Polled after every step; returning true ends the run.
  std::function<bool(const Repository&, const HopSilo&)> stop;
};

struct RunResult {
  RunReport report;
  std::unique_ptr<Repository> repository;
  std::unique_ptr<HopSilo> silo;
};

/// Runs config.agents workers, each looping steal, hop, insert until the
/// hop budget, the time limit, a hook or (optionally) the first target hit.
/// `scorer` overrides the configured brain endpoint.
RunResult run_scenario(const RunConfig& config, PlaneScorer* scorer = nullptr, const RunHooks& hooks = {});

}  // namespace hopper
