#pragma once

#include "hopper/agent.hpp"
#include "hopper/objectives.hpp"
#include "hopper/policy.hpp"
#include "hopper/repository.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopper {

struct BrainConfig {
  std::string address;  // empty: uniform scoring
  std::chrono::milliseconds timeout{1000};
  std::size_t batch_size = 256;
  std::chrono::milliseconds backoff{5000};
  bool train = true;
};

struct OutputConfig {
  std::string report;    // run report JSON
  std::string snapshot;  // repository snapshot
  std::string silo;      // hop-sample file
};

struct RunConfig {
  Scenario scenario = Scenario::Hirsch;
  std::size_t dimension = 5;
  std::size_t vertices = 0;             // monotone / neighbourly
  std::size_t top_vertices = 12;        // hirsch
  std::size_t bottom_vertices = 12;
  HopMode mode = HopMode::Rigid;
  std::size_t agents = 1;
  std::size_t hop_budget = 1000;        // agent steps over the whole run
  double time_limit_seconds = 0;        // 0: no wall-clock limit
  std::uint64_t seed = 1;
  bool stop_on_first = false;
  std::size_t episode_patience = 25;    // failed steps before an agent steals again

  GuardConfig guards;
  HopTargetOptions target;
  std::size_t deletions = 1;
  std::size_t exact_confirmations = 3;
  bool rescale = true;
  double rescale_tolerance = 2.0;
  int snap_bits = 30;

  std::vector<std::string> objectives;  // empty: every objective of the scenario
  std::size_t stagnation_threshold = 25;
  std::size_t target_width = 6;
  std::vector<PathFormula> formulas = default_path_formulas();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> monotone_bounds = default_monotone_bounds();

  RepositoryConfig repository;
  std::size_t silo_capacity = 1'000'000;
  BrainConfig brain;
  OutputConfig output;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  ObjectiveSchedule schedule() const;
  AgentConfig agent_config() const;
};

/// Parses the JSON config; unknown keys are rejected so typos surface.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

/// Applies HOPPER_* variables: HOPPER_SEED=3, HOPPER_REPOSITORY__MAX_SIZE=64.
/// A double underscore separates nesting levels, names are lower-cased and
/// values are parsed as JSON, falling back to a plain string.
void apply_env_overrides(nlohmann::json& j, const std::map<std::string, std::string>& environment);
std::map<std::string, std::string> hopper_environment();

/// Reads the file, applies the process environment and validates.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace hopper
