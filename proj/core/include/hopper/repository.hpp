#pragma once

#include "hopper/hop_sample.hpp"
#include "hopper/hull.hpp"
#include "hopper/objectives.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hopper {

struct HistoryPoint {
  std::size_t generation = 0;
  std::string objective;
  double value = 0;
};

struct RepositoryEntry {
  std::uint64_t id = 0;  // assigned on insert
  Polytope polytope;
  FitnessVector fitness;
  double importance = 0;
  std::size_t generation = 0;  // hops since seed
  std::vector<HistoryPoint> history;
  std::size_t failure_count = 0;
  std::optional<std::size_t> ascension_generation;
  std::string key;  // combinatorial identity; empty disables deduplication
  std::uint64_t inserted_at = 0;  // repository clock at insert
};

void to_json(nlohmann::json& j, const HistoryPoint& h);
void from_json(const nlohmann::json& j, HistoryPoint& h);

/// Facet-incidence identity: sorted facet vertex lists.
std::string combinatorial_key(const Hull& hull);

struct RepositoryConfig {
  std::size_t max_size = 512;
  std::size_t eviction_sample = 8;
  double p_read = 0.9;
  double fitness_weight = 1.0;
  double recency_weight = 0.5;
  double failure_weight = 0.05;
  double tau = 50;
  std::uint64_t seed = 0;  // eviction sampling
};

struct InsertResult {
  bool accepted = false;
  bool duplicate = false;  // matched an existing key
  std::uint64_t id = 0;
  std::size_t evicted = 0;
};

/// Importance-scored population store. A single lock makes every operation
/// linearizable; none costs more than O(size).
///
///   importance = w1 * value / max|value| + w2 * exp(-age / tau) - w3 * failures
///
/// where age counts inserts since the entry arrived. The entry with the
/// highest fitness value is never evicted.
class Repository {
 public:
  explicit Repository(RepositoryConfig config = {});

  InsertResult insert(RepositoryEntry entry);
  /// Copy of an entry drawn proportional to importance with probability
  /// p_read; nullopt asks the caller for a fresh seed.
  std::optional<RepositoryEntry> steal(std::mt19937_64& rng) const;
  void record_failure(std::uint64_t id);

  std::size_t size() const;
  std::optional<RepositoryEntry> best() const;
  double best_value() const;  // -inf when empty
  std::vector<RepositoryEntry> entries() const;  // importance refreshed, best first
  std::size_t evictions() const;
  const RepositoryConfig& config() const noexcept { return config_; }

  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<Repository> load(const std::filesystem::path& path, RepositoryConfig config = {});

 private:
  double importance_of(const RepositoryEntry& e) const;
  void refresh_best();
  void evict_one();

  RepositoryConfig config_;
  mutable std::mutex mutex_;
  std::vector<RepositoryEntry> store_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::size_t best_ = 0;
  double scale_ = 1;
  std::uint64_t clock_ = 0;
  std::uint64_t next_id_ = 1;
  std::size_t evictions_ = 0;
  std::mt19937_64 rng_;
};

/// Bounded FIFO of labelled hop samples; the oldest records are dropped
/// when full. Optionally mirrors every append to a length-prefixed file.
class HopSilo {
 public:
  explicit HopSilo(std::size_t capacity = 1'000'000, std::optional<std::filesystem::path> file = std::nullopt);

  void append(std::span<const HopSample> records);
  std::vector<HopSample> records() const;  // insertion order
  /// Records appended after the first `cursor` ever appended (for trainers).
  std::vector<HopSample> since(std::uint64_t cursor) const;

  std::size_t size() const;
  std::uint64_t total_appended() const;
  std::uint64_t dropped() const;
  std::array<std::uint64_t, 3> label_counts() const;  // over everything appended
  std::size_t capacity() const noexcept { return capacity_; }

  static std::vector<HopSample> read_file(const std::filesystem::path& path);

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::deque<HopSample> buffer_;
  std::uint64_t appended_ = 0;
  std::uint64_t dropped_ = 0;
  std::array<std::uint64_t, 3> labels_{};
  std::optional<std::ofstream> out_;
};

}  // namespace hopper
