#pragma once

#include "hopper/arrangement.hpp"
#include "hopper/hop_sample.hpp"

#include <chrono>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hopper {

/// Probabilities aligned with an arrangement's plane order.
struct PlaneDistribution {
  std::vector<double> probabilities;
};

/// Normalizes likelihoods by their sum; any NaN, negative, infinite or
/// zero-sum input yields the uniform distribution.
PlaneDistribution normalize_likelihoods(std::span<const double> likelihoods);
PlaneDistribution uniform_distribution(std::size_t planes);

struct ScoringRequest {
  const Polytope* polytope = nullptr;
  std::vector<std::size_t> top;  // deck rows; both empty means "all rows, no decks"
  std::vector<std::size_t> bottom;
  const ArrangementCache* cache = nullptr;
  std::optional<Deck> deck;
};

class PlaneScorer {
 public:
  virtual ~PlaneScorer() = default;
  /// One likelihood per cache plane, or nullopt to fall back to uniform.
  virtual std::optional<std::vector<double>> likelihoods(const ScoringRequest& request) = 0;
  /// Forwards labelled samples for online training; returns the count acknowledged.
  virtual std::size_t train(std::span<const HopSample> samples) { return 0; }
  virtual std::string name() const = 0;
};

class UniformScorer final : public PlaneScorer {
 public:
  std::optional<std::vector<double>> likelihoods(const ScoringRequest&) override { return std::nullopt; }
  std::string name() const override { return "uniform"; }
};

struct PolicyEndpoint {
  std::string address;
  std::chrono::milliseconds timeout{1000};
  std::size_t batch_size = 256;
  std::chrono::milliseconds backoff{5000};
};

/// Newline-delimited JSON client for the scoring service:
///   {"type":"SCORE_REQ","id","d","topVertices","bottomVertices","planes":[{normal,offset,deck}]}
///   -> {"type":"SCORE_RESP","id","likelihoods":[...]}
///   {"type":"TRAIN","samples":[...]} -> {"type":"ACK","count"}
/// Any fault closes the connection, logs once and suspends the client for
/// the backoff interval; callers then see the uniform fallback.
class BrainClient final : public PlaneScorer {
 public:
  explicit BrainClient(PolicyEndpoint endpoint);

  std::optional<std::vector<double>> likelihoods(const ScoringRequest& request) override;
  std::size_t train(std::span<const HopSample> samples) override;
  std::string name() const override { return "brain:" + endpoint_.address; }

  std::size_t failures() const;
  const PolicyEndpoint& endpoint() const noexcept { return endpoint_; }

 private:
  struct Impl;
  std::optional<nlohmann::json> exchange(const nlohmann::json& message, const char* expected_type);
  void fail(const std::string& why);

  PolicyEndpoint endpoint_;
  mutable std::mutex mutex_;
  std::shared_ptr<Impl> impl_;
};

/// SCORE_REQ body for planes [begin, end) of the cache.
nlohmann::json make_score_request(const ScoringRequest& request, std::uint64_t id, std::size_t begin, std::size_t end);

PlaneDistribution score_hyperplanes(const ScoringRequest& request, PlaneScorer* scorer);

}  // namespace hopper
