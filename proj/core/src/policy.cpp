#include "hopper/policy.hpp"

#include "hopper/line_socket.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <numeric>

namespace hopper {

PlaneDistribution uniform_distribution(std::size_t planes) {
  PlaneDistribution d;
  d.probabilities.assign(planes, planes == 0 ? 0.0 : 1.0 / static_cast<double>(planes));
  return d;
}

PlaneDistribution normalize_likelihoods(std::span<const double> likelihoods) {
  double total = 0;
  for (double x : likelihoods) {
    if (!std::isfinite(x) || x < 0) return uniform_distribution(likelihoods.size());
    total += x;
  }
  if (!(total > 0) || !std::isfinite(total)) return uniform_distribution(likelihoods.size());
  PlaneDistribution d;
  d.probabilities.reserve(likelihoods.size());
  for (double x : likelihoods) d.probabilities.push_back(x / total);
  return d;
}

namespace {

nlohmann::json rows_json(const Polytope& p, const std::vector<std::size_t>& rows) {
  auto out = nlohmann::json::array();
  for (std::size_t i : rows) {
    auto r = nlohmann::json::array();
    for (const auto& x : p.vertex(i)) r.push_back(to_double(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

nlohmann::json make_score_request(const ScoringRequest& request, std::uint64_t id, std::size_t begin, std::size_t end) {
  const Polytope& p = *request.polytope;
  std::vector<std::size_t> top = request.top;
  if (top.empty() && request.bottom.empty()) {
    top.resize(p.size());
    std::iota(top.begin(), top.end(), std::size_t{0});
  }
  const char* deck = !request.deck ? "none" : (*request.deck == Deck::Top ? "top" : "bottom");
  auto planes = nlohmann::json::array();
  for (std::size_t i = begin; i < end; ++i) {
    const auto& e = (*request.cache)[i];
    planes.push_back({{"normal", std::vector<double>(e.unit_normal.data(), e.unit_normal.data() + e.unit_normal.size())},
                      {"offset", e.unit_offset},
                      {"deck", deck}});
  }
  return {{"type", "SCORE_REQ"},
          {"id", id},
          {"d", p.dimension()},
          {"topVertices", rows_json(p, top)},
          {"bottomVertices", rows_json(p, request.bottom)},
          {"planes", std::move(planes)}};
}

struct BrainClient::Impl {
  LineSocket socket;
  std::uint64_t next_id = 1;
  std::size_t failures = 0;
  std::chrono::steady_clock::time_point suspended_until{};
};

BrainClient::BrainClient(PolicyEndpoint endpoint) : endpoint_(std::move(endpoint)), impl_(std::make_shared<Impl>()) {
  if (endpoint_.batch_size == 0) endpoint_.batch_size = 1;
}

std::size_t BrainClient::failures() const {
  std::lock_guard lock(mutex_);
  return impl_->failures;
}

void BrainClient::fail(const std::string& why) {
  impl_->socket.close();
  ++impl_->failures;
  impl_->suspended_until = std::chrono::steady_clock::now() + endpoint_.backoff;
  spdlog::warn("scoring service {} unavailable ({}); using uniform scores for {} ms", endpoint_.address, why,
               endpoint_.backoff.count());
}

std::optional<nlohmann::json> BrainClient::exchange(const nlohmann::json& message, const char* expected_type) {
  if (std::chrono::steady_clock::now() < impl_->suspended_until) return std::nullopt;
  if (!impl_->socket.is_open()) {
    try {
      impl_->socket = LineSocket::connect(endpoint_.address, endpoint_.timeout);
    } catch (const std::exception& e) {
      fail(e.what());
      return std::nullopt;
    }
  }
  if (!impl_->socket.send_line(message.dump(), endpoint_.timeout)) {
    fail("send failed");
    return std::nullopt;
  }
  auto line = impl_->socket.read_line(endpoint_.timeout);
  if (!line) {
    fail("no reply within timeout");
    return std::nullopt;
  }
  nlohmann::json reply = nlohmann::json::parse(*line, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || reply.value("type", std::string{}) != expected_type) {
    fail("unexpected reply");
    return std::nullopt;
  }
  return reply;
}

std::optional<std::vector<double>> BrainClient::likelihoods(const ScoringRequest& request) {
  std::lock_guard lock(mutex_);
  const std::size_t total = request.cache->size();
  std::vector<double> out;
  out.reserve(total);
  for (std::size_t begin = 0; begin < total; begin += endpoint_.batch_size) {
    const std::size_t end = std::min(total, begin + endpoint_.batch_size);
    const std::uint64_t id = impl_->next_id++;
    auto reply = exchange(make_score_request(request, id, begin, end), "SCORE_RESP");
    if (!reply) return std::nullopt;
    const auto it = reply->find("likelihoods");
    if (reply->value("id", std::uint64_t{0}) != id || it == reply->end() || !it->is_array() || it->size() != end - begin) {
      fail("mismatched SCORE_RESP");
      return std::nullopt;
    }
    for (const auto& x : *it) out.push_back(x.is_number() ? x.get<double>() : std::nan(""));
  }
  return out;
}

std::size_t BrainClient::train(std::span<const HopSample> samples) {
  std::lock_guard lock(mutex_);
  std::size_t acked = 0;
  constexpr std::size_t kChunk = 512;
  for (std::size_t begin = 0; begin < samples.size(); begin += kChunk) {
    const std::size_t end = std::min(samples.size(), begin + kChunk);
    auto body = nlohmann::json::array();
    for (std::size_t i = begin; i < end; ++i) body.push_back(to_wire_json(samples[i]));
    auto reply = exchange({{"type", "TRAIN"}, {"samples", std::move(body)}}, "ACK");
    if (!reply) break;
    acked += reply->value("count", std::size_t{0});
  }
  return acked;
}

PlaneDistribution score_hyperplanes(const ScoringRequest& request, PlaneScorer* scorer) {
  const std::size_t n = request.cache->size();
  if (scorer == nullptr) return uniform_distribution(n);
  auto raw = scorer->likelihoods(request);
  if (!raw || raw->size() != n) return uniform_distribution(n);
  return normalize_likelihoods(*raw);
}

}  // namespace hopper
