#pragma once

#include "hopper/hyperplane.hpp"
#include "hopper/prismatoid.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace hopper {

enum class HopLabel { Success, GeomRejected, FeasibleNoSuccess };

std::string to_string(HopLabel label);
HopLabel hop_label_from_string(const std::string& name);
/// One-hot index used by the scoring service: success, rejected, feasible.
int label_index(HopLabel label);

/// Polytope state a batch of samples refers to.
struct HopSnapshot {
  Polytope polytope;
  std::vector<std::size_t> top;  // deck partition, empty outside prismatoid searches
  std::vector<std::size_t> bottom;
  std::uint64_t defect = 0;
};

struct HopSample {
  std::shared_ptr<const HopSnapshot> snapshot;
  Hyperplane plane;
  std::optional<Deck> deck;
  HopLabel label = HopLabel::FeasibleNoSuccess;
  std::uint64_t defect = 0;
};

/// Outcome of one hop attempt, reduced to the three training classes.
struct HopOutcome {
  bool region_rejected = false;      // guards discarded the region
  bool had_admissible = false;       // some candidate passed admissibility
  bool improved = false;             // winner strictly raised the fitness
};

HopLabel label_hop(const HopOutcome& outcome);

/// Exact rationals are written as strings so samples round-trip losslessly.
nlohmann::json to_json(const HopSample& sample);
HopSample hop_sample_from_json(const nlohmann::json& j);

/// Float view sent over the wire to the scoring service.
nlohmann::json to_wire_json(const HopSample& sample);

}  // namespace hopper

namespace hopper {

/// Exact re-check of a stored sample: the plane passes through d affinely
/// independent snapshot vertices and the deck partition covers every row once.
bool verify_hop_sample(const HopSample& sample);

}  // namespace hopper
