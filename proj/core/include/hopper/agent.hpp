#pragma once

#include "hopper/arrangement.hpp"
#include "hopper/candidates.hpp"
#include "hopper/hop_sample.hpp"
#include "hopper/hop_target.hpp"
#include "hopper/objectives.hpp"
#include "hopper/policy.hpp"
#include "hopper/rescale.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hopper {

/// A polytope being worked on, with everything derived from it that a step
/// can reuse.
struct AgentState {
  Polytope polytope;
  FitnessVector fitness;  // exact, under the active objective
  std::optional<ArrangementCache> cache;
  std::optional<DeckConstraint> decks;  // prismatoid searches only
};

/// Builds the state for p: exact fitness, arrangement and deck partition.
AgentState make_agent_state(Polytope p, const Objective& objective);
/// Recomputes the exact fitness after an objective switch.
void reevaluate(AgentState& state, const Objective& objective);

struct AgentConfig {
  HopMode mode = HopMode::Rigid;
  GuardConfig guards;
  HopTargetOptions target;
  std::size_t deletions = 1;
  std::size_t exact_confirmations = 3;  // float-ranked candidates checked exactly
  bool rescale = true;
  double rescale_tolerance = 2.0;  // whitening defect that triggers a rescale
  RescaleOptions rescale_options{RescaleMode::KeepLastCoordinate, 30};
};

/// Vertex additions need fewer shortest paths; deletions need more long
/// paths. Throws MissingMetric when the relevant counts are absent.
bool uptick_downtick_gate(const FitnessVector& before, const FitnessVector& after, CandidateKind kind);

struct StepResult {
  std::optional<AgentState> next;  // set when a candidate at least as good was accepted
  Hull hull;                       // exact hull of next->polytope
  bool improved = false;           // strictly better fitness
  CandidateKind kind = CandidateKind::Replace;
  bool rescaled = false;
  std::vector<HopSample> samples;
  std::string diagnostic;  // why nothing was accepted, when that happened
};

/// One hop: score planes, build a target cell, try candidates, keep the best
/// one whose exact fitness is not below the current one.
StepResult agent_step(const AgentState& state, const Objective& objective, PlaneScorer* scorer,
                      const AgentConfig& config, std::mt19937_64& rng);

}  // namespace hopper
