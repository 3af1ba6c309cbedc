#pragma once

#include "hopper/hop_target.hpp"

#include <random>
#include <string>

namespace hopper {

enum class HopMode { Rigid, Flexible };
enum class CandidateKind { Replace, Add, Delete };

std::string to_string(HopMode m);
HopMode hop_mode_from_string(const std::string& name);

struct Candidate {
  Polytope polytope;
  CandidateKind kind = CandidateKind::Replace;
  std::size_t vertex = 0;  // replaced or deleted row; the new row for Add
  Hull float_hull;
};

/// Decks the candidates must keep, when the scenario is a prismatoid search.
struct DeckConstraint {
  Hyperplane top_plane;
  Hyperplane bottom_plane;
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;
};

struct GuardVerdict {
  bool ok = true;
  std::string reason;
};

/// Coordinate size, smallest angle between ridge-adjacent facets and
/// covariance aspect ratio.
GuardVerdict check_guards(const Eigen::MatrixXd& rows, const Hull& hull, const GuardConfig& guards);

/// Float screen: every row is a vertex of a full-dimensional hull, decks
/// survive, guards pass.
bool admissible(const Polytope& p, const DeckConstraint* decks, const GuardConfig& guards, Hull* hull_out = nullptr);

/// Same decision in exact arithmetic (guards still use binary64 angles).
bool admissible_exact(const Polytope& p, const DeckConstraint* decks, const GuardConfig& guards);

/// Replacement candidates for every eligible vertex (the proposal's deck in
/// prismatoid mode); in flexible mode also the added-target candidate and
/// `deletions` random single-vertex deletions. Only admissible ones return.
std::vector<Candidate> generate_candidates(const Polytope& p, const HopProposal& proposal, HopMode mode,
                                           const DeckConstraint* decks, const GuardConfig& guards,
                                           std::mt19937_64& rng, const Deadline& deadline,
                                           std::size_t deletions = 1);

}  // namespace hopper
