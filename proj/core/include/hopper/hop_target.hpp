#pragma once

#include "hopper/arrangement.hpp"
#include "hopper/chebyshev.hpp"
#include "hopper/prismatoid.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <span>

namespace hopper {

struct GuardConfig {
  double max_abs_coordinate = 1e6;
  double min_facet_angle = 1e-6;  // radians
  double max_aspect_ratio = 1e8;
  std::size_t max_while_iterations = 200;
  std::chrono::milliseconds per_step_timeout{30'000};
};

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget) : end_(std::chrono::steady_clock::now() + budget) {}
  bool expired() const { return std::chrono::steady_clock::now() >= end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

/// Restricts a hop to one deck plane of a prismatoid.
struct DeckFlat {
  Deck deck = Deck::Top;
  Hyperplane plane;
};

struct HopProposal {
  RationalVector target;         // exact, on the deck plane when one is set
  Eigen::VectorXd target_float;  // binary64 image of target
  double radius = 0;
  Region region;
  std::optional<Deck> deck;
  std::vector<std::size_t> source_planes;  // cache indices, one per region constraint
};

struct HopTargetOptions {
  double refine_factor = 0.8;
};

/// Sampled regions discarded by the guards, as cache indices.
using RejectedRegions = std::vector<std::vector<std::size_t>>;

/// Planes usable for hops: in deck mode, those not parallel to the deck.
std::vector<char> eligible_planes(const ArrangementCache& cache, const DeckFlat* flat);

/// Samples a simplex cell from the weighted arrangement and refines it until
/// no eligible plane passes within refine_factor * r of the center.
/// Throws NoRegionFound when the sampling budget runs out and FuseTripped
/// when refinement exceeds its iteration or time budget.
HopProposal construct_hop_target(const ArrangementCache& cache, std::span<const double> weights,
                                 const DeckFlat* flat, const GuardConfig& guards,
                                 const HopTargetOptions& options, std::mt19937_64& rng,
                                 const Deadline& deadline, RejectedRegions* rejected = nullptr);

/// Smallest float distance from x to an eligible plane (inside the flat).
double min_plane_distance(const ArrangementCache& cache, const Eigen::VectorXd& x, const DeckFlat* flat);

}  // namespace hopper
