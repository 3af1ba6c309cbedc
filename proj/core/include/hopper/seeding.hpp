#pragma once

#include "hopper/config.hpp"
#include "hopper/polytope.hpp"

#include <random>

namespace hopper {

/// Random starting polytope for the configured scenario.
///   hirsch: deck points on the unit (d-2)-sphere at last coordinate +1 and -1
///   monotone, neighbourly: points on the unit sphere in R^d
/// Coordinates are snapped to 2^-20. Each draw is checked exactly and
/// redrawn on failure; throws SeedingFailed after 1000 rejections.
Polytope random_seed_polytope(const RunConfig& config, std::mt19937_64& rng);

}  // namespace hopper
