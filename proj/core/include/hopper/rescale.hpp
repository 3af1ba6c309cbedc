#pragma once

#include "hopper/polytope.hpp"

namespace hopper {

enum class RescaleMode {
  Full,                // whiten all coordinates
  KeepLastCoordinate,  // whiten the first d-1 coordinates, keep deck heights
};

struct RescaleOptions {
  RescaleMode mode = RescaleMode::Full;
  int snap_bits = 30;  // output grid 2^-snap_bits; 0 keeps the exact doubles
};

/// Affine whitening (vertex covariance becomes the identity) followed by
/// snapping to a dyadic grid. Throws DegenerateInput on a singular
/// covariance. Snapping can in principle alter the combinatorial type;
/// callers that need the type preserved must compare hulls.
Polytope canonical_rescale(const Polytope& p, const RescaleOptions& options = {});

/// Largest deviation of the whitened-coordinate covariance from identity,
/// as max(|log eigenvalue|), plus the centroid norm.
double whitening_defect(const Polytope& p, RescaleMode mode);

}  // namespace hopper
