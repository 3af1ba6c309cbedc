#pragma once

#include "hopper/hyperplane.hpp"

#include <Eigen/Dense>

namespace hopper {

struct Ball {
  Eigen::VectorXd center;
  double radius = 0;
};

/// Largest ball inside the region, restricted to (and measured within) the
/// equality flat when one is present. Throws Infeasible when the region has
/// empty interior and Unbounded when the radius is unbounded.
Ball chebyshev_center(const Region& region);

/// Float distance from x to the plane, measured inside the flat when given.
/// Returns +inf for a plane parallel to the flat.
double plane_distance(const Hyperplane& plane, const Eigen::VectorXd& x, const Hyperplane* flat = nullptr);

/// Exact check that center (as exact binary rationals) satisfies every
/// constraint with slack at least radius times the in-flat normal length.
bool ball_inside_exact(const Region& region, const Eigen::VectorXd& center, double radius);

}  // namespace hopper
