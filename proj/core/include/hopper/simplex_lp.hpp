#pragma once

#include <Eigen/Dense>

namespace hopper {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0;
};

/// Dense two-phase simplex for
///   maximize c.x  subject to  A x <= b,  x free.
/// Free variables are split internally; Bland's rule is used on ties.
LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                    double epsilon = 1e-10);

}  // namespace hopper
