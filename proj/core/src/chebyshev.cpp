#include "hopper/chebyshev.hpp"

#include "hopper/errors.hpp"
#include "hopper/simplex_lp.hpp"

#include <cmath>
#include <limits>

namespace hopper {
namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Affine chart of a flat: x = origin + basis * y.
struct Chart {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;
};

Chart chart_of(const Hyperplane* flat, std::size_t d) {
  Chart chart;
  if (flat == nullptr) {
    chart.origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    chart.basis = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    return chart;
  }
  const Eigen::VectorXd n = to_eigen(flat->unit_normal());
  chart.origin = n * flat->unit_offset();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(n.transpose(), Eigen::ComputeFullV);
  chart.basis = svd.matrixV().rightCols(static_cast<Eigen::Index>(d) - 1);
  return chart;
}

}  // namespace

Ball chebyshev_center(const Region& region) {
  if (region.constraints.empty()) throw Unbounded("region has no constraints");
  const std::size_t d = region.constraints.front().plane.dimension();
  const Hyperplane* flat = region.equality ? &*region.equality : nullptr;
  const Chart chart = chart_of(flat, d);
  const Eigen::Index k = chart.basis.cols();

  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (const auto& c : region.constraints) {
    auto [normal, offset] = c.as_float_le();
    const Eigen::VectorXd a = to_eigen(normal);
    Eigen::VectorXd reduced = chart.basis.transpose() * a;
    double beta = offset - a.dot(chart.origin);
    const double norm = reduced.norm();
    if (norm < 1e-12) {
      if (beta < -1e-12) throw Infeasible("constraint excludes the flat");
      continue;
    }
    rows.push_back(reduced / norm);
    rhs.push_back(beta / norm);
  }
  if (rows.empty()) throw Unbounded("no constraint cuts the flat");

  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd a(m + 1, k + 1);
  Eigen::VectorXd b(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.row(i).head(k) = rows[static_cast<std::size_t>(i)].transpose();
    a(i, k) = 1;
    b(i) = rhs[static_cast<std::size_t>(i)];
  }
  a.row(m).setZero();
  a(m, k) = -1;
  b(m) = 0;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(k + 1);
  cost(k) = 1;

  const LpSolution sol = solve_lp(a, b, cost);
  if (sol.status == LpStatus::Infeasible) throw Infeasible("empty region");
  if (sol.status == LpStatus::Unbounded) throw Unbounded("inscribed radius unbounded");
  Ball ball;
  ball.radius = sol.x(k);
  if (!(ball.radius > 1e-12)) throw Infeasible("region has empty interior");
  ball.center = chart.origin + chart.basis * sol.x.head(k);
  return ball;
}

double plane_distance(const Hyperplane& plane, const Eigen::VectorXd& x, const Hyperplane* flat) {
  Eigen::VectorXd n = to_eigen(plane.unit_normal());
  const double value = n.dot(x) - plane.unit_offset();
  if (flat != nullptr) {
    const Eigen::VectorXd f = to_eigen(flat->unit_normal());
    n -= f * f.dot(n);
  }
  const double norm = n.norm();
  if (norm < 1e-12) return std::numeric_limits<double>::infinity();
  return std::abs(value) / norm;
}

bool ball_inside_exact(const Region& region, const Eigen::VectorXd& center, double radius) {
  const std::size_t d = static_cast<std::size_t>(center.size());
  RationalVector c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = rational_from_double(center(static_cast<Eigen::Index>(j)));
  const Rational r = rational_from_double(radius);
  Eigen::VectorXd f;
  if (region.equality) f = to_eigen(region.equality->unit_normal());
  for (const auto& con : region.constraints) {
    // Slack in the constraint's own orientation.
    Rational slack = con.plane.evaluate(c);
    if (con.sense == Sense::LessEqual) slack = -slack;
    if (slack < 0) return false;
    // Squared in-flat normal length, exact for the ambient case.
    Rational norm2 = 0;
    if (!region.equality) {
      for (const auto& a : con.plane.normal) norm2 += Rational(a * a);
    } else {
      Rational full = 0;
      Rational along = 0;
      const auto& e = region.equality->normal;
      Rational ee = 0;
      for (std::size_t j = 0; j < d; ++j) {
        full += Rational(con.plane.normal[j] * con.plane.normal[j]);
        along += Rational(con.plane.normal[j] * e[j]);
        ee += Rational(e[j] * e[j]);
      }
      norm2 = full - along * along / ee;
    }
    if (slack * slack < r * r * norm2) return false;
  }
  return true;
}

}  // namespace hopper
