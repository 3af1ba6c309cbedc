#include "hopper/rescale.hpp"

#include "hopper/errors.hpp"

#include <cmath>

namespace hopper {
namespace {

Eigen::Index free_columns(const Polytope& p, RescaleMode mode) {
  const auto d = static_cast<Eigen::Index>(p.dimension());
  return mode == RescaleMode::Full ? d : d - 1;
}

}  // namespace

Polytope canonical_rescale(const Polytope& p, const RescaleOptions& options) {
  const Eigen::MatrixXd rows = p.to_float();
  const Eigen::Index k = free_columns(p, options.mode);
  const Eigen::MatrixXd block = rows.leftCols(k);
  const Eigen::RowVectorXd mean = block.colwise().mean();
  const Eigen::MatrixXd centered = block.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const auto& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-300) || ev.minCoeff() <= 1e-14 * ev.maxCoeff()) {
    throw DegenerateInput("vertex covariance is singular");
  }
  const Eigen::MatrixXd w = eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  const Eigen::MatrixXd mapped = centered * w;

  std::vector<Rational> coords;
  coords.reserve(p.size() * p.dimension());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(p.dimension()); ++j) {
      if (j < k) {
        const double x = mapped(static_cast<Eigen::Index>(i), j);
        coords.push_back(options.snap_bits > 0 ? snap_to_dyadic(x, options.snap_bits) : rational_from_double(x));
      } else {
        coords.push_back(p.at(i, static_cast<std::size_t>(j)));
      }
    }
  }
  return Polytope(p.dimension(), std::move(coords));
}

double whitening_defect(const Polytope& p, RescaleMode mode) {
  const Eigen::MatrixXd rows = p.to_float();
  const Eigen::Index k = free_columns(p, mode);
  const Eigen::MatrixXd block = rows.leftCols(k);
  const Eigen::RowVectorXd mean = block.colwise().mean();
  const Eigen::MatrixXd centered = block.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  double worst = mean.norm();
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double e = eig.eigenvalues()(i);
    if (!(e > 0)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(std::log(e)));
  }
  return worst;
}

}  // namespace hopper
