#include "hopper/hop_target.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopper {
namespace {

struct Chart {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;  // d x k, orthonormal columns
  Eigen::VectorXd normal;  // unit normal of the flat, empty without one
};

Chart chart_for(std::size_t d, const DeckFlat* flat) {
  Chart c;
  const auto dd = static_cast<Eigen::Index>(d);
  if (flat == nullptr) {
    c.origin = Eigen::VectorXd::Zero(dd);
    c.basis = Eigen::MatrixXd::Identity(dd, dd);
    return c;
  }
  const auto n = flat->plane.unit_normal();
  c.normal = Eigen::Map<const Eigen::VectorXd>(n.data(), dd);
  c.origin = c.normal * flat->plane.unit_offset();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c.normal.transpose(), Eigen::ComputeFullV);
  c.basis = svd.matrixV().rightCols(dd - 1);
  return c;
}

// In-flat length of each plane normal; zero marks planes parallel to the flat.
std::vector<double> in_flat_norms(const ArrangementCache& cache, const Chart& chart) {
  std::vector<double> norms(cache.size());
  for (std::size_t i = 0; i < cache.size(); ++i) {
    norms[i] = chart.normal.size() == 0 ? 1.0 : (chart.basis.transpose() * cache[i].unit_normal).norm();
    if (norms[i] < 1e-9) norms[i] = 0;
  }
  return norms;
}

double distance(const ArrangementCache::Entry& e, double norm, const Eigen::VectorXd& x) {
  return std::abs(e.unit_normal.dot(x) - e.unit_offset) / norm;
}

SignedConstraint oriented(const Hyperplane& plane, bool positive) {
  return SignedConstraint{plane, positive ? Sense::GreaterEqual : Sense::LessEqual};
}

RationalVector snap_point(const Eigen::VectorXd& c, int bits, const DeckFlat* flat) {
  const std::size_t d = static_cast<std::size_t>(c.size());
  RationalVector out(d);
  for (std::size_t j = 0; j < d; ++j) out[j] = snap_to_dyadic(c(static_cast<Eigen::Index>(j)), bits);
  if (flat != nullptr) {
    const auto& n = flat->plane.normal;
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (abs(n[j]) > abs(n[pivot])) pivot = j;
    }
    Rational rest = Rational(flat->plane.offset);
    for (std::size_t j = 0; j < d; ++j) {
      if (j != pivot) rest -= Rational(n[j]) * out[j];
    }
    out[pivot] = rest / Rational(n[pivot]);
  }
  return out;
}

Eigen::VectorXd to_float(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) out(static_cast<Eigen::Index>(j)) = to_double(v[j]);
  return out;
}

}  // namespace

std::vector<char> eligible_planes(const ArrangementCache& cache, const DeckFlat* flat) {
  const Chart chart = chart_for(cache.dimension(), flat);
  const auto norms = in_flat_norms(cache, chart);
  std::vector<char> out(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) out[i] = norms[i] > 0;
  return out;
}

double min_plane_distance(const ArrangementCache& cache, const Eigen::VectorXd& x, const DeckFlat* flat) {
  const Chart chart = chart_for(cache.dimension(), flat);
  const auto norms = in_flat_norms(cache, chart);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cache.size(); ++i) {
    if (norms[i] > 0) best = std::min(best, distance(cache[i], norms[i], x));
  }
  return best;
}

HopProposal construct_hop_target(const ArrangementCache& cache, std::span<const double> weights,
                                 const DeckFlat* flat, const GuardConfig& guards,
                                 const HopTargetOptions& options, std::mt19937_64& rng,
                                 const Deadline& deadline, RejectedRegions* rejected) {
  const std::size_t d = cache.dimension();
  const Chart chart = chart_for(d, flat);
  const auto k = static_cast<std::size_t>(chart.basis.cols());
  const auto norms = in_flat_norms(cache, chart);

  std::vector<double> cumulative(cache.size());
  double total = 0;
  std::size_t usable = 0;
  for (std::size_t i = 0; i < cache.size(); ++i) {
    const double w = norms[i] > 0 && i < weights.size() && std::isfinite(weights[i]) ? std::max(0.0, weights[i]) : 0.0;
    if (w > 0) ++usable;
    total += w;
    cumulative[i] = total;
  }
  if (usable < k + 1 || !(total > 0)) throw NoRegionFound("too few usable hyperplanes");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    const double u = unit(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), cumulative.size() - 1));
  };

  const auto kk = static_cast<Eigen::Index>(k);
  HopProposal proposal;
  Ball ball;
  bool found = false;
  for (std::size_t attempt = 0; attempt < guards.max_while_iterations && !found; ++attempt) {
    if (deadline.expired()) throw FuseTripped("hop target timed out while sampling");
    std::vector<std::size_t> picked;
    for (std::size_t tries = 0; picked.size() < k + 1 && tries < 64 * (k + 1); ++tries) {
      const std::size_t i = draw();
      if (std::find(picked.begin(), picked.end(), i) == picked.end()) picked.push_back(i);
    }
    if (picked.size() < k + 1) continue;

    Eigen::MatrixXd a(kk + 1, kk);
    Eigen::VectorXd beta(kk + 1);
    for (std::size_t r = 0; r <= k; ++r) {
      const auto& e = cache[picked[r]];
      a.row(static_cast<Eigen::Index>(r)) = (chart.basis.transpose() * e.unit_normal).transpose();
      beta(static_cast<Eigen::Index>(r)) = e.unit_offset - e.unit_normal.dot(chart.origin);
    }
    // Vertex opposite each plane; the bounded cell lies on its side.
    Region region;
    if (flat != nullptr) region.equality = flat->plane;
    std::vector<Eigen::VectorXd> corners;
    bool degenerate = false;
    for (std::size_t r = 0; r <= k && !degenerate; ++r) {
      Eigen::MatrixXd sub(kk, kk);
      Eigen::VectorXd rhs(kk);
      for (std::size_t q = 0, row = 0; q <= k; ++q) {
        if (q == r) continue;
        sub.row(static_cast<Eigen::Index>(row)) = a.row(static_cast<Eigen::Index>(q));
        rhs(static_cast<Eigen::Index>(row)) = beta(static_cast<Eigen::Index>(q));
        ++row;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      lu.setThreshold(1e-10);
      if (!lu.isInvertible()) {
        degenerate = true;
        break;
      }
      const Eigen::VectorXd y = lu.solve(rhs);
      const double s = a.row(static_cast<Eigen::Index>(r)).dot(y) - beta(static_cast<Eigen::Index>(r));
      if (!std::isfinite(s) || std::abs(s) < 1e-12) {
        degenerate = true;
        break;
      }
      corners.push_back(chart.origin + chart.basis * y);
      region.constraints.push_back(oriented(cache[picked[r]].plane, s > 0));
    }
    if (degenerate) continue;

    try {
      ball = chebyshev_center(region);
    } catch (const Error&) {
      continue;
    }
    double max_abs = 0;
    double diameter = 0;
    for (std::size_t p = 0; p < corners.size(); ++p) {
      max_abs = std::max(max_abs, corners[p].cwiseAbs().maxCoeff());
      for (std::size_t q = p + 1; q < corners.size(); ++q) diameter = std::max(diameter, (corners[p] - corners[q]).norm());
    }
    if (max_abs > guards.max_abs_coordinate || diameter / ball.radius > guards.max_aspect_ratio) {
      if (rejected != nullptr) rejected->push_back(picked);
      continue;
    }
    proposal.region = std::move(region);
    proposal.source_planes = picked;
    found = true;
  }
  if (!found) throw NoRegionFound("sampling budget exhausted");

  // Refinement: append the closest plane while it cuts into the ball.
  for (std::size_t iteration = 0;; ++iteration) {
    if (deadline.expired()) throw FuseTripped("hop target timed out while refining");
    std::size_t closest = cache.size();
    double best = options.refine_factor * ball.radius;
    for (std::size_t i = 0; i < cache.size(); ++i) {
      if (norms[i] == 0) continue;
      const double dist = distance(cache[i], norms[i], ball.center);
      if (dist < best &&
          std::find(proposal.source_planes.begin(), proposal.source_planes.end(), i) == proposal.source_planes.end()) {
        best = dist;
        closest = i;
      }
    }
    if (closest == cache.size()) break;
    if (iteration >= guards.max_while_iterations) throw FuseTripped("refinement exceeded its iteration budget");
    const auto& e = cache[closest];
    proposal.region.constraints.push_back(oriented(e.plane, e.unit_normal.dot(ball.center) - e.unit_offset >= 0));
    proposal.source_planes.push_back(closest);
    try {
      ball = chebyshev_center(proposal.region);
    } catch (const Error& err) {
      throw FuseTripped(std::string("refinement lost the region: ") + err.what());
    }
  }
  proposal.radius = ball.radius;
  proposal.deck = flat != nullptr ? std::optional<Deck>(flat->deck) : std::nullopt;

  // Exact target on a dyadic grid fine enough to keep the clearance.
  const double span = std::max(1.0, ball.center.cwiseAbs().maxCoeff());
  int bits = static_cast<int>(std::ceil(std::log2(8.0 * std::sqrt(static_cast<double>(d)) / ball.radius))) + 2;
  bits = std::clamp(bits, 8, 1074);
  for (int round = 0; round < 8; ++round, bits += 8) {
    RationalVector snapped = snap_point(ball.center, bits, flat);
    const Eigen::VectorXd x = to_float(snapped);
    bool clear = true;
    for (const auto& c : proposal.region.constraints) clear = clear && c.satisfied_by(snapped);
    for (std::size_t i = 0; i < cache.size() && clear; ++i) {
      if (norms[i] > 0 && distance(cache[i], norms[i], x) < options.refine_factor * ball.radius) clear = false;
    }
    if (clear) {
      proposal.target = std::move(snapped);
      proposal.target_float = x;
      return proposal;
    }
    if (std::ldexp(1.0, -bits) < span * 1e-15) break;
  }
  throw FuseTripped("could not place an exact target inside the cell");
}

}  // namespace hopper
