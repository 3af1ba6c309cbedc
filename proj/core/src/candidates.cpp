#include "hopper/candidates.hpp"

#include "hopper/combinatorics.hpp"
#include "hopper/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hopper {

std::string to_string(HopMode m) { return m == HopMode::Rigid ? "rigid" : "flexible"; }

HopMode hop_mode_from_string(const std::string& name) {
  if (name == "rigid") return HopMode::Rigid;
  if (name == "flexible") return HopMode::Flexible;
  throw ConfigError("unknown mode '" + name + "'");
}

GuardVerdict check_guards(const Eigen::MatrixXd& rows, const Hull& hull, const GuardConfig& guards) {
  if (rows.cwiseAbs().maxCoeff() > guards.max_abs_coordinate) return {false, "coordinate too large"};

  const Eigen::MatrixXd centered = rows.rowwise() - rows.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0) || std::sqrt(hi / lo) > guards.max_aspect_ratio) return {false, "aspect ratio"};

  const Graph ridges = facet_ridge_graph(hull);
  for (std::size_t a = 0; a < ridges.size(); ++a) {
    const auto& na = hull.facets[a].normal;
    for (std::size_t b : ridges.neighbors(a)) {
      if (b < a) continue;
      const auto& nb = hull.facets[b].normal;
      double dot = 0;
      for (std::size_t j = 0; j < na.size(); ++j) dot += na[j] * nb[j];
      const double angle = std::acos(std::min(1.0, std::abs(dot)));
      if (angle < guards.min_facet_angle) return {false, "facet angle"};
    }
  }
  return {};
}

namespace {

bool decks_survive(const Polytope& p, const Hull& hull, const DeckConstraint& decks) {
  if (hull.arithmetic == Arithmetic::Float) {
    return keeps_prismatoid_structure(p.to_float(), decks.top_plane, decks.bottom_plane);
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (decks.top_plane.side(p.vertex(i)) != 0 && decks.bottom_plane.side(p.vertex(i)) != 0) return false;
  }
  bool top = false;
  bool bottom = false;
  for (const auto& f : hull.facets) {
    const Hyperplane h = f.plane();
    top = top || h == decks.top_plane;
    bottom = bottom || h == decks.bottom_plane;
  }
  return top && bottom;
}

bool screen(const Polytope& p, const DeckConstraint* decks, const GuardConfig& guards, Arithmetic arithmetic,
            Hull* hull_out) {
  Hull hull;
  try {
    hull = convex_hull(p, arithmetic);
  } catch (const DegenerateInput&) {
    return false;
  }
  if (!hull.non_vertices().empty()) return false;
  if (decks != nullptr && !decks_survive(p, hull, *decks)) return false;
  if (!check_guards(p.to_float(), hull, guards).ok) return false;
  if (hull_out != nullptr) *hull_out = std::move(hull);
  return true;
}

}  // namespace

bool admissible(const Polytope& p, const DeckConstraint* decks, const GuardConfig& guards, Hull* hull_out) {
  return screen(p, decks, guards, Arithmetic::Float, hull_out);
}

bool admissible_exact(const Polytope& p, const DeckConstraint* decks, const GuardConfig& guards) {
  return screen(p, decks, guards, Arithmetic::Exact, nullptr);
}

std::vector<Candidate> generate_candidates(const Polytope& p, const HopProposal& proposal, HopMode mode,
                                           const DeckConstraint* decks, const GuardConfig& guards,
                                           std::mt19937_64& rng, const Deadline& deadline,
                                           std::size_t deletions) {
  std::vector<Candidate> out;
  std::vector<std::size_t> movable;
  if (decks != nullptr && proposal.deck) {
    movable = *proposal.deck == Deck::Top ? decks->top : decks->bottom;
  } else {
    movable.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) movable[i] = i;
  }

  auto consider = [&](Polytope q, CandidateKind kind, std::size_t vertex) {
    if (deadline.expired()) return;
    Candidate c;
    if (!admissible(q, decks, guards, &c.float_hull)) return;
    c.polytope = std::move(q);
    c.kind = kind;
    c.vertex = vertex;
    out.push_back(std::move(c));
  };

  for (std::size_t v : movable) consider(p.with_vertex_replaced(v, proposal.target), CandidateKind::Replace, v);
  if (mode == HopMode::Flexible) {
    consider(p.with_vertex_added(proposal.target), CandidateKind::Add, p.size());
    if (!movable.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, movable.size() - 1);
      for (std::size_t k = 0; k < deletions; ++k) {
        const std::size_t v = movable[pick(rng)];
        if (p.size() > p.dimension() + 1) consider(p.without_vertex(v), CandidateKind::Delete, v);
      }
    }
  }
  return out;
}

}  // namespace hopper
