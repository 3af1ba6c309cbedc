#include "hopper/agent.hpp"

#include "hopper/errors.hpp"
#include "hopper/prismatoid.hpp"

#include <algorithm>

namespace hopper {

namespace {

DeckConstraint deck_constraint(const Prismatoid& prism) {
  return {prism.top_plane, prism.bottom_plane, prism.top, prism.bottom};
}

void repartition(const Polytope& p, DeckConstraint& decks) {
  decks.top.clear();
  decks.bottom.clear();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (decks.top_plane.side(p.vertex(i)) == 0) decks.top.push_back(i);
    else decks.bottom.push_back(i);
  }
}

void ensure_long_paths(const Polytope& p, const Hull& hull, const Objective& objective, FitnessVector& f) {
  if (f.long_paths || objective.scenario != Scenario::Hirsch) return;
  f.long_paths = long_path_count(analyze_prismatoid(p, hull), objective.path_expansion_cap).count;
}

}  // namespace

AgentState make_agent_state(Polytope p, const Objective& objective) {
  AgentState s;
  const Hull hull = facet_enumeration(p, Arithmetic::Exact);
  s.fitness = evaluate(p, hull, objective);
  if (objective.scenario == Scenario::Hirsch) s.decks = deck_constraint(detect_prismatoid(p, hull));
  s.cache = ArrangementCache::build(p);
  s.polytope = std::move(p);
  return s;
}

void reevaluate(AgentState& state, const Objective& objective) {
  state.fitness = evaluate(state.polytope, objective, Arithmetic::Exact);
}

bool uptick_downtick_gate(const FitnessVector& before, const FitnessVector& after, CandidateKind kind) {
  switch (kind) {
    case CandidateKind::Replace:
      return true;
    case CandidateKind::Add:
      if (!before.defect || !after.defect) throw MissingMetric("vertex addition needs shortest-path counts");
      return *after.defect < *before.defect;
    case CandidateKind::Delete:
      if (!before.long_paths || !after.long_paths) throw MissingMetric("vertex deletion needs long-path counts");
      return *after.long_paths > *before.long_paths;
  }
  return false;
}

StepResult agent_step(const AgentState& state, const Objective& objective, PlaneScorer* scorer,
                      const AgentConfig& config, std::mt19937_64& rng) {
  StepResult result;
  const Polytope& p = state.polytope;
  const ArrangementCache cache = state.cache ? *state.cache : ArrangementCache::build(p);
  const DeckConstraint* decks = state.decks ? &*state.decks : nullptr;
  const Deadline deadline(config.guards.per_step_timeout);

  std::optional<DeckFlat> flat;
  if (decks != nullptr) {
    std::bernoulli_distribution coin(0.5);
    flat = coin(rng) ? DeckFlat{Deck::Top, decks->top_plane} : DeckFlat{Deck::Bottom, decks->bottom_plane};
  }

  auto snapshot = std::make_shared<HopSnapshot>();
  snapshot->polytope = p;
  if (decks != nullptr) {
    snapshot->top = decks->top;
    snapshot->bottom = decks->bottom;
  }
  snapshot->defect = state.fitness.defect.value_or(0);
  auto emit = [&](const std::vector<std::size_t>& planes, std::optional<Deck> deck, HopLabel label) {
    for (std::size_t i : planes) {
      HopSample s;
      s.snapshot = snapshot;
      s.plane = cache[i].plane;
      s.deck = deck;
      s.label = label;
      s.defect = snapshot->defect;
      result.samples.push_back(std::move(s));
    }
  };

  ScoringRequest request;
  request.polytope = &p;
  request.cache = &cache;
  if (decks != nullptr) {
    request.top = decks->top;
    request.bottom = decks->bottom;
    request.deck = flat->deck;
  }
  const PlaneDistribution pi = score_hyperplanes(request, scorer);

  RejectedRegions rejected;
  HopProposal proposal;
  try {
    proposal = construct_hop_target(cache, pi.probabilities, flat ? &*flat : nullptr, config.guards, config.target,
                                    rng, deadline, &rejected);
  } catch (const Error& e) {
    for (const auto& r : rejected) emit(r, flat ? std::optional<Deck>(flat->deck) : std::nullopt, HopLabel::GeomRejected);
    result.diagnostic = e.what();
    return result;
  }
  for (const auto& r : rejected) emit(r, proposal.deck, HopLabel::GeomRejected);

  auto candidates = generate_candidates(p, proposal, config.mode, decks, config.guards, rng, deadline, config.deletions);
  HopOutcome outcome;
  outcome.had_admissible = !candidates.empty();

  // Float screen: rank by estimated fitness, dropping anything below f(P).
  struct Ranked {
    std::size_t index;
    double value;
  };
  std::vector<Ranked> ranked;
  const double current = state.fitness.value;
  for (std::size_t i = 0; i < candidates.size() && !deadline.expired(); ++i) {
    try {
      FitnessVector f = evaluate(candidates[i].polytope, candidates[i].float_hull, objective);
      if (f.value < current - 1e-9) continue;
      ranked.push_back({i, f.value});
    } catch (const Error&) {
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) { return a.value > b.value; });

  std::optional<std::size_t> winner;
  FitnessVector winner_fitness;
  Hull winner_hull;
  std::size_t confirmed = 0;
  for (const Ranked& r : ranked) {
    if (confirmed >= config.exact_confirmations || deadline.expired()) break;
    const Candidate& c = candidates[r.index];
    ++confirmed;
    if (!admissible_exact(c.polytope, decks, config.guards)) continue;
    try {
      Hull hull = facet_enumeration(c.polytope, Arithmetic::Exact);
      FitnessVector f = evaluate(c.polytope, hull, objective);
      if (f.value < current) continue;
      if (c.kind != CandidateKind::Replace && objective.scenario == Scenario::Hirsch) {
        FitnessVector before = state.fitness;
        if (c.kind == CandidateKind::Delete) {
          ensure_long_paths(p, facet_enumeration(p, Arithmetic::Exact), objective, before);
          ensure_long_paths(c.polytope, hull, objective, f);
        }
        if (!uptick_downtick_gate(before, f, c.kind)) continue;
      }
      if (!winner || f.value > winner_fitness.value) {
        winner = r.index;
        winner_fitness = std::move(f);
        winner_hull = std::move(hull);
      }
    } catch (const Error&) {
    }
  }

  if (!winner) {
    emit(proposal.source_planes, proposal.deck, label_hop(outcome));
    result.diagnostic = candidates.empty() ? "no admissible candidate" : "no candidate kept the fitness";
    return result;
  }

  const Candidate& c = candidates[*winner];
  outcome.improved = winner_fitness.value > current;
  emit(proposal.source_planes, proposal.deck, label_hop(outcome));

  AgentState next;
  next.polytope = c.polytope;
  next.fitness = winner_fitness;
  if (decks != nullptr) {
    next.decks = *decks;
    repartition(next.polytope, *next.decks);
  }
  switch (c.kind) {
    case CandidateKind::Replace:
      next.cache = cache.replaced(next.polytope, c.vertex);
      break;
    case CandidateKind::Add:
      next.cache = cache.added(next.polytope);
      break;
    case CandidateKind::Delete:
      next.cache = cache.removed(next.polytope, c.vertex);
      break;
  }

  const RescaleMode rescale_mode = decks != nullptr ? RescaleMode::KeepLastCoordinate : RescaleMode::Full;
  if (config.rescale && whitening_defect(next.polytope, rescale_mode) > config.rescale_tolerance) {
    try {
      RescaleOptions options = config.rescale_options;
      options.mode = rescale_mode;
      Polytope q = canonical_rescale(next.polytope, options);
      if (admissible_exact(q, decks, config.guards)) {
        const Hull hull = facet_enumeration(q, Arithmetic::Exact);
        std::vector<std::vector<std::size_t>> before, after;
        for (const auto& f : winner_hull.facets) before.push_back(f.vertices);
        for (const auto& f : hull.facets) after.push_back(f.vertices);
        if (before == after) {
          FitnessVector f = evaluate(q, hull, objective);
          if (f.value >= winner_fitness.value) {
            next.polytope = std::move(q);
            next.fitness = std::move(f);
            next.cache = ArrangementCache::build(next.polytope);
            winner_hull = hull;
            result.rescaled = true;
          }
        }
      }
    } catch (const Error&) {
    }
  }

  result.hull = std::move(winner_hull);
  result.kind = c.kind;
  result.improved = outcome.improved;
  result.next = std::move(next);
  return result;
}

}  // namespace hopper
