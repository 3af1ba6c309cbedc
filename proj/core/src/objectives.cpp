#include "hopper/objectives.hpp"

#include "hopper/cyclic.hpp"
#include "hopper/errors.hpp"

#include <cmath>

namespace hopper {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Hirsch: return "hirsch";
    case Scenario::Monotone: return "monotone";
    case Scenario::Neighbourly: return "neighbourly";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "hirsch") return Scenario::Hirsch;
  if (name == "monotone") return Scenario::Monotone;
  if (name == "neighbourly" || name == "neighborly") return Scenario::Neighbourly;
  throw ConfigError("unknown scenario '" + name + "'");
}

double FitnessVector::headline() const {
  if (width) return static_cast<double>(*width);
  if (monotone_length) return static_cast<double>(*monotone_length);
  if (neighbourly_score) return *neighbourly_score;
  return value;
}

namespace {

template <class T>
void put(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

}  // namespace

void to_json(nlohmann::json& j, const FitnessVector& f) {
  j = nlohmann::json{{"objective", f.objective}, {"value", f.value}, {"targetMet", f.target_met}};
  put(j, "width", f.width);
  put(j, "defect", f.defect);
  put(j, "averageWidth", f.average_width);
  put(j, "longPaths", f.long_paths);
  put(j, "monotoneLength", f.monotone_length);
  put(j, "neighbourlyScore", f.neighbourly_score);
  put(j, "neighbourlyK", f.neighbourly_k);
  put(j, "neighbourly", f.neighbourly);
  put(j, "cyclic", f.cyclic);
}

void from_json(const nlohmann::json& j, FitnessVector& f) {
  f.objective = j.value("objective", std::string{});
  f.value = j.value("value", 0.0);
  f.target_met = j.value("targetMet", false);
  get(j, "width", f.width);
  get(j, "defect", f.defect);
  get(j, "averageWidth", f.average_width);
  get(j, "longPaths", f.long_paths);
  get(j, "monotoneLength", f.monotone_length);
  get(j, "neighbourlyScore", f.neighbourly_score);
  get(j, "neighbourlyK", f.neighbourly_k);
  get(j, "neighbourly", f.neighbourly);
  get(j, "cyclic", f.cyclic);
}

void to_json(nlohmann::json& j, const PathFormula& f) {
  j = nlohmann::json{{"shortestWeight", f.shortest_weight},
                     {"shortestPower", f.shortest_power},
                     {"longWeight", f.long_weight},
                     {"averageWeight", f.average_weight}};
}

void from_json(const nlohmann::json& j, PathFormula& f) {
  f.shortest_weight = j.value("shortestWeight", 0.0);
  f.shortest_power = j.value("shortestPower", 1.0);
  f.long_weight = j.value("longWeight", 0.0);
  f.average_weight = j.value("averageWeight", 0.0);
  if (f.shortest_weight < 0 || f.long_weight < 0 || f.average_weight < 0 ||
      f.shortest_weight + f.long_weight + f.average_weight <= 0) {
    throw ConfigError("path formula weights must be nonnegative with a positive sum");
  }
}

std::map<std::pair<std::size_t, std::size_t>, std::size_t> default_monotone_bounds() {
  return {{{9, 5}, 30}, {{10, 5}, 41}, {{11, 5}, 55}, {{9, 6}, 29}};
}

std::vector<PathFormula> default_path_formulas() {
  return {
      {1, 1, 0, 0}, {1, 0.5, 0, 0}, {1, 2, 0, 0}, {0, 1, 1, 0},
      {1, 1, 1, 0}, {1, 1, 0, 1},   {0, 1, 1, 1}, {1, 1, 1, 1},
  };
}

std::vector<Objective> hirsch_objectives(const std::vector<PathFormula>& formulas, std::size_t target_width) {
  std::vector<Objective> out;
  Objective base;
  base.scenario = Scenario::Hirsch;
  base.target_width = target_width;
  Objective defect_objective = base;
  defect_objective.name = "defect";
  defect_objective.kind = ObjectiveKind::Defect;
  out.push_back(defect_objective);
  Objective average = base;
  average.name = "average-width";
  average.kind = ObjectiveKind::AverageWidth;
  out.push_back(average);
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    Objective o = base;
    o.name = "paths-" + std::to_string(i + 1);
    o.kind = ObjectiveKind::PathFormula;
    o.formula = formulas[i];
    out.push_back(o);
  }
  return out;
}

Objective monotone_objective() {
  Objective o;
  o.name = "monotone-length";
  o.scenario = Scenario::Monotone;
  o.kind = ObjectiveKind::MonotoneLength;
  o.monotone_bounds = default_monotone_bounds();
  return o;
}

Objective neighbourly_objective() {
  Objective o;
  o.name = "neighbourliness";
  o.scenario = Scenario::Neighbourly;
  o.kind = ObjectiveKind::Neighbourliness;
  return o;
}

namespace {

FitnessVector evaluate_hirsch(const Polytope& p, const Hull& hull, const Objective& objective) {
  const PrismatoidView view = analyze_prismatoid(p, hull);
  FitnessVector f;
  f.objective = objective.name;
  const std::size_t w = width(view);
  const auto s = defect(view);
  f.width = w;
  f.defect = s;
  const double wd = static_cast<double>(w);
  const double sd = static_cast<double>(s);
  auto average = [&] {
    if (!f.average_width) f.average_width = average_width(view, objective.pairs);
    return *f.average_width;
  };
  auto long_paths = [&] {
    if (!f.long_paths) f.long_paths = long_path_count(view, objective.path_expansion_cap).count;
    return static_cast<double>(*f.long_paths);
  };
  switch (objective.kind) {
    case ObjectiveKind::Defect:
      f.value = wd + 1.0 / (1.0 + sd);
      break;
    case ObjectiveKind::AverageWidth:
      f.value = wd + average() / (wd + 3.0);
      break;
    case ObjectiveKind::PathFormula: {
      const auto& m = objective.formula;
      double mix = 0;
      if (m.shortest_weight > 0) mix += m.shortest_weight / std::pow(1.0 + sd, m.shortest_power);
      if (m.long_weight > 0) {
        const double l = long_paths();
        mix += m.long_weight * l / (l + sd);
      }
      if (m.average_weight > 0) mix += m.average_weight * average() / (wd + 3.0);
      f.value = wd + 0.999 * mix / (m.shortest_weight + m.long_weight + m.average_weight);
      break;
    }
    default:
      throw Error("objective does not belong to the hirsch scenario");
  }
  f.target_met = w >= objective.target_width;
  return f;
}

}  // namespace

FitnessVector evaluate(const Polytope& p, const Hull& hull, const Objective& objective) {
  FitnessVector f;
  switch (objective.scenario) {
    case Scenario::Hirsch:
      return evaluate_hirsch(p, hull, objective);
    case Scenario::Monotone: {
      if (hull.arithmetic != Arithmetic::Exact) {
        // Screening: dual values only need the float hull's incidences.
        return evaluate(p, facet_enumeration(p, Arithmetic::Exact), objective);
      }
      const std::size_t length = dual_monotone_path_length(p, hull, objective.ties);
      f.objective = objective.name;
      f.monotone_length = length;
      f.value = static_cast<double>(length);
      auto it = objective.monotone_bounds.find({p.size(), p.dimension()});
      f.target_met = it != objective.monotone_bounds.end() && length > it->second;
      return f;
    }
    case Scenario::Neighbourly: {
      const Neighbourliness nb = neighbourliness_fitness(hull);
      f.objective = objective.name;
      f.neighbourly_score = nb.score();
      f.neighbourly_k = nb.k;
      f.value = nb.score();
      f.neighbourly = nb.k >= p.dimension() / 2;
      if (*f.neighbourly) {
        f.cyclic = is_combinatorially_cyclic(hull);
        f.target_met = !*f.cyclic;
      }
      return f;
    }
  }
  return f;
}

FitnessVector evaluate(const Polytope& p, const Objective& objective, Arithmetic arithmetic) {
  return evaluate(p, facet_enumeration(p, arithmetic), objective);
}

std::size_t schedule_next_objective(ObjectiveSchedule& schedule, std::size_t& stagnation) {
  if (schedule.objectives.empty()) throw Error("empty objective schedule");
  if (stagnation >= std::max<std::size_t>(1, schedule.stagnation_threshold)) {
    schedule.current = (schedule.current + 1) % schedule.objectives.size();
    stagnation = 0;
  }
  return schedule.current;
}

}  // namespace hopper
