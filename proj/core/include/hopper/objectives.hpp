#pragma once

#include "hopper/measures.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopper {

enum class Scenario { Hirsch, Monotone, Neighbourly };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Measured values of one polytope. `value` is the active objective (larger
/// is better); the optional fields hold whatever the scenario computed.
struct FitnessVector {
  std::string objective;
  double value = 0;
  bool target_met = false;

  std::optional<std::size_t> width;
  std::optional<std::uint64_t> defect;
  std::optional<double> average_width;
  std::optional<std::uint64_t> long_paths;
  std::optional<std::size_t> monotone_length;
  std::optional<double> neighbourly_score;
  std::optional<std::size_t> neighbourly_k;
  std::optional<bool> neighbourly;
  std::optional<bool> cyclic;

  /// Scenario headline number: width, monotone length or neighbourly score.
  double headline() const;
};

void to_json(nlohmann::json& j, const FitnessVector& f);
void from_json(const nlohmann::json& j, FitnessVector& f);

/// Weighted mix of shortest-path scarcity, long-path abundance and average
/// width, kept below 1 so it only breaks ties between equal widths.
struct PathFormula {
  double shortest_weight = 1;
  double shortest_power = 1;
  double long_weight = 0;
  double average_weight = 0;
};

void to_json(nlohmann::json& j, const PathFormula& f);
void from_json(const nlohmann::json& j, PathFormula& f);

enum class ObjectiveKind { Defect, AverageWidth, PathFormula, MonotoneLength, Neighbourliness };

struct Objective {
  std::string name;
  Scenario scenario = Scenario::Hirsch;
  ObjectiveKind kind = ObjectiveKind::Defect;
  PathFormula formula;

  std::size_t target_width = 6;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> monotone_bounds;  // (n, d) -> best known
  TieBreak ties = TieBreak::Error;
  PairConvention pairs = PairConvention::ExcludeEqual;
  std::uint64_t path_expansion_cap = 200'000;
};

/// Best-known longest monotone path lengths used as the monotone target.
std::map<std::pair<std::size_t, std::size_t>, std::size_t> default_monotone_bounds();

/// Eight default path formulas for the Hirsch scenario.
std::vector<PathFormula> default_path_formulas();

/// Ten Hirsch objectives: defect, average width, then one per formula.
std::vector<Objective> hirsch_objectives(const std::vector<PathFormula>& formulas, std::size_t target_width = 6);
Objective monotone_objective();
Objective neighbourly_objective();

/// Exact arithmetic decides the target predicate; float mode is for
/// screening only. Throws NotPrismatoid, NonGenericFunctional, Disconnected.
FitnessVector evaluate(const Polytope& p, const Objective& objective, Arithmetic arithmetic = Arithmetic::Exact);
FitnessVector evaluate(const Polytope& p, const Hull& hull, const Objective& objective);

struct ObjectiveSchedule {
  std::vector<Objective> objectives;
  std::size_t stagnation_threshold = 25;
  std::size_t current = 0;

  const Objective& active() const { return objectives[current]; }
};

/// Round-robin advance once stagnation reaches the threshold; the counter
/// is reset on a switch.
std::size_t schedule_next_objective(ObjectiveSchedule& schedule, std::size_t& stagnation);

}  // namespace hopper
