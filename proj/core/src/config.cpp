#include "hopper/config.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>

extern char** environ;

namespace hopper {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void read_ms(const json& j, const char* key, std::chrono::milliseconds& out) {
  double ms = static_cast<double>(out.count());
  read(j, key, ms);
  out = std::chrono::milliseconds(static_cast<long long>(ms));
}

}  // namespace

void RunConfig::validate() const {
  if (dimension < 2) throw ConfigError("dimension must be at least 2");
  if (agents == 0) throw ConfigError("agents must be positive");
  if (scenario == Scenario::Hirsch) {
    if (top_vertices < dimension - 1 || bottom_vertices < dimension - 1)
      throw ConfigError("each deck needs at least dimension - 1 vertices");
  } else {
    if (vertices < dimension + 1) throw ConfigError("vertices must exceed the dimension");
    if (mode == HopMode::Flexible) throw ConfigError("flexible mode needs the hirsch scenario's path counts");
  }
  if (time_limit_seconds < 0) throw ConfigError("time_limit_seconds must be non-negative");
  if (episode_patience == 0) throw ConfigError("episode_patience must be positive");
  if (stagnation_threshold == 0) throw ConfigError("stagnation_threshold must be positive");
  if (guards.max_while_iterations == 0 || guards.per_step_timeout.count() <= 0)
    throw ConfigError("guard budgets must be positive");
  if (!(target.refine_factor > 0 && target.refine_factor <= 1)) throw ConfigError("refine_factor must lie in (0, 1]");
  if (repository.max_size == 0) throw ConfigError("repository.max_size must be positive");
  if (repository.p_read < 0 || repository.p_read > 1) throw ConfigError("repository.p_read must lie in [0, 1]");
  if (!(repository.tau > 0)) throw ConfigError("repository.tau must be positive");
  if (silo_capacity == 0) throw ConfigError("silo_capacity must be positive");
  if (!brain.address.empty() && (brain.timeout.count() <= 0 || brain.batch_size == 0))
    throw ConfigError("brain timeout and batch size must be positive");
  if (snap_bits < 0 || snap_bits > 60) throw ConfigError("snap_bits must lie in [0, 60]");
  schedule();
}

ObjectiveSchedule RunConfig::schedule() const {
  std::vector<Objective> all;
  switch (scenario) {
    case Scenario::Hirsch:
      all = hirsch_objectives(formulas, target_width);
      break;
    case Scenario::Monotone: {
      Objective o = monotone_objective();
      o.monotone_bounds = monotone_bounds;
      all.push_back(o);
      break;
    }
    case Scenario::Neighbourly:
      all.push_back(neighbourly_objective());
      break;
  }
  ObjectiveSchedule s;
  s.stagnation_threshold = stagnation_threshold;
  if (objectives.empty()) {
    s.objectives = std::move(all);
  } else {
    for (const auto& name : objectives) {
      auto it = std::find_if(all.begin(), all.end(), [&](const Objective& o) { return o.name == name; });
      if (it == all.end()) throw ConfigError("unknown objective '" + name + "' for scenario " + to_string(scenario));
      s.objectives.push_back(*it);
    }
  }
  return s;
}

AgentConfig RunConfig::agent_config() const {
  AgentConfig a;
  a.mode = mode;
  a.guards = guards;
  a.target = target;
  a.deletions = deletions;
  a.exact_confirmations = exact_confirmations;
  // Monotone fitness depends on the embedding, so only combinatorial
  // objectives may be rescaled.
  a.rescale = rescale && scenario != Scenario::Monotone;
  a.rescale_tolerance = rescale_tolerance;
  a.rescale_options.snap_bits = snap_bits;
  return a;
}

RunConfig run_config_from_json(const json& j) {
  only_keys(j, "", {"scenario", "dimension", "vertices", "deck_sizes", "mode", "agents", "hop_budget",
                    "time_limit_seconds", "seed", "stop_on_first", "episode_patience", "guards", "hop", "rescale",
                    "objectives", "repository", "brain", "output"});
  RunConfig c;
  try {
    if (j.contains("scenario")) c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    if (j.contains("mode")) c.mode = hop_mode_from_string(j.at("mode").get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  read(j, "dimension", c.dimension);
  read(j, "vertices", c.vertices);
  if (j.contains("deck_sizes")) {
    std::vector<std::size_t> decks;
    read(j, "deck_sizes", decks);
    if (decks.size() != 2) throw ConfigError("deck_sizes must list two sizes");
    c.top_vertices = decks[0];
    c.bottom_vertices = decks[1];
  }
  read(j, "agents", c.agents);
  read(j, "hop_budget", c.hop_budget);
  read(j, "time_limit_seconds", c.time_limit_seconds);
  read(j, "seed", c.seed);
  read(j, "stop_on_first", c.stop_on_first);
  read(j, "episode_patience", c.episode_patience);

  if (j.contains("guards")) {
    const json& g = j["guards"];
    only_keys(g, "guards", {"max_abs_coordinate", "min_facet_angle", "max_aspect_ratio", "max_while_iterations",
                            "per_step_timeout_ms"});
    read(g, "max_abs_coordinate", c.guards.max_abs_coordinate);
    read(g, "min_facet_angle", c.guards.min_facet_angle);
    read(g, "max_aspect_ratio", c.guards.max_aspect_ratio);
    read(g, "max_while_iterations", c.guards.max_while_iterations);
    read_ms(g, "per_step_timeout_ms", c.guards.per_step_timeout);
  }
  if (j.contains("hop")) {
    const json& h = j["hop"];
    only_keys(h, "hop", {"refine_factor", "deletions", "exact_confirmations"});
    read(h, "refine_factor", c.target.refine_factor);
    read(h, "deletions", c.deletions);
    read(h, "exact_confirmations", c.exact_confirmations);
  }
  if (j.contains("rescale")) {
    const json& r = j["rescale"];
    only_keys(r, "rescale", {"enabled", "tolerance", "snap_bits"});
    read(r, "enabled", c.rescale);
    read(r, "tolerance", c.rescale_tolerance);
    read(r, "snap_bits", c.snap_bits);
  }
  if (j.contains("objectives")) {
    const json& o = j["objectives"];
    only_keys(o, "objectives", {"names", "stagnation_threshold", "target_width", "formulas", "monotone_bounds"});
    read(o, "names", c.objectives);
    read(o, "stagnation_threshold", c.stagnation_threshold);
    read(o, "target_width", c.target_width);
    read(o, "formulas", c.formulas);
    if (o.contains("monotone_bounds")) {
      c.monotone_bounds.clear();
      for (const auto& row : o["monotone_bounds"]) {
        if (!row.is_array() || row.size() != 3) throw ConfigError("monotone_bounds rows are [n, d, bound]");
        c.monotone_bounds[{row[0].get<std::size_t>(), row[1].get<std::size_t>()}] = row[2].get<std::size_t>();
      }
    }
  }
  if (j.contains("repository")) {
    const json& r = j["repository"];
    only_keys(r, "repository", {"max_size", "eviction_sample", "p_read", "fitness_weight", "recency_weight",
                                "failure_weight", "tau", "silo_capacity"});
    read(r, "max_size", c.repository.max_size);
    read(r, "eviction_sample", c.repository.eviction_sample);
    read(r, "p_read", c.repository.p_read);
    read(r, "fitness_weight", c.repository.fitness_weight);
    read(r, "recency_weight", c.repository.recency_weight);
    read(r, "failure_weight", c.repository.failure_weight);
    read(r, "tau", c.repository.tau);
    read(r, "silo_capacity", c.silo_capacity);
  }
  if (j.contains("brain")) {
    const json& b = j["brain"];
    only_keys(b, "brain", {"address", "timeout_ms", "batch_size", "backoff_ms", "train"});
    read(b, "address", c.brain.address);
    read_ms(b, "timeout_ms", c.brain.timeout);
    read(b, "batch_size", c.brain.batch_size);
    read_ms(b, "backoff_ms", c.brain.backoff);
    read(b, "train", c.brain.train);
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, "output", {"report", "snapshot", "silo"});
    read(o, "report", c.output.report);
    read(o, "snapshot", c.output.snapshot);
    read(o, "silo", c.output.silo);
  }
  c.repository.seed = c.seed;
  return c;
}

json to_json(const RunConfig& c) {
  json bounds = json::array();
  for (const auto& [key, bound] : c.monotone_bounds) bounds.push_back({key.first, key.second, bound});
  return {{"scenario", to_string(c.scenario)},
          {"dimension", c.dimension},
          {"vertices", c.vertices},
          {"deck_sizes", {c.top_vertices, c.bottom_vertices}},
          {"mode", to_string(c.mode)},
          {"agents", c.agents},
          {"hop_budget", c.hop_budget},
          {"time_limit_seconds", c.time_limit_seconds},
          {"seed", c.seed},
          {"stop_on_first", c.stop_on_first},
          {"episode_patience", c.episode_patience},
          {"guards",
           {{"max_abs_coordinate", c.guards.max_abs_coordinate},
            {"min_facet_angle", c.guards.min_facet_angle},
            {"max_aspect_ratio", c.guards.max_aspect_ratio},
            {"max_while_iterations", c.guards.max_while_iterations},
            {"per_step_timeout_ms", c.guards.per_step_timeout.count()}}},
          {"hop",
           {{"refine_factor", c.target.refine_factor},
            {"deletions", c.deletions},
            {"exact_confirmations", c.exact_confirmations}}},
          {"rescale", {{"enabled", c.rescale}, {"tolerance", c.rescale_tolerance}, {"snap_bits", c.snap_bits}}},
          {"objectives",
           {{"names", c.objectives},
            {"stagnation_threshold", c.stagnation_threshold},
            {"target_width", c.target_width},
            {"formulas", c.formulas},
            {"monotone_bounds", bounds}}},
          {"repository",
           {{"max_size", c.repository.max_size},
            {"eviction_sample", c.repository.eviction_sample},
            {"p_read", c.repository.p_read},
            {"fitness_weight", c.repository.fitness_weight},
            {"recency_weight", c.repository.recency_weight},
            {"failure_weight", c.repository.failure_weight},
            {"tau", c.repository.tau},
            {"silo_capacity", c.silo_capacity}}},
          {"brain",
           {{"address", c.brain.address},
            {"timeout_ms", c.brain.timeout.count()},
            {"batch_size", c.brain.batch_size},
            {"backoff_ms", c.brain.backoff.count()},
            {"train", c.brain.train}}},
          {"output", {{"report", c.output.report}, {"snapshot", c.output.snapshot}, {"silo", c.output.silo}}}};
}

void apply_env_overrides(json& j, const std::map<std::string, std::string>& environment) {
  constexpr std::string_view prefix = "HOPPER_";
  for (const auto& [name, raw] : environment) {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) continue;
    std::string path = name.substr(prefix.size());
    std::transform(path.begin(), path.end(), path.begin(), [](unsigned char ch) { return std::tolower(ch); });
    json* node = &j;
    std::size_t start = 0;
    while (true) {
      const std::size_t sep = path.find("__", start);
      const std::string key = path.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
      if (key.empty()) throw ConfigError("malformed override " + name);
      if (sep == std::string::npos) {
        json value = json::parse(raw, nullptr, false);
        (*node)[key] = value.is_discarded() ? json(raw) : value;
        break;
      }
      json& child = (*node)[key];
      if (child.is_null()) child = json::object();
      if (!child.is_object()) throw ConfigError("override " + name + " descends into a non-object");
      node = &child;
      start = sep + 2;
    }
  }
}

std::map<std::string, std::string> hopper_environment() {
  std::map<std::string, std::string> out;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string entry(*e);
    const auto eq = entry.find('=');
    if (eq == std::string::npos || entry.rfind("HOPPER_", 0) != 0) continue;
    out[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j = json::parse(in, nullptr, false, true);
  if (j.is_discarded()) throw ConfigError("config " + path.string() + " is not valid JSON");
  apply_env_overrides(j, hopper_environment());
  RunConfig c = run_config_from_json(j);
  c.validate();
  return c;
}

}  // namespace hopper
