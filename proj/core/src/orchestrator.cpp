#include "hopper/orchestrator.hpp"

#include "hopper/agent.hpp"
#include "hopper/errors.hpp"
#include "hopper/seeding.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace hopper {

void to_json(nlohmann::json& j, const TrajectoryPoint& t) {
  j = {{"step", t.step},         {"agent", t.agent},       {"generation", t.generation},
       {"vertices", t.vertices}, {"top", t.top},           {"bottom", t.bottom},
       {"objective", t.objective}, {"value", t.value},     {"headline", t.headline}};
}

void from_json(const nlohmann::json& j, TrajectoryPoint& t) {
  t.step = j.at("step");
  t.agent = j.at("agent");
  t.generation = j.at("generation");
  t.vertices = j.at("vertices");
  t.top = j.value("top", std::size_t{0});
  t.bottom = j.value("bottom", std::size_t{0});
  t.objective = j.value("objective", std::string{});
  t.value = j.at("value");
  t.headline = j.value("headline", t.value);
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : r.seeds) seeds.push_back({{"agent", s.agent}, {"fitness", s.fitness}});
  nlohmann::json ascensions = nlohmann::json::array();
  for (const auto& a : r.ascensions)
    ascensions.push_back({{"step", a.step},
                          {"agent", a.agent},
                          {"generation", a.generation},
                          {"fitness", a.fitness},
                          {"polytope", a.polytope}});
  return {{"scenario", r.scenario},
          {"mode", r.mode},
          {"dimension", r.dimension},
          {"agents", r.agents},
          {"seed", r.seed},
          {"hopBudget", r.hop_budget},
          {"steps", r.steps},
          {"improvements", r.improvements},
          {"lateralMoves", r.lateral_moves},
          {"rescales", r.rescales},
          {"objectiveSwitches", r.objective_switches},
          {"steals", r.steals},
          {"freshSeeds", r.fresh_seeds},
          {"diagnostics", r.diagnostics},
          {"seeds", seeds},
          {"meanSeedValue", r.mean_seed_value},
          {"trajectory", r.trajectory},
          {"ascensions", ascensions},
          {"best", r.best ? nlohmann::json(*r.best) : nlohmann::json()},
          {"bestPolytope", r.best_polytope},
          {"hopSamples",
           {{"success", r.sample_counts[0]},
            {"geomRejected", r.sample_counts[1]},
            {"feasibleNoSuccess", r.sample_counts[2]},
            {"dropped", r.samples_dropped},
            {"checked", r.samples_checked},
            {"verified", r.samples_verified}}},
          {"repositorySize", r.repository_size},
          {"evictions", r.evictions},
          {"stopReason", r.stop_reason}};
}

RunReport run_report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.scenario = j.value("scenario", std::string{});
  r.mode = j.value("mode", std::string{});
  r.dimension = j.value("dimension", std::size_t{0});
  r.agents = j.value("agents", std::size_t{0});
  r.seed = j.value("seed", std::uint64_t{0});
  r.hop_budget = j.value("hopBudget", std::size_t{0});
  r.steps = j.value("steps", std::size_t{0});
  r.improvements = j.value("improvements", std::size_t{0});
  r.lateral_moves = j.value("lateralMoves", std::size_t{0});
  r.rescales = j.value("rescales", std::size_t{0});
  r.objective_switches = j.value("objectiveSwitches", std::size_t{0});
  r.steals = j.value("steals", std::size_t{0});
  r.fresh_seeds = j.value("freshSeeds", std::size_t{0});
  r.diagnostics = j.value("diagnostics", std::map<std::string, std::size_t>{});
  for (const auto& s : j.value("seeds", nlohmann::json::array()))
    r.seeds.push_back({s.at("agent").get<std::size_t>(), s.at("fitness").get<FitnessVector>()});
  r.mean_seed_value = j.value("meanSeedValue", 0.0);
  r.trajectory = j.value("trajectory", std::vector<TrajectoryPoint>{});
  for (const auto& a : j.value("ascensions", nlohmann::json::array()))
    r.ascensions.push_back({a.at("step").get<std::size_t>(), a.at("agent").get<std::size_t>(),
                            a.at("generation").get<std::size_t>(), a.at("fitness").get<FitnessVector>(),
                            a.value("polytope", std::string{})});
  if (j.contains("best") && !j["best"].is_null()) r.best = j["best"].get<FitnessVector>();
  r.best_polytope = j.value("bestPolytope", std::string{});
  if (j.contains("hopSamples")) {
    const auto& h = j["hopSamples"];
    r.sample_counts = {h.value("success", std::uint64_t{0}), h.value("geomRejected", std::uint64_t{0}),
                       h.value("feasibleNoSuccess", std::uint64_t{0})};
    r.samples_dropped = h.value("dropped", std::uint64_t{0});
    r.samples_checked = h.value("checked", std::uint64_t{0});
    r.samples_verified = h.value("verified", std::uint64_t{0});
  }
  r.repository_size = j.value("repositorySize", std::size_t{0});
  r.evictions = j.value("evictions", std::size_t{0});
  r.stop_reason = j.value("stopReason", std::string{});
  return r;
}

std::string summarize(const RunReport& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << " (" << r.mode << ", d=" << r.dimension << "), " << r.agents << " agent(s), seed "
      << r.seed << "\n";
  out << "steps " << r.steps << ", improvements " << r.improvements << ", lateral " << r.lateral_moves
      << ", objective switches " << r.objective_switches << ", stop: " << r.stop_reason << "\n";
  out << "mean seed fitness " << r.mean_seed_value;
  if (r.best) {
    out << ", best fitness " << r.best->value << " (" << r.best->objective << ")";
    if (r.best->width) out << ", width " << *r.best->width;
    if (r.best->defect) out << ", defect " << *r.best->defect;
    if (r.best->monotone_length) out << ", monotone length " << *r.best->monotone_length;
    if (r.best->neighbourly_k) out << ", neighbourly k " << *r.best->neighbourly_k;
    out << (r.best->target_met ? ", target met" : "");
  }
  out << "\nascensions " << r.ascensions.size() << "\n";
  out << "hop samples: success " << r.sample_counts[0] << ", geomRejected " << r.sample_counts[1]
      << ", feasibleNoSuccess " << r.sample_counts[2] << " (verified " << r.samples_verified << "/" << r.samples_checked
      << ")\n";
  out << "repository " << r.repository_size << " entries, " << r.evictions << " evictions\n";
  return out.str();
}

namespace {

class Run {
 public:
  Run(const RunConfig& config, PlaneScorer* scorer, const RunHooks& hooks)
      : config_(config), scorer_(scorer), hooks_(hooks), agent_config_(config.agent_config()),
        start_(std::chrono::steady_clock::now()) {
    repository_ = std::make_unique<Repository>(config.repository);
    std::optional<std::filesystem::path> silo_file;
    if (!config.output.silo.empty()) silo_file = config.output.silo;
    silo_ = std::make_unique<HopSilo>(config.silo_capacity, silo_file);
  }

  RunResult execute() {
    std::vector<std::thread> workers;
    if (config_.agents == 1) {
      worker(0);
    } else {
      for (std::size_t a = 0; a < config_.agents; ++a) workers.emplace_back([this, a] { worker(a); });
      for (auto& t : workers) t.join();
    }
    if (worker_error_) std::rethrow_exception(worker_error_);
    return finish();
  }

 private:
  struct Worker {
    std::size_t index = 0;
    std::mt19937_64 rng;
    ObjectiveSchedule schedule;
    std::size_t stagnation = 0;
    std::size_t episode_failures = 0;
    std::optional<AgentState> state;
    std::uint64_t entry_id = 0;
    std::size_t generation = 0;
    std::vector<HistoryPoint> history;
    std::optional<std::size_t> ascension;
  };

  bool time_up() const {
    if (config_.time_limit_seconds <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() >= config_.time_limit_seconds;
  }

  void stop(const char* reason) {
    std::lock_guard lock(report_mutex_);
    if (!stop_.exchange(true)) report_.stop_reason = reason;
  }

  std::size_t top_size(const AgentState& s) const { return s.decks ? s.decks->top.size() : 0; }
  std::size_t bottom_size(const AgentState& s) const { return s.decks ? s.decks->bottom.size() : 0; }

  RepositoryEntry entry_for(const Worker& w, const Hull& hull) const {
    RepositoryEntry e;
    e.polytope = w.state->polytope;
    e.fitness = w.state->fitness;
    e.generation = w.generation;
    e.history = w.history;
    e.ascension_generation = w.ascension;
    e.key = combinatorial_key(hull);
    return e;
  }

  // Draws seeds until one evaluates cleanly (monotone seeds may tie).
  void fresh_seed(Worker& w, bool initial) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Polytope p = random_seed_polytope(config_, w.rng);
      try {
        w.state = make_agent_state(p, w.schedule.active());
      } catch (const Error&) {
        continue;
      }
      w.generation = 0;
      w.history = {{0, w.state->fitness.objective, w.state->fitness.value}};
      w.ascension.reset();
      if (w.state->fitness.target_met) w.ascension = 0;
      const Hull hull = facet_enumeration(w.state->polytope, Arithmetic::Exact);
      const InsertResult inserted = repository_->insert(entry_for(w, hull));
      w.entry_id = inserted.id;
      std::lock_guard lock(report_mutex_);
      if (initial) report_.seeds.push_back({w.index, w.state->fitness});
      else ++report_.fresh_seeds;
      return;
    }
    throw SeedingFailed("no seed polytope could be evaluated");
  }

  void adopt(Worker& w, const RepositoryEntry& entry) {
    try {
      w.state = make_agent_state(entry.polytope, w.schedule.active());
    } catch (const Error&) {
      fresh_seed(w, false);
      return;
    }
    w.entry_id = entry.id;
    w.generation = entry.generation;
    w.history = entry.history;
    w.ascension = entry.ascension_generation;
    std::lock_guard lock(report_mutex_);
    ++report_.steals;
  }

  void record_improvement(Worker& w, std::size_t step, const Hull& hull) {
    const AgentState& s = *w.state;
    w.history.push_back({w.generation, s.fitness.objective, s.fitness.value});
    bool ascended = false;
    if (s.fitness.target_met && !w.ascension) {
      w.ascension = w.generation;
      ascended = true;
    }
    const InsertResult inserted = repository_->insert(entry_for(w, hull));
    if (inserted.accepted) w.entry_id = inserted.id;
    {
      std::lock_guard lock(report_mutex_);
      ++report_.improvements;
      report_.trajectory.push_back({step, w.index, w.generation, s.polytope.size(), top_size(s), bottom_size(s),
                                    s.fitness.objective, s.fitness.value, s.fitness.headline()});
      if (ascended) report_.ascensions.push_back({step, w.index, w.generation, s.fitness, format_polytope(s.polytope)});
    }
    if (ascended && config_.stop_on_first) stop("first-success");
  }

  void worker(std::size_t index) {
    try {
      Worker w;
      w.index = index;
      std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                        static_cast<std::uint32_t>(index)};
      w.rng.seed(seq);
      w.schedule = config_.schedule();
      fresh_seed(w, true);
      if (w.state->fitness.target_met && config_.stop_on_first) stop("first-success");

      while (!stop_) {
        if (time_up()) {
          stop("time-limit");
          break;
        }
        const std::size_t step = steps_.fetch_add(1);
        if (step >= config_.hop_budget) break;

        StepResult r = agent_step(*w.state, w.schedule.active(), scorer_, agent_config_, w.rng);
        silo_->append(r.samples);
        if (scorer_ != nullptr && config_.brain.train && !r.samples.empty()) scorer_->train(r.samples);

        bool switched = false;
        {
          std::lock_guard lock(report_mutex_);
          ++report_.steps;
          if (!r.diagnostic.empty()) ++report_.diagnostics[r.diagnostic];
          if (r.rescaled) ++report_.rescales;
          if (r.next && !r.improved) ++report_.lateral_moves;
        }
        if (r.next) {
          w.state = std::move(*r.next);
          ++w.generation;
        }
        if (r.improved) {
          w.stagnation = 0;
          w.episode_failures = 0;
          record_improvement(w, step, r.hull);
        } else {
          ++w.stagnation;
          ++w.episode_failures;
        }

        const std::size_t before = w.schedule.current;
        schedule_next_objective(w.schedule, w.stagnation);
        if (w.schedule.current != before) {
          switched = true;
          try {
            reevaluate(*w.state, w.schedule.active());
          } catch (const Error&) {
            w.episode_failures = config_.episode_patience;
          }
        }
        if (switched) {
          std::lock_guard lock(report_mutex_);
          ++report_.objective_switches;
        }

        if (w.episode_failures >= config_.episode_patience) {
          repository_->record_failure(w.entry_id);
          w.episode_failures = 0;
          if (auto entry = repository_->steal(w.rng)) adopt(w, *entry);
          else fresh_seed(w, false);
        }
        if (hooks_.stop && hooks_.stop(*repository_, *silo_)) stop("hook");
      }
    } catch (...) {
      std::lock_guard lock(report_mutex_);
      if (!worker_error_) worker_error_ = std::current_exception();
      stop_ = true;
    }
  }

  RunResult finish() {
    RunReport& r = report_;
    r.scenario = to_string(config_.scenario);
    r.mode = to_string(config_.mode);
    r.dimension = config_.dimension;
    r.agents = config_.agents;
    r.seed = config_.seed;
    r.hop_budget = config_.hop_budget;
    if (r.stop_reason.empty()) r.stop_reason = "budget";
    std::sort(r.seeds.begin(), r.seeds.end(), [](const auto& a, const auto& b) { return a.agent < b.agent; });
    double total = 0;
    for (const auto& s : r.seeds) total += s.fitness.value;
    r.mean_seed_value = r.seeds.empty() ? 0 : total / static_cast<double>(r.seeds.size());
    if (auto best = repository_->best()) {
      r.best = best->fitness;
      r.best_polytope = format_polytope(best->polytope);
    }
    r.sample_counts = silo_->label_counts();
    r.samples_dropped = silo_->dropped();
    for (const auto& s : silo_->records()) {
      ++r.samples_checked;
      if (verify_hop_sample(s)) ++r.samples_verified;
    }
    r.repository_size = repository_->size();
    r.evictions = repository_->evictions();

    if (!config_.output.report.empty()) {
      std::ofstream out(config_.output.report);
      if (!out) throw Error("cannot write report " + config_.output.report);
      out << to_json(r).dump(2) << "\n";
    }
    if (!config_.output.snapshot.empty()) repository_->save(config_.output.snapshot);

    RunResult result;
    result.report = std::move(r);
    result.repository = std::move(repository_);
    result.silo = std::move(silo_);
    return result;
  }

  const RunConfig& config_;
  PlaneScorer* scorer_;
  const RunHooks& hooks_;
  const AgentConfig agent_config_;
  const std::chrono::steady_clock::time_point start_;
  std::unique_ptr<Repository> repository_;
  std::unique_ptr<HopSilo> silo_;
  std::atomic<std::size_t> steps_{0};
  std::atomic<bool> stop_{false};
  std::mutex report_mutex_;
  RunReport report_;
  std::exception_ptr worker_error_;
};

}  // namespace

RunResult run_scenario(const RunConfig& config, PlaneScorer* scorer, const RunHooks& hooks) {
  config.validate();
  std::unique_ptr<BrainClient> brain;
  if (scorer == nullptr && !config.brain.address.empty()) {
    brain = std::make_unique<BrainClient>(
        PolicyEndpoint{config.brain.address, config.brain.timeout, config.brain.batch_size, config.brain.backoff});
    scorer = brain.get();
  }
  spdlog::info("run: scenario {}, {} agent(s), budget {}, scorer {}", to_string(config.scenario), config.agents,
               config.hop_budget, scorer != nullptr ? scorer->name() : "uniform");
  Run run(config, scorer, hooks);
  return run.execute();
}

}  // namespace hopper
