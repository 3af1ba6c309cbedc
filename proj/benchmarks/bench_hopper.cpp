#include "hopper/agent.hpp"
#include "hopper/arrangement.hpp"
#include "hopper/config.hpp"
#include "hopper/hull.hpp"
#include "hopper/prismatoid.hpp"
#include "hopper/seeding.hpp"

#include <benchmark/benchmark.h>

using namespace hopper;

namespace {

const Polytope& data_prismatoid() {
  static const Polytope p = read_polytope_file(HOPPER_DATA_DIR "/prismatoid_24.txt");
  return p;
}

Polytope sphere_polytope(std::size_t n, std::size_t d) {
  RunConfig c;
  c.scenario = Scenario::Neighbourly;
  c.dimension = d;
  c.vertices = n;
  std::mt19937_64 rng(n * 31 + d);
  return random_seed_polytope(c, rng);
}

void BM_FacetEnumerationExact(benchmark::State& state) {
  const Polytope p = sphere_polytope(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(facet_enumeration(p, Arithmetic::Exact));
}
BENCHMARK(BM_FacetEnumerationExact)->Args({10, 4})->Args({12, 5})->Args({16, 5})->Unit(benchmark::kMillisecond);

void BM_FacetEnumerationFloat(benchmark::State& state) {
  const Polytope p = sphere_polytope(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(facet_enumeration(p, Arithmetic::Float));
}
BENCHMARK(BM_FacetEnumerationFloat)->Args({10, 4})->Args({12, 5})->Args({16, 5})->Unit(benchmark::kMillisecond);

void BM_DataPrismatoid(benchmark::State& state) {
  for (auto _ : state) {
    const PrismatoidView v = analyze_prismatoid(data_prismatoid());
    benchmark::DoNotOptimize(defect(v));
  }
}
BENCHMARK(BM_DataPrismatoid)->Unit(benchmark::kMillisecond);

void BM_ArrangementBuild(benchmark::State& state) {
  const Polytope p = sphere_polytope(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(ArrangementCache::build(p));
}
BENCHMARK(BM_ArrangementBuild)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ArrangementReplace(benchmark::State& state) {
  const Polytope p = sphere_polytope(14, 5);
  const ArrangementCache cache = ArrangementCache::build(p);
  const Polytope q = p.with_vertex_replaced(0, sphere_polytope(6, 5).vertex(0));
  for (auto _ : state) benchmark::DoNotOptimize(cache.replaced(q, 0));
}
BENCHMARK(BM_ArrangementReplace)->Unit(benchmark::kMillisecond);

void BM_AgentStep(benchmark::State& state) {
  RunConfig c;
  c.scenario = static_cast<Scenario>(state.range(0));
  c.dimension = 4;
  c.vertices = 8;
  c.top_vertices = 5;
  c.bottom_vertices = 5;
  std::mt19937_64 rng(7);
  const Objective objective = c.schedule().active();
  const AgentState start = make_agent_state(random_seed_polytope(c, rng), objective);
  for (auto _ : state) benchmark::DoNotOptimize(agent_step(start, objective, nullptr, c.agent_config(), rng));
  state.SetLabel(to_string(c.scenario));
}
BENCHMARK(BM_AgentStep)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
