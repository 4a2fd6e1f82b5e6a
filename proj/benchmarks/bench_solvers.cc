#include <benchmark/benchmark.h>

#include <vector>

#include "polybound/flow_lift.h"
#include "polybound/instance.h"
#include "polybound/oracle.h"
#include "polybound/reductions.h"
#include "polybound/scc_solver.h"
#include "polybound/simple_solver.h"

namespace polybound {
namespace {

Instance simple_instance(int n, int k, uint64_t seed) {
  RandomInstanceParams p;
  p.n = n;
  p.k = k;
  p.simple = true;
  p.max_extra = 3;
  p.seed = seed;
  return random_instance(p);
}

Instance general_instance(int n, int k, uint64_t seed) {
  RandomInstanceParams p;
  p.n = n;
  p.k = k;
  p.max_x = 2;
  p.max_extra = 2;
  p.seed = seed;
  return random_instance(p);
}

void BM_SimpleBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = simple_instance(n, 2 * n, 10);
  for (auto _ : state) {
    SimpleResult r = simple_bound(inst);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SimpleBound)->Arg(6)->Arg(12)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Separate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = simple_instance(n, 2 * n, 11);
  SimpleFlowGraph g = build_graph(inst);
  std::vector<Rational> delta(inst.k(), Rational(1, 2));
  for (auto _ : state) {
    SeparationVerdict v = separate(inst, g, delta);
    benchmark::DoNotOptimize(v.feasible);
  }
}
BENCHMARK(BM_Separate)->Arg(8)->Arg(16)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_PolymatroidBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = general_instance(n, n + 2, 12);
  for (auto _ : state) {
    PolymatroidResult r = polymatroid_bound(inst);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_PolymatroidBound)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_SccBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = general_instance(n, n + 2, 13);
  for (auto _ : state) {
    SccResult r = scc_bound(inst);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SccBound)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_Lift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = simple_instance(n, 2 * n, 14);
  SimpleResult opt = simple_bound(inst);
  for (auto _ : state) {
    LiftResult r = lift(inst, opt.delta);
    benchmark::DoNotOptimize(r.witness.delta.data());
  }
}
BENCHMARK(BM_Lift)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace polybound

BENCHMARK_MAIN();
