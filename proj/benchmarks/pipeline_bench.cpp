#include <benchmark/benchmark.h>

#include "cpforge/eclipse.hpp"
#include "cpforge/inject.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"
#include "cpforge/pipeline.hpp"

namespace {

using namespace cpforge;
using passes::PassId;

void BM_InjectGolfers(benchmark::State& state) {
  auto g = pipeline::golfers(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frontend::load(g.model, g.data));
}
BENCHMARK(BM_InjectGolfers)->Arg(4)->Arg(8);

void BM_CompositionFlattening(benchmark::State& state) {
  auto g = pipeline::golfers(static_cast<int>(state.range(0)));
  auto m = frontend::load(g.model, g.data);
  for (auto _ : state)
    benchmark::DoNotOptimize(passes::run_chain(m, {PassId::FlattenClasses, PassId::FlattenRecords}));
}
BENCHMARK(BM_CompositionFlattening)->Arg(4)->Arg(8);

void BM_UnrollQueens(benchmark::State& state) {
  auto q = pipeline::nqueens(static_cast<int>(state.range(0)));
  auto m = frontend::load(q.model, q.data);
  for (auto _ : state)
    benchmark::DoNotOptimize(passes::run_chain(m, {PassId::FlattenClasses, PassId::UnrollLoops}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UnrollQueens)->RangeMultiplier(2)->Range(5, 40)->Complexity(benchmark::oNSquared);

void BM_EmitQueens(benchmark::State& state) {
  auto q = pipeline::nqueens(static_cast<int>(state.range(0)));
  auto m = passes::run_chain(frontend::load(q.model, q.data), {PassId::FlattenClasses, PassId::UnrollLoops}).model;
  for (auto _ : state) benchmark::DoNotOptimize(eclipse::emit(eclipse::to_eclipse(m)));
}
BENCHMARK(BM_EmitQueens)->Arg(10)->Arg(20);

void BM_GolfersPipeline(benchmark::State& state) {
  auto g = pipeline::golfers(4);
  std::vector<PassId> chain{PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums};
  for (auto _ : state)
    benchmark::DoNotOptimize(pipeline::run_text("", g.model, g.data, pipeline::Target::Eclipse, chain));
}
BENCHMARK(BM_GolfersPipeline);

void BM_OracleQueens(benchmark::State& state) {
  auto q = pipeline::nqueens(static_cast<int>(state.range(0)));
  auto m = frontend::load(q.model, q.data);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solutions(m));
}
BENCHMARK(BM_OracleQueens)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
