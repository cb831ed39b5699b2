#include <benchmark/benchmark.h>

#include "liegrade/galgebra.hpp"
#include "liegrade/prolong.hpp"
#include "liegrade/rootsys.hpp"
#include "liegrade/spencer.hpp"
#include "liegrade/subadjoint.hpp"

using namespace liegrade;

namespace {

const char* const kCases[] = {"B3", "D4", "F4", "E6", "E7", "E8"};

void BM_ChevalleyJacobi(benchmark::State& state) {
  const auto rs = build_root_system(DynkinLabel::parse(kCases[state.range(0)]));
  const auto L = chevalley_table(rs);
  for (auto _ : state) benchmark::DoNotOptimize(check_jacobi(L));
  state.SetLabel(kCases[state.range(0)]);
}
BENCHMARK(BM_ChevalleyJacobi)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BuildCase(benchmark::State& state) {
  for (auto _ : state) {
    auto c = build_case(kCases[state.range(0)]);
    benchmark::DoNotOptimize(build_g(c));
  }
  state.SetLabel(kCases[state.range(0)]);
}
BENCHMARK(BM_BuildCase)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

// Degree -1 and -2 prolongation; exact for the small cases, certified mod p for E.
void BM_Prolongation(benchmark::State& state) {
  const char* id = kCases[state.range(0)];
  const auto g = build_g(build_case(id));
  const auto data = g_prolong_input(g);
  ProlongOptions opt;
  opt.k_max = 2;
  opt.mode = id[0] == 'E' ? SolveMode::ModPCertify : SolveMode::Exact;
  opt.hints[1] = data.ad_minus_one;
  for (auto _ : state) benchmark::DoNotOptimize(prolongation(data.input, opt));
  state.SetLabel(id);
}
BENCHMARK(BM_Prolongation)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_RankModes(benchmark::State& state) {
  const auto g = build_g(build_case("F4"));
  const auto sp = spencer_spaces(g, -1);
  SparseRationalMatrix m(0, sp.dim_C1());
  for (Index x : g.part(-1)) m.append_row(ad_cochain(g, sp, x));
  const auto mode = static_cast<SolveMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m, mode));
}
BENCHMARK(BM_RankModes)
    ->Arg(static_cast<int>(SolveMode::Exact))
    ->Arg(static_cast<int>(SolveMode::ModP))
    ->Arg(static_cast<int>(SolveMode::ModPCertify));

void BM_SummandTable(benchmark::State& state) {
  const auto c = build_case("E7");
  const auto g = build_g(c);
  for (auto _ : state) benchmark::DoNotOptimize(summand_cI_table(c, g, static_cast<int>(-state.range(0))));
}
BENCHMARK(BM_SummandTable)->DenseRange(1, 7, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
