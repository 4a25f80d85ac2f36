// serial reference vs OpenMP kernels: FGM contour loop, FL recursion, Monte Carlo paths
#include <benchmark/benchmark.h>

#include "sbar/grid_policy.hpp"
#include "sbar/oracle.hpp"
#include "sbar/pricers.hpp"

using namespace sbar;

namespace {

OptionContract contract(int N) {
    OptionContract c;
    c.L = 0.8;
    c.U = 1.2;
    c.N = N;
    return c;
}

LevyModel model() { return LevyModel::kou({}, 0.05, 0.02); }

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_FgmDouble(benchmark::State& s) {
    auto c = contract(252);
    auto m = model();
    auto g = build_grid(static_cast<int>(s.range(0)), default_xmax(c, m));
    FgmOptions o;
    o.exec = exec_of(s);
    for (auto _ : s)
        benchmark::DoNotOptimize(price_fgm_double(c, m, g, FilterSpec::exponential(), {}, 1e-8, 5, o).price);
}

void BM_Fl(benchmark::State& s) {
    auto c = contract(52);
    auto m = model();
    auto g = build_grid(static_cast<int>(s.range(0)), default_xmax(c, m));
    for (auto _ : s) benchmark::DoNotOptimize(price_fl(c, m, g, FilterSpec::none(), exec_of(s)).price);
}

void BM_MonteCarlo(benchmark::State& s) {
    auto c = contract(52);
    auto m = model();
    OracleConfig o;
    o.mc_paths = s.range(0);
    o.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(mc_price(c, m, o).price);
}

} // namespace

BENCHMARK(BM_FgmDouble)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Fl)->ArgsProduct({{4096, 1 << 14}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarlo)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
