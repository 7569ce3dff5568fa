#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "riparian/riparian.hpp"

using namespace riparian;

namespace {

InflowProfile random_profile(std::size_t n, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return InflowProfile(std::move(v));
}

AlphaParams random_alphas(std::size_t n) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n - 1);
    for (auto& x : v) x = u(rng);
    return AlphaParams(std::move(v));
}

void BM_Shapley(benchmark::State& state) {
    const auto e = random_profile(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(shapley(e));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Shapley)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

void BM_EgalitarianPartialTransfer(benchmark::State& state) {
    const auto e = random_profile(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(egalitarian_partial_transfer(e));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EgalitarianPartialTransfer)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

void BM_AlphaRule(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto e = random_profile(n);
    const auto a = random_alphas(n);
    for (auto _ : state) benchmark::DoNotOptimize(alpha_rule(e, a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AlphaRule)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

// The transfer simulation is quadratic; kept small.
void BM_TransferSimulation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto e = random_profile(n);
    const auto a = random_alphas(n);
    for (auto _ : state) benchmark::DoNotOptimize(oracle_transfer_simulation(e, a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransferSimulation)->RangeMultiplier(4)->Range(4, 1024)->Complexity(benchmark::oNSquared);

void BM_FitNile(benchmark::State& state) {
    const auto ds = builtin_nile();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_family(ds.inflows, *ds.withdrawals, Family::Compromise));
    }
}
BENCHMARK(BM_FitNile);

void BM_IntegrateNile(benchmark::State& state) {
    const auto ds = builtin_nile();
    const auto rule = state.range(0) == 64 ? QuadratureRule::GaussLegendre64
                                           : QuadratureRule::GaussLegendre128;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            integrate_distance(ds.inflows, *ds.withdrawals, Family::PartialCompromise, rule));
    }
}
BENCHMARK(BM_IntegrateNile)->Arg(64)->Arg(128);

void BM_AxiomSuite(benchmark::State& state) {
    const auto rule = RuleSpec::shapley();
    const std::vector<AxiomId> axioms(kAllAxioms.begin(), kAllAxioms.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_axiom_suite(rule, axioms, 1000, 42));
    }
}
BENCHMARK(BM_AxiomSuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
