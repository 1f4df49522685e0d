#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/kernels.hpp"
#include "quadcert/oracle.hpp"
#include "quadcert/qclass.hpp"
#include "quadcert/verify.hpp"

namespace {

using namespace quadcert;

void BM_IntegrateKernelProduct(benchmark::State& state) {
    const double half[] = {0.5};
    for (auto _ : state) {
        const auto r = integrate(
            [](double t) { return t * (1 - t) * (2 * t - 1) * std::exp(t); }, 0.0, 1.0,
            kDefaultOracleTol, half);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_IntegrateKernelProduct);

void BM_SimpsonIdentity(benchmark::State& state) {
    const SmoothFunction& f = find_corpus_entry("exp")->function;
    for (auto _ : state) benchmark::DoNotOptimize(simpson_identity_rhs(f, {1.0, 3.0}));
}
BENCHMARK(BM_SimpsonIdentity);

void BM_LogGamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(x));
        x = x > 99.0 ? 0.5 : x + 0.37;
    }
}
BENCHMARK(BM_LogGamma);

void BM_QMembership(benchmark::State& state) {
    const auto nx = static_cast<std::size_t>(state.range(0));
    const auto g = third_derivative_power(find_corpus_entry("x5")->function, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(test_q_membership(g, {0.0, 2.0}, nx, nx - 2).worst_violation);
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(nx));
}
BENCHMARK(BM_QMembership)->Arg(21)->Arg(51)->Arg(101)->Complexity();

void BM_TightestBound(benchmark::State& state) {
    const auto& grid = default_q_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            tightest_bound(Rule::corrected_trapezoid, 1.0, {3.0, 24.0}, grid).bound);
    }
}
BENCHMARK(BM_TightestBound);

void BM_VerifyIdentities(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_identities(1e-9).passed());
}
BENCHMARK(BM_VerifyIdentities)->Unit(benchmark::kMillisecond);

void BM_VerifyDomination(benchmark::State& state) {
    const std::vector<double> grid{1.0, 1.5, 2.0, 3.0, 5.0};
    for (auto _ : state) benchmark::DoNotOptimize(verify_domination(grid, 1e-12).passed());
}
BENCHMARK(BM_VerifyDomination)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
