// Microbenchmarks for the selectors and the shared numerical primitives.
// Run with: build/benchmarks/fsel_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <Eigen/QR>

#include "fsel/bss.hpp"
#include "fsel/datagen.hpp"
#include "fsel/risk.hpp"
#include "fsel/rng.hpp"
#include "fsel/samplers.hpp"

namespace {

using fsel::Index;

Eigen::MatrixXd orthonormal(Index d, Index ell, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd g(d, ell);
    for (Index j = 0; j < ell; ++j) {
        for (Index i = 0; i < d; ++i) {
            g(i, j) = fsel::standard_normal(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ() * Eigen::MatrixXd::Identity(d, ell);
}

void BM_BssSelect(benchmark::State& state) {
    const Index d = state.range(0);
    const Index ell = state.range(1);
    const Index r = 9 * ell;
    const Eigen::MatrixXd vt = orthonormal(d, ell, 1).transpose();
    const fsel::BssConfig config = fsel::BssConfig::for_rank(ell, r);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsel::bss_select(vt, config));
    }
}
BENCHMARK(BM_BssSelect)
    ->Args({200, 10})
    ->Args({1000, 30})
    ->Args({5000, 50})
    ->Unit(benchmark::kMillisecond);

void BM_LeverageSample(benchmark::State& state) {
    const Index d = state.range(0);
    const Index ell = 20;
    fsel::SvdFactors svd;
    svd.u = orthonormal(d, ell, 2);
    svd.sigma = Eigen::VectorXd::Ones(ell);
    svd.v = Eigen::MatrixXd::Identity(ell, ell);
    svd.rho = ell;
    const auto profile = fsel::leverage_scores(svd);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsel::leverage_sample(profile, 9 * ell, ++seed));
    }
}
BENCHMARK(BM_LeverageSample)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_RrqrSelect(benchmark::State& state) {
    const Index d = state.range(0);
    const auto data = fsel::synth_classification({30, d, 30, 3, 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsel::rrqr_select(data.x, 100));
    }
}
BENCHMARK(BM_RrqrSelect)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ThinSvd(benchmark::State& state) {
    const Index d = state.range(0);
    const auto data = fsel::synth_classification({40, d, 20, 4, 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsel::thin_svd(data.x));
    }
}
BENCHMARK(BM_ThinSvd)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_RiskEvaluation(benchmark::State& state) {
    const Index n = state.range(0);
    std::mt19937_64 rng(5);
    Eigen::MatrixXd g(n, n + 3);
    for (Index j = 0; j < n + 3; ++j) {
        for (Index i = 0; i < n; ++i) {
            g(i, j) = fsel::standard_normal(rng);
        }
    }
    const Eigen::MatrixXd k = g * g.transpose();
    Eigen::VectorXd z(n);
    for (Index i = 0; i < n; ++i) {
        z(i) = fsel::standard_normal(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsel::risk(k, z, 0.3, 1.0));
    }
}
BENCHMARK(BM_RiskEvaluation)->Arg(30)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
