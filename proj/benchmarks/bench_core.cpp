#include "casoratia/casoratian.hpp"
#include "casoratia/families.hpp"

#include <benchmark/benchmark.h>

using namespace casoratia;

namespace {

void BM_eigen_poly(benchmark::State& state, const char* id) {
    const FamilySpec& spec = family(id);
    const long n = state.range(0);
    ParamPoint p = sample_params(spec, 1);
    for (auto _ : state) {
        RingPoly poly = eigen_poly(spec, n, p);
        benchmark::DoNotOptimize(poly);
    }
}
BENCHMARK_CAPTURE(BM_eigen_poly, W, "W")->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_CAPTURE(BM_eigen_poly, AW, "AW")->Arg(4)->Arg(8)->Arg(12);

void BM_casoratian(benchmark::State& state, const char* id) {
    const FamilySpec& spec = family(id);
    const long m = state.range(0);
    ParamPoint p = sample_params(spec, 1);
    const QBase* qb = p.qbase ? &*p.qbase : nullptr;
    std::vector<RingPoly> fs;
    for (long d = 1; d <= m; ++d) fs.push_back(eigen_poly(spec, d, p));
    for (auto _ : state) {
        RingPoly w = casoratian(fs, qb);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK_CAPTURE(BM_casoratian, W, "W")->DenseRange(2, 5);
BENCHMARK_CAPTURE(BM_casoratian, AW, "AW")->DenseRange(2, 5);

void BM_p_dn(benchmark::State& state, const char* id) {
    const FamilySpec& spec = family(id);
    ParamPoint p = sample_params(spec, 1);
    IndexSet D;
    for (long d = 1; d <= state.range(0); ++d) D.push_back(d);
    for (auto _ : state) {
        RingPoly poly = p_dn(spec, D, 2, p);
        benchmark::DoNotOptimize(poly);
    }
}
BENCHMARK_CAPTURE(BM_p_dn, W, "W")->DenseRange(1, 3);
BENCHMARK_CAPTURE(BM_p_dn, AW, "AW")->DenseRange(1, 3);

void BM_xibar_dual(benchmark::State& state, const char* id) {
    const FamilySpec& spec = family(id);
    ParamPoint p = sample_params(spec, 1);
    IndexSet D = {1, 3};
    const long N = state.range(0);
    for (auto _ : state) {
        DualData dual = dualize(spec, D, N, p);
        RingPoly poly = xibar(spec, dual.dbar, dual.lambda_bar);
        benchmark::DoNotOptimize(poly);
    }
}
BENCHMARK_CAPTURE(BM_xibar_dual, W, "W")->DenseRange(3, 6);
BENCHMARK_CAPTURE(BM_xibar_dual, AW, "AW")->DenseRange(3, 6);

}  // namespace

BENCHMARK_MAIN();
