#include <heis/hermite.hpp>
#include <heis/profiles.hpp>
#include <heis/transform.hpp>
#include <heis/wigner.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace heis;

static void BM_hermite_all(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<double> out(n + 1);
    double x = 0.3;
    for (auto _ : st) {
        hermite_all(n, x, out.data());
        benchmark::DoNotOptimize(out.data());
        x += 1e-9;
    }
    st.SetItemsProcessed(st.iterations() * (n + 1));
}
BENCHMARK(BM_hermite_all)->Arg(24)->Arg(64)->Arg(200);

static void BM_wigner1_all(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<cplx> out((n + 1) * (n + 1));
    for (auto _ : st) {
        wigner1_all(n, 0.7, 0.4, -0.9, out.data());
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * (n + 1) * (n + 1));
}
BENCHMARK(BM_wigner1_all)->Arg(8)->Arg(24)->Arg(48);

static SampledField bench_field() {
    return SampledField::sample(GridSpec{}, [](const PhysPoint& w) {
        return std::exp(-w.norm_Y2() - w.s * w.s);
    });
}

static void BM_forward_factored_slice(benchmark::State& st) {
    const auto f = bench_field();
    std::vector<cplx> out;
    for (auto _ : st) {
        forward_factored_slice(f, 0.8, static_cast<int>(st.range(0)), out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_forward_factored_slice)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_inverse(benchmark::State& st) {
    LambdaGridParams p;
    p.points_per_sign = 40;
    const LambdaGrid grid(p);
    GridSpec g;
    g.ny = g.neta = g.ns = 17;
    const auto t = tabulate(heat_profile(1.0, 1), static_cast<int>(st.range(0)), grid, "heat");
    for (auto _ : st) benchmark::DoNotOptimize(inverse(t, g));
}
BENCHMARK(BM_inverse)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
