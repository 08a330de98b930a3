// Serial reference vs OpenMP kernels on the two hot loops: the phase
// distribution and the splitter amplitude matrix.

#include "qfock/fock.hpp"
#include "qfock/kernels.hpp"

#include <benchmark/benchmark.h>

namespace {

using qfock::Exec;

qfock::Vec coherent_amps(int n_max) {
    const double r = std::sqrt(0.25 * n_max);
    return qfock::coherent_state(qfock::cplx(r, 0.3 * r), n_max, qfock::TruncationPolicy::allow_tail)
        .amps();
}

void bm_phase_density(benchmark::State& st, Exec exec) {
    const int n_max = static_cast<int>(st.range(0));
    const int points = static_cast<int>(st.range(1));
    const qfock::Vec amps = coherent_amps(n_max);
    for (auto _ : st) {
        auto d = qfock::kernels::phase_density(amps, -qfock::kPi, points, exec);
        benchmark::DoNotOptimize(d.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(points) * (n_max + 1));
}

void bm_split(benchmark::State& st, Exec exec) {
    const int n_max = static_cast<int>(st.range(0));
    const qfock::Vec amps = coherent_amps(n_max);
    const qfock::cplx rho(std::sqrt(0.5), 0.0);
    const qfock::cplx tau(0.0, std::sqrt(0.5));
    for (auto _ : st) {
        auto m = qfock::kernels::split_amplitudes(amps, rho, tau, exec);
        benchmark::DoNotOptimize(m.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n_max + 1) * (n_max + 2) / 2);
}

void phase_args(benchmark::internal::Benchmark* b) {
    for (int n : {64, 256, 1024}) {
        b->Args({n, 2048});
    }
}

void split_args(benchmark::internal::Benchmark* b) {
    for (int n : {64, 256, 800}) {
        b->Args({n});
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_phase_density, serial, Exec::serial)->Apply(phase_args)->UseRealTime();
BENCHMARK_CAPTURE(bm_phase_density, omp, Exec::parallel)->Apply(phase_args)->UseRealTime();
BENCHMARK_CAPTURE(bm_split, serial, Exec::serial)->Apply(split_args)->UseRealTime();
BENCHMARK_CAPTURE(bm_split, omp, Exec::parallel)->Apply(split_args)->UseRealTime();

BENCHMARK_MAIN();
