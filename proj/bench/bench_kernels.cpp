// Serial reference vs OpenMP kernels. Run with --benchmark_counters_tabular=true.

#include <benchmark/benchmark.h>

#include "fockjoin/kernels.hpp"
#include "fockjoin/linear_optics.hpp"
#include "fockjoin/nogo.hpp"

using namespace fockjoin;
using namespace fockjoin::kernels;

namespace {

// Every n-photon basis state on m modes with equal weight.
FockState uniform_state(int m, int n)
{
    StateBuilder b(m);
    Occupation occ(static_cast<std::size_t>(m), 0);
    auto rec = [&](auto&& self, int mode, int left) -> void {
        if (mode == m - 1) {
            occ[static_cast<std::size_t>(mode)] = left;
            b.add(occ, 1.0);
            return;
        }
        for (int k = left; k >= 0; --k) {
            occ[static_cast<std::size_t>(mode)] = k;
            self(self, mode + 1, left - k);
        }
    };
    rec(rec, 0, n);
    FockState s = std::move(b).build();
    return s.normalized();
}

template <FockState (*Kernel)(const FockState&, const Eigen::MatrixXcd&)>
void BM_Expand(benchmark::State& st)
{
    const int m = static_cast<int>(st.range(0));
    const int n = static_cast<int>(st.range(1));
    const FockState s = uniform_state(m, n);
    const Eigen::MatrixXcd u = haar_random_unitary(m, 1).matrix();
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(s, u));
    st.counters["terms"] = static_cast<double>(s.size());
}

double sigma_trial(std::uint64_t seed)
{
    return symmetrized_modes(haar_random_unitary(6, seed), random_projector(6, seed ^ 0x5bd1e995)).relative_sigma_min();
}

void BM_ScanSerial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(max_scan_serial(st.range(0), 7, sigma_trial));
}

void BM_ScanOmp(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(max_scan_omp(st.range(0), 7, sigma_trial));
    st.counters["threads"] = max_threads();
}

} // namespace

BENCHMARK(BM_Expand<expand_unitary_serial>)->Name("expand/serial")->Args({6, 3})->Args({8, 4})->Args({10, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expand<expand_unitary_omp>)->Name("expand/omp")->Args({6, 3})->Args({8, 4})->Args({10, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Name("rank_scan/serial")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanOmp)->Name("rank_scan/omp")->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
