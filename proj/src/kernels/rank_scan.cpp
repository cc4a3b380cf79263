#include "fockjoin/kernels.hpp"

#include <vector>

namespace fockjoin::kernels {

namespace {

ScanResult argmax(const std::vector<double>& values, const std::vector<std::uint64_t>& seeds)
{
    ScanResult r;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (r.argmax_trial < 0 || values[k] > r.max_value) {
            r.max_value = values[k];
            r.argmax_trial = static_cast<long>(k);
            r.argmax_seed = seeds[k];
        }
    }
    return r;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t base, long index)
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ScanResult max_scan_serial(long trials, std::uint64_t base, const std::function<double(std::uint64_t)>& trial)
{
    std::vector<double> values(static_cast<std::size_t>(trials));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
    for (long k = 0; k < trials; ++k) {
        seeds[k] = trial_seed(base, k);
        values[k] = trial(seeds[k]);
    }
    return argmax(values, seeds);
}

ScanResult max_scan_omp(long trials, std::uint64_t base, const std::function<double(std::uint64_t)>& trial)
{
    std::vector<double> values(static_cast<std::size_t>(trials));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
    for (long k = 0; k < trials; ++k) {
        seeds[k] = trial_seed(base, k);
        values[k] = trial(seeds[k]);
    }
    return argmax(values, seeds);
}

} // namespace fockjoin::kernels
