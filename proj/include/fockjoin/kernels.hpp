#pragma once

#include <Eigen/Dense>

#include "fockjoin/fock_state.hpp"

// Data-parallel kernels. Each OpenMP kernel has a serial twin computing the
// same result in the same reduction order, so outputs are bit-identical and
// independent of the thread count. The serial versions are the reference
// used by tests and the benchmark.

namespace fockjoin::kernels {

/// Expansion of every term under a+_i -> sum_j u(i,j) a+_j.
FockState expand_unitary_serial(const FockState& s, const Eigen::MatrixXcd& u);
FockState expand_unitary_omp(const FockState& s, const Eigen::MatrixXcd& u);

/// Threads the OpenMP kernels will use (1 when built without OpenMP).
int max_threads();

} // namespace fockjoin::kernels

#include <cstdint>
#include <functional>

namespace fockjoin::kernels {

struct ScanResult {
    double max_value = 0.0;
    long argmax_trial = -1;
    std::uint64_t argmax_seed = 0;
};

/// Seed of trial `index` derived from `base` (splitmix64 finalizer).
std::uint64_t trial_seed(std::uint64_t base, long index);

/// Max of trial(trial_seed(base, k)) over k in [0, trials). Ties go to the
/// lowest index.
ScanResult max_scan_serial(long trials, std::uint64_t base, const std::function<double(std::uint64_t)>& trial);
ScanResult max_scan_omp(long trials, std::uint64_t base, const std::function<double(std::uint64_t)>& trial);

} // namespace fockjoin::kernels
