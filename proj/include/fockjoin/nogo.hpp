#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "fockjoin/fock_state.hpp"
#include "fockjoin/linear_optics.hpp"
#include "fockjoin/schemes.hpp"

namespace fockjoin {

/// Relative sigma_min (sigma_4 / sigma_1) above which four symmetrized modes
/// count as linearly independent.
inline constexpr double kRankThreshold = 1e-8;

/// phi_1..phi_4 on the four logical modes.
using Phi4 = std::array<Complex, 4>;

/// Coefficient matrix of the symmetrized modes over the four logical
/// propagated modes: rows (phi3*,0,phi1*,0), (phi4*,0,0,phi1*),
/// (0,phi3*,phi2*,0), (0,phi4*,0,phi2*).
Eigen::Matrix4cd build_m_matrix(const Phi4& phi);

/// Exponents of (phi1*, phi2*, phi3*, phi4*).
using Monomial = std::array<int, 4>;

struct SymbolicDeterminant {
    /// Non-cancelled monomials with their integer coefficients.
    std::map<Monomial, long long> polynomial;
    /// Permutations whose product of entries is not structurally zero.
    int contributing_permutations = 0;

    bool is_zero() const { return polynomial.empty(); }
};

/// Exact expansion of det(M) over the 24 permutations, with every entry of M
/// treated as a formal variable (or structural zero).
SymbolicDeterminant symbolic_m_determinant();

/// The four post-projection single-photon modes |u>_0..|u>_3.
struct SymmetrizedModeSet {
    /// 4 x m; row k holds |u>_k in the output-mode basis.
    Eigen::MatrixXcd coeffs;

    /// Descending.
    Eigen::VectorXd singular_values() const;
    /// sigma_4 / sigma_1 (0 for the zero matrix).
    double relative_sigma_min() const;
    int rank(double rel_tol = kRankThreshold) const;
};

/// Rows built from propagated modes chi_i = sum_j u(i,j) |j> and the
/// projector phi (given over the chi basis), with logical modes 1..4 mapped
/// to `logical_modes`.
SymmetrizedModeSet symmetrized_modes(const ModeUnitary& u, const ProjectorSpec& phi,
                                     const std::array<int, 4>& logical_modes = {0, 1, 2, 3});

enum class Verdict { RankDeficient, CounterexampleFound };

std::string to_string(Verdict v);

struct NogoCertificate {
    int modes = 0;
    long trials = 0;
    double max_sigma_min = 0.0;
    std::uint64_t argmax_seed = 0;
    long optimizer_iterations = 0;
    double threshold = kRankThreshold;
    Verdict verdict = Verdict::RankDeficient;
};

/// Random phi: complex Gaussian over m modes, normalized.
ProjectorSpec random_projector(int m, std::uint64_t seed);

/// Max over trials of relative sigma_min for Haar-random u and random phi.
/// Trials run in parallel; each trial draws from its own derived seed.
NogoCertificate rank_scan(int m, long trials, std::uint64_t seed);

/// Same loop, single-threaded. Bit-identical to rank_scan.
NogoCertificate rank_scan_serial(int m, long trials, std::uint64_t seed);

/// Sensitivity control: the four rows are independent random vectors
/// instead of symmetrized modes.
NogoCertificate rank_scan_control(int m, long trials, std::uint64_t seed);

enum class SearchObjective { SigmaMin, SigmaThird };

/// Nelder-Mead maximization of the chosen singular value over unitaries
/// (m^2 Givens/phase angles) and projectors (2m reals, normalized).
NogoCertificate adversarial_search(int m, int restarts, int iterations, std::uint64_t seed,
                                   SearchObjective objective = SearchObjective::SigmaMin);

/// Unitary from m^2 real parameters: m(m-1)/2 Givens rotations (angle and
/// phase each) followed by m diagonal phases.
ModeUnitary unitary_from_angles(int m, const double* params);

struct ProjectionCheck {
    /// Fock pipeline: Pi U |Psi_i>, unnormalized, on m modes.
    FockState projected;
    /// sum_k alpha_k |u>_k over the output modes.
    Eigen::VectorXcd analytic;
    /// max_j |projected_j - analytic_j|.
    double max_deviation = 0.0;
    /// Rank of the symmetrized modes: the projected state always lies in a
    /// span of this dimension, never 4.
    int span_rank = 0;
};

/// Builds alpha_0 a+_1 a+_3 + alpha_1 a+_1 a+_4 + alpha_2 a+_2 a+_3 +
/// alpha_3 a+_2 a+_4 on the logical modes, evolves it with apply_unitary,
/// detects one photon in phi with apply_projector, and compares against the
/// symmetrized-mode formula.
ProjectionCheck end_to_end_projection_check(const Amplitudes4& alpha, const ModeUnitary& u, const ProjectorSpec& phi,
                                            const std::array<int, 4>& logical_modes = {0, 1, 2, 3});

} // namespace fockjoin
