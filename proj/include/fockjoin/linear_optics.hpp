#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockjoin/fock_state.hpp"

namespace fockjoin {

/// Tolerance on ||u u^dagger - I||_max accepted by ModeUnitary.
inline constexpr double kUnitarityTolerance = 1e-10;

/// m x m unitary acting on creation operators: a+_i -> sum_j u(i,j) a+_j.
///
/// For a single photon with amplitude vector c over modes the action is
/// c' = u^T c, so an operator O written in the usual ket convention enters
/// as ModeUnitary::from_operator(O).
class ModeUnitary {
public:
    /// Throws DimensionError if not square or not unitary within `tol`.
    static ModeUnitary from_matrix(Eigen::MatrixXcd u, double tol = kUnitarityTolerance);

    /// Wraps the transpose of a ket-space operator.
    static ModeUnitary from_operator(const Eigen::MatrixXcd& op, double tol = kUnitarityTolerance);

    static ModeUnitary identity(int m);

    int dim() const noexcept { return static_cast<int>(u_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return u_; }
    Complex operator()(int i, int j) const { return u_(i, j); }

    ModeUnitary adjoint() const;

    /// Network that applies *this first and `next` afterwards.
    ModeUnitary then(const ModeUnitary& next) const;

    /// ||u u^dagger - I||_max.
    double unitarity_error() const;

private:
    explicit ModeUnitary(Eigen::MatrixXcd u) : u_(std::move(u)) {}
    Eigen::MatrixXcd u_;
};

/// Single-photon detection mode phi = sum_h phi_h |chi_h>; the annihilator
/// applied is sum_h conj(phi_h) b_h.
class ProjectorSpec {
public:
    /// Throws NormalizationError if sum |phi_h|^2 is not 1 within 1e-10.
    explicit ProjectorSpec(Eigen::VectorXcd phi);

    /// Projector over `modes` modes supported on a few listed ones.
    static ProjectorSpec on_modes(int modes, const std::vector<std::pair<int, Complex>>& entries);

    int dim() const noexcept { return static_cast<int>(phi_.size()); }
    const Eigen::VectorXcd& phi() const noexcept { return phi_; }

private:
    Eigen::VectorXcd phi_;
};

struct ProjectionResult {
    /// Renormalized post-measurement state; the zero state when `null`.
    FockState state;
    /// Pi|s> before renormalization.
    FockState unnormalized;
    /// ||Pi|s>||^2. This is the detection probability whenever the
    /// projector's support holds at most one photon per term (every use in
    /// the schemes); in general it is the mean photon number in mode phi.
    double probability = 0.0;
    bool null = false;
};

/// Linear-optical evolution. Norm and per-term photon number are preserved.
FockState apply_unitary(const FockState& s, const ModeUnitary& u);

/// Single-photon projection: annihilates one photon in mode phi.
ProjectionResult apply_projector(const FockState& s, const ProjectorSpec& p);

/// Vacuum check: keeps the terms with no photon on any listed mode.
/// Modes stay in the register. probability is the kept fraction of ||s||^2.
ProjectionResult postselect_vacuum(const FockState& s, const std::vector<int>& modes);

/// Identity except the block [[cos t, e^{i p} sin t], [-e^{-i p} sin t, cos t]] on (i, j).
ModeUnitary beamsplitter(int m, int i, int j, double theta, double phase);

/// (1/sqrt 2)[[1, 1], [1, -1]] on (i, j).
ModeUnitary hadamard_pair(int m, int i, int j);

/// a+_i -> e^{i phi} a+_i.
ModeUnitary phase_shift(int m, int i, double phi);

/// Mode i is routed to mode perm[i].
ModeUnitary permutation(const std::vector<int>& perm);

/// Haar-distributed unitary from QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q. Deterministic per seed.
ModeUnitary haar_random_unitary(int m, std::uint64_t seed);

} // namespace fockjoin
