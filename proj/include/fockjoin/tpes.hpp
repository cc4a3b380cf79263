#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "fockjoin/fock_state.hpp"
#include "fockjoin/schemes.hpp"

namespace fockjoin {

// Photons carrying a polarization and a path qubit. Photon p of a register
// owns modes 4p..4p+3 = (H,u), (H,d), (V,u), (V,d): local index 2*pol + path
// with H = u = 0 and V = d = 1. This matches the ququart layout produced by
// joining a polarization qubit (t) with a path qubit (c).

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };
enum class Dof { Polarization, Path };

/// "Psi+", "Phi-" for polarization; "psi+", "phi-" for path.
std::string to_string(BellKind kind, Dof dof);

/// Case-insensitive "psi+", "psi-", "phi+", "phi-". Throws std::invalid_argument.
BellKind parse_bell_kind(std::string_view name);

struct BellOutcome {
    BellKind polarization = BellKind::PsiPlus;
    BellKind path = BellKind::PsiPlus;

    int index() const { return 4 * static_cast<int>(polarization) + static_cast<int>(path); }
    static BellOutcome from_index(int k);
    static std::array<BellOutcome, 16> all();
    std::string label() const;

    friend bool operator==(const BellOutcome&, const BellOutcome&) = default;
};

int photon_mode(int photon, int pol, int path);

/// State of n photons from the dense amplitude tensor over local indices,
/// photon 0 most significant (size 4^n).
FockState photons_state(int photons, const Eigen::VectorXcd& tensor);

/// Inverse of photons_state. Throws EncodingError if some photon does not
/// hold exactly one quantum in its four modes.
Eigen::VectorXcd photon_tensor(const FockState& s);

/// 4 x 4 coefficients over (local index of photon i, local index of photon j).
/// The other degree of freedom sits in u (polarization Bells) or H (path Bells).
Eigen::Matrix4cd bell_matrix(BellKind kind, Dof dof);

/// Two-photon Bell state on 8 modes, photon i first.
FockState bell_state(BellKind kind, Dof dof);

/// Which TPES variant is used as resource: Bell kind of the (1,2)
/// polarization link and of the (1,3) path link.
struct Resource {
    BellKind polarization = BellKind::PhiMinus;
    BellKind path = BellKind::PhiMinus;
};

/// |Bell_pol>_12 |H>_3 (x) |Bell_path>_13 |u>_2 on 12 modes (photons 1, 2, 3).
FockState build_tpes(BellKind pol, BellKind path);

/// Column k: photon-1 amplitudes produced by deterministic joining of the
/// two-qubit basis state k (polarization qubit as t, path qubit as c).
Eigen::Matrix4cd joining_basis_map();

/// Photons 2,4 in a polarization Bell state, photons 3,5 in a path Bell
/// state; photons 4 and 5 are joined into photon 1 by join_deterministic
/// (applied per basis state, extended by linearity). Result on 12 modes.
FockState tpes_via_joining(BellKind pol, BellKind path);

struct BellBranch {
    BellOutcome outcome;
    /// <Bell_pol|_24 <Bell_path|_35 |psi>_12345: photon 1, unnormalized.
    Eigen::Vector4cd amplitudes;
    /// Normalized photon-1 state (4 modes).
    FockState conditional;
    double weight = 0.0;
};

/// Bell-basis expansion of |psi>_123 |psi>_4 |psi>_5 with
/// |psi>_4 = (alpha H + beta V) u and |psi>_5 = H (gamma u + delta d).
/// Throws NormalizationError on unnormalized (alpha,beta) or (gamma,delta).
std::array<BellBranch, 16> expand_5photon(Complex alpha, Complex beta, Complex gamma, Complex delta,
                                          const Resource& resource = {});

enum class Pauli { I, Z, X, XZ };

std::string to_string(Pauli p);

/// 2 x 2 matrix; XZ is the product X * Z.
Eigen::Matrix2cd pauli_matrix(Pauli p);

struct Correction {
    Pauli polarization = Pauli::I;
    Pauli path = Pauli::I;

    /// Ket-space operator on photon 1: polarization block (x) path block.
    Eigen::Matrix4cd op() const;
    std::string label() const;
    bool is_identity() const { return polarization == Pauli::I && path == Pauli::I; }
};

using CorrectionTable = std::array<Correction, 16>;

/// For every outcome, the local Pauli pair taking the conditional state to
/// (alpha H + beta V)(gamma u + delta d). Found by testing all 16 candidates
/// on two generic input instantiations; throws Error if none fits.
CorrectionTable derive_correction_table(const Resource& resource = {});

/// (alpha H + beta V) (x) (gamma u + delta d) on 4 modes.
FockState joined_target(Complex alpha, Complex beta, Complex gamma, Complex delta);

struct OutcomeSelect {
    std::optional<BellOutcome> forced;
    std::uint64_t seed = 0;

    static OutcomeSelect fixed(BellOutcome o) { return {o, 0}; }
    static OutcomeSelect sample(std::uint64_t seed) { return {std::nullopt, seed}; }
};

struct TeleportReport {
    SchemeReport scheme;
    BellOutcome outcome;
    Correction correction;
};

/// Teleportation joining: builds the 5-photon state, projects (2,4) and
/// (3,5) onto the selected Bell outcome, and corrects photon 1.
TeleportReport teleport_join(Complex alpha, Complex beta, Complex gamma, Complex delta, OutcomeSelect select,
                             const Resource& resource = {});

} // namespace fockjoin
