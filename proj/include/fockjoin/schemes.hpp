#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "fockjoin/dualrail.hpp"
#include "fockjoin/fock_state.hpp"

namespace fockjoin {

// Mode layouts used by the joining and splitting pipelines.
//
// Two-qubit states (join input, split output) live on 4 modes as two
// dual-rail pairs; amplitude alpha_k sits on pair bits (k >> 1, k & 1).
// Ququarts live on 4 modes with alpha_k on mode k.
// After unfolding the join register is t1 = (0,1), t2 = (2,3), c = (4,5).
// The split register is c1 = (0,1), c2 = (2,3), t = (4,5).
struct JoinLayout {
    static constexpr DualRailQubit t1{0, 1};
    static constexpr DualRailQubit t2{2, 3};
    static constexpr DualRailQubit c{4, 5};
    static constexpr int modes = 6;
};

struct SplitLayout {
    static constexpr DualRailQubit c1{0, 1};
    static constexpr DualRailQubit c2{2, 3};
    static constexpr DualRailQubit t{4, 5};
    static constexpr int modes = 6;
};

using Amplitudes4 = std::array<Complex, 4>;

/// alpha_0 |1010> + alpha_1 |1001> + alpha_2 |0110> + alpha_3 |0101>.
FockState two_qubit_state(const Amplitudes4& alpha);

/// alpha_0 |1000> + alpha_1 |0100> + alpha_2 |0010> + alpha_3 |0001>.
FockState ququart_state(const Amplitudes4& alpha);

/// Normalized two-photon input: t pair on modes (0,1), c pair on (2,3),
/// exactly one photon per pair in every term.
class TwoQubitInput {
public:
    /// Throws EncodingError or NormalizationError.
    static TwoQubitInput from_state(FockState s);
    static TwoQubitInput from_amplitudes(const Amplitudes4& alpha);

    const FockState& state() const noexcept { return state_; }
    Amplitudes4 amplitudes() const;

private:
    explicit TwoQubitInput(FockState s) : state_(std::move(s)) {}
    FockState state_;
};

/// Normalized one-photon state on four modes.
class Ququart {
public:
    /// Throws EncodingError or NormalizationError.
    static Ququart from_state(FockState s);
    static Ququart from_amplitudes(const Amplitudes4& alpha);

    const FockState& state() const noexcept { return state_; }
    Amplitudes4 amplitudes() const;

private:
    explicit Ququart(FockState s) : state_(std::move(s)) {}
    FockState state_;
};

enum class Branch { Plus, Minus };

/// Which measurement branch a projective scheme follows.
struct BranchSelect {
    enum class Kind { Plus, Minus, Sample };
    Kind kind = Kind::Plus;
    std::uint64_t seed = 0;

    static BranchSelect plus() { return {Kind::Plus, 0}; }
    static BranchSelect minus() { return {Kind::Minus, 0}; }
    static BranchSelect sample(std::uint64_t seed) { return {Kind::Sample, seed}; }
};

struct SchemeReport {
    /// Final state of the kept photons (4 modes for every scheme here).
    FockState output;
    /// Full register just before the measured/discarded modes are removed.
    FockState register_state;
    /// What the scheme should produce for this input.
    FockState expected;
    /// Probability that the scheme, as configured, delivers `expected`.
    double success_probability = 0.0;
    /// Probability of the branch that was actually followed.
    double branch_probability = 0.0;
    std::string branch;
    bool feed_forward_applied = false;
    double fidelity_to_expected = 0.0;
};

/// Options for the joining pipelines. The two etas belong to CNOT(c->t1)
/// and CNOT(c->t2); eta_prime to the reversed gates.
struct JoinOptions {
    bool feed_forward = false;
    Complex eta_first{1.0, 0.0};
    Complex eta_second{1.0, 0.0};
    Complex eta_prime{1.0, 0.0};
};

/// |10> -> |1000>, |01> -> |0010> on the t pair; c moves to modes (4,5).
FockState unfold_target(const TwoQubitInput& s);

/// Two CNOTs, then the c photon is projected on |+> or |->. With feed-forward
/// the |-> branch is corrected by phase flips on t1 and t2.
SchemeReport join_projective(const TwoQubitInput& s, BranchSelect branch, const JoinOptions& opt = {});

/// Four CNOTs; c ends in |10> and is discarded.
SchemeReport join_deterministic(const TwoQubitInput& s, const JoinOptions& opt = {});

/// Two CNOTs onto a fresh t photon, Hadamards on c1 and c2, then a vacuum
/// check on the minus rails (Plus) or the plus rails (Minus). With
/// feed-forward the Minus branch is corrected by a phase flip on t.
SchemeReport split_projective(const Ququart& q, BranchSelect branch, bool feed_forward = false);

/// Four CNOTs; the always-empty rails of c are discarded.
SchemeReport split_deterministic(const Ququart& q);

using Rational = boost::rational<std::int64_t>;

/// Bookkeeping model for the overall success probability of a joining run:
///
///     P = p_cnot^n_cnot * (feed_forward ? feed_forward_gain : p_projection)
///
/// feed_forward_gain is the factor recovered on top of the final projection
/// when outcomes that would otherwise be discarded are corrected:
///
///     preset               p_cnot  n  p_proj  gain   P(no FF)  P(FF)
///     ideal_projective       1     2   1/2     1       1/2       1
///     ideal_deterministic    1     4   1       1       1         1
///     heralded_linear        1/4   2   1/2     2       1/32      1/8
struct ProbabilityModel {
    Rational p_cnot{1};
    int n_cnot = 2;
    Rational p_projection{1, 2};
    bool feed_forward = false;
    Rational feed_forward_gain{1};

    static ProbabilityModel ideal_projective(bool feed_forward);
    static ProbabilityModel ideal_deterministic();
    static ProbabilityModel heralded_linear(bool feed_forward);

    /// Throws std::invalid_argument if a probability leaves [0,1].
    void validate() const;
};

Rational compose_success_probability(const ProbabilityModel& m);

} // namespace fockjoin
