#include "fockjoin/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockjoin/linear_optics.hpp"

namespace fockjoin {

namespace {

Occupation pair_pattern(int k)
{
    const int hi = k >> 1;
    const int lo = k & 1;
    return {1 - hi, hi, 1 - lo, lo};
}

Occupation quart_pattern(int k)
{
    Occupation occ(4, 0);
    occ[static_cast<std::size_t>(k)] = 1;
    return occ;
}

void require_normalized(const FockState& s, const char* what)
{
    if (!s.is_normalized())
        throw NormalizationError(std::string(what) + " is not normalized (|<s|s>| = " +
                                 std::to_string(s.norm_squared()) + ")");
}

Branch resolve_branch(const BranchSelect& sel, double p_plus)
{
    switch (sel.kind) {
    case BranchSelect::Kind::Plus:
        return Branch::Plus;
    case BranchSelect::Kind::Minus:
        return Branch::Minus;
    case BranchSelect::Kind::Sample: {
        std::mt19937_64 rng(sel.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return u(rng) < p_plus ? Branch::Plus : Branch::Minus;
    }
    }
    return Branch::Plus;
}

const char* branch_name(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

double safe_fidelity(const FockState& expected, const FockState& out)
{
    if (out.is_zero())
        return 0.0;
    return fidelity(expected, out.normalized());
}

} // namespace

FockState two_qubit_state(const Amplitudes4& alpha)
{
    StateBuilder b(4);
    for (int k = 0; k < 4; ++k)
        b.add(pair_pattern(k), alpha[static_cast<std::size_t>(k)]);
    return std::move(b).build();
}

FockState ququart_state(const Amplitudes4& alpha)
{
    StateBuilder b(4);
    for (int k = 0; k < 4; ++k)
        b.add(quart_pattern(k), alpha[static_cast<std::size_t>(k)]);
    return std::move(b).build();
}

TwoQubitInput TwoQubitInput::from_state(FockState s)
{
    if (s.modes() != 4)
        throw EncodingError("two-qubit input must have 4 modes, got " + std::to_string(s.modes()));
    for (const auto& [occ, amp] : s.terms()) {
        const bool ok = occ[0] + occ[1] == 1 && occ[2] + occ[3] == 1 &&
                        std::all_of(occ.begin(), occ.end(), [](int n) { return n <= 1; });
        if (!ok)
            throw EncodingError("two-qubit input term without exactly one photon per pair");
    }
    require_normalized(s, "two-qubit input");
    return TwoQubitInput(std::move(s));
}

TwoQubitInput TwoQubitInput::from_amplitudes(const Amplitudes4& alpha)
{
    return from_state(two_qubit_state(alpha));
}

Amplitudes4 TwoQubitInput::amplitudes() const
{
    Amplitudes4 a{};
    for (int k = 0; k < 4; ++k)
        a[static_cast<std::size_t>(k)] = state_.amplitude(pair_pattern(k));
    return a;
}

Ququart Ququart::from_state(FockState s)
{
    if (s.modes() != 4)
        throw EncodingError("ququart must have 4 modes, got " + std::to_string(s.modes()));
    for (const auto& [occ, amp] : s.terms())
        if (photon_count(occ) != 1)
            throw EncodingError("ququart term without exactly one photon");
    require_normalized(s, "ququart");
    return Ququart(std::move(s));
}

Ququart Ququart::from_amplitudes(const Amplitudes4& alpha) { return from_state(ququart_state(alpha)); }

Amplitudes4 Ququart::amplitudes() const
{
    Amplitudes4 a{};
    for (int k = 0; k < 4; ++k)
        a[static_cast<std::size_t>(k)] = state_.amplitude(quart_pattern(k));
    return a;
}

FockState unfold_target(const TwoQubitInput& s)
{
    return add_vacuum_modes(s.state(), {1, 3});
}

SchemeReport join_projective(const TwoQubitInput& s, BranchSelect select, const JoinOptions& opt)
{
    using L = JoinLayout;
    FockState reg = unfold_target(s);
    reg = apply_cnot(reg, CnotSpec{L::c, L::t1, opt.eta_first, opt.eta_prime});
    reg = apply_cnot(reg, CnotSpec{L::c, L::t2, opt.eta_second, opt.eta_prime});

    const double h = std::numbers::sqrt2 / 2.0;
    const auto plus = ProjectorSpec::on_modes(L::modes, {{L::c.mode0, h}, {L::c.mode1, h}});
    const auto minus = ProjectorSpec::on_modes(L::modes, {{L::c.mode0, h}, {L::c.mode1, -h}});
    const auto on_plus = apply_projector(reg, plus);
    const auto on_minus = apply_projector(reg, minus);

    const Branch b = resolve_branch(select, on_plus.probability);
    const auto& taken = b == Branch::Plus ? on_plus : on_minus;

    SchemeReport r;
    r.register_state = reg;
    r.expected = ququart_state(s.amplitudes());
    r.branch = branch_name(b);
    r.branch_probability = taken.probability;
    r.success_probability = opt.feed_forward ? on_plus.probability + on_minus.probability : on_plus.probability;
    r.output = taken.null ? FockState(4) : discard_empty_modes(taken.state, {L::c.mode0, L::c.mode1});
    if (b == Branch::Minus && opt.feed_forward) {
        r.output = logical_phase_flip(r.output, DualRailQubit{0, 1});
        r.output = logical_phase_flip(r.output, DualRailQubit{2, 3});
        r.feed_forward_applied = true;
    }
    r.fidelity_to_expected = safe_fidelity(r.expected, r.output);
    return r;
}

SchemeReport join_deterministic(const TwoQubitInput& s, const JoinOptions& opt)
{
    using L = JoinLayout;
    FockState reg = unfold_target(s);
    reg = apply_cnot(reg, CnotSpec{L::c, L::t1, opt.eta_first, opt.eta_prime});
    reg = apply_cnot(reg, CnotSpec{L::c, L::t2, opt.eta_second, opt.eta_prime});
    reg = apply_reversed_cnot(reg, CnotSpec{L::c, L::t1, 1.0, opt.eta_prime});
    reg = apply_reversed_cnot(reg, CnotSpec{L::c, L::t2, 1.0, opt.eta_prime});

    const FockState kept = condition_on(reg, {L::c.mode0, L::c.mode1}, {1, 0});

    SchemeReport r;
    r.register_state = reg;
    r.expected = ququart_state(s.amplitudes());
    r.branch = "deterministic";
    r.branch_probability = kept.norm_squared();
    r.success_probability = r.branch_probability;
    r.output = kept.is_zero() ? FockState(4) : kept.normalized();
    r.fidelity_to_expected = safe_fidelity(r.expected, r.output);
    return r;
}

namespace {

FockState split_register_after_cnots(const Ququart& q)
{
    using L = SplitLayout;
    FockState reg = tensor(q.state(), FockState::basis({1, 0}));
    reg = apply_cnot(reg, CnotSpec{L::c1, L::t});
    reg = apply_cnot(reg, CnotSpec{L::c2, L::t});
    return reg;
}

} // namespace

SchemeReport split_projective(const Ququart& q, BranchSelect select, bool feed_forward)
{
    using L = SplitLayout;
    FockState reg = split_register_after_cnots(q);
    reg = apply_unitary(reg, hadamard_pair(L::modes, L::c1.mode0, L::c1.mode1)
                                 .then(hadamard_pair(L::modes, L::c2.mode0, L::c2.mode1)));

    // Plus: nothing on the minus rails. Minus: nothing on the plus rails,
    // i.e. the photon left through a minus rail.
    const auto on_plus = postselect_vacuum(reg, {L::c1.mode1, L::c2.mode1});
    const auto on_minus = postselect_vacuum(reg, {L::c1.mode0, L::c2.mode0});

    const Branch b = resolve_branch(select, on_plus.probability);
    const auto& taken = b == Branch::Plus ? on_plus : on_minus;
    const std::vector<int> dropped = b == Branch::Plus ? std::vector<int>{L::c1.mode1, L::c2.mode1}
                                                       : std::vector<int>{L::c1.mode0, L::c2.mode0};

    SchemeReport r;
    r.register_state = reg;
    r.expected = two_qubit_state(q.amplitudes());
    r.branch = branch_name(b);
    r.branch_probability = taken.probability;
    r.success_probability = feed_forward ? on_plus.probability + on_minus.probability : on_plus.probability;
    r.output = taken.null ? FockState(4) : discard_empty_modes(taken.state, dropped);
    if (b == Branch::Minus && feed_forward) {
        r.output = logical_phase_flip(r.output, DualRailQubit{2, 3});
        r.feed_forward_applied = true;
    }
    r.fidelity_to_expected = safe_fidelity(r.expected, r.output);
    return r;
}

SchemeReport split_deterministic(const Ququart& q)
{
    using L = SplitLayout;
    FockState reg = split_register_after_cnots(q);
    reg = apply_reversed_cnot(reg, CnotSpec{L::c1, L::t});
    reg = apply_reversed_cnot(reg, CnotSpec{L::c2, L::t});

    SchemeReport r;
    r.register_state = reg;
    r.expected = two_qubit_state(q.amplitudes());
    r.branch = "deterministic";
    r.output = discard_empty_modes(reg, {L::c1.mode1, L::c2.mode1});
    r.branch_probability = r.output.norm_squared();
    r.success_probability = r.branch_probability;
    r.fidelity_to_expected = safe_fidelity(r.expected, r.output);
    return r;
}

ProbabilityModel ProbabilityModel::ideal_projective(bool feed_forward)
{
    ProbabilityModel m;
    m.feed_forward = feed_forward;
    return m;
}

ProbabilityModel ProbabilityModel::ideal_deterministic()
{
    ProbabilityModel m;
    m.n_cnot = 4;
    m.p_projection = 1;
    return m;
}

ProbabilityModel ProbabilityModel::heralded_linear(bool feed_forward)
{
    ProbabilityModel m;
    m.p_cnot = Rational(1, 4);
    m.n_cnot = 2;
    m.p_projection = Rational(1, 2);
    m.feed_forward_gain = 2;
    m.feed_forward = feed_forward;
    return m;
}

void ProbabilityModel::validate() const
{
    auto in_unit = [](const Rational& p) { return p >= 0 && p <= 1; };
    if (!in_unit(p_cnot) || !in_unit(p_projection))
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (n_cnot < 0)
        throw std::invalid_argument("negative CNOT count");
    if (feed_forward_gain < 1)
        throw std::invalid_argument("feed-forward gain must be >= 1");
    if (!in_unit(compose_success_probability(*this)))
        throw std::invalid_argument("model yields a success probability above 1");
}

Rational compose_success_probability(const ProbabilityModel& m)
{
    Rational p{1};
    for (int k = 0; k < m.n_cnot; ++k)
        p *= m.p_cnot;
    return p * (m.feed_forward ? m.feed_forward_gain : m.p_projection);
}

} // namespace fockjoin
