#include "fockjoin/dualrail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockjoin {

namespace {

std::string format_occ(const Occupation& occ)
{
    std::ostringstream os;
    os << '|';
    for (int n : occ) os << n;
    os << '>';
    return os.str();
}

enum class Rail { Zero, One, Empty };

Rail read_pair(const Occupation& occ, const DualRailQubit& q)
{
    const int a = occ[q.mode0];
    const int b = occ[q.mode1];
    if (a == 1 && b == 0) return Rail::Zero;
    if (a == 0 && b == 1) return Rail::One;
    if (a == 0 && b == 0) return Rail::Empty;
    throw EncodingError("illegal pattern " + std::to_string(a) + std::to_string(b) + " on modes (" +
                        std::to_string(q.mode0) + "," + std::to_string(q.mode1) + ") in term " + format_occ(occ));
}

Occupation basis_occ(int modes, std::initializer_list<int> occupied)
{
    Occupation occ(static_cast<std::size_t>(modes), 0);
    for (int m : occupied) ++occ[m];
    return occ;
}

} // namespace

void DualRailQubit::validate(int modes) const
{
    if (mode0 < 0 || mode1 < 0 || mode0 >= modes || mode1 >= modes)
        throw DimensionError("dual-rail qubit mode out of range");
    if (mode0 == mode1)
        throw DimensionError("dual-rail qubit needs two distinct modes");
}

void QuartEncoding::validate(int n) const
{
    auto sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionError("ququart modes must be distinct");
    if (sorted.front() < 0 || sorted.back() >= n)
        throw DimensionError("ququart mode out of range");
}

void CnotSpec::validate(int modes) const
{
    control.validate(modes);
    target.validate(modes);
    std::array<int, 4> m{control.mode0, control.mode1, target.mode0, target.mode1};
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end())
        throw DimensionError("CNOT control and target pairs overlap");
    if (std::abs(eta) > 1.0 + 1e-12 || std::abs(eta_prime) > 1.0 + 1e-12)
        throw DimensionError("CNOT vacuum amplitudes must satisfy |eta| <= 1");
}

FockState apply_cnot(const FockState& s, const CnotSpec& g)
{
    g.validate(s.modes());
    StateBuilder out(s.modes());
    for (const auto& [occ, amp] : s.terms()) {
        const Rail c = read_pair(occ, g.control);
        const Rail t = read_pair(occ, g.target);
        if (c == Rail::Empty && t == Rail::Empty) {
            out.add(occ, amp);
        } else if (c == Rail::Empty) {
            out.add(occ, amp * g.eta_prime);
        } else if (t == Rail::Empty) {
            out.add(occ, amp * g.eta);
        } else if (c == Rail::Zero) {
            out.add(occ, amp);
        } else {
            Occupation flipped = occ;
            std::swap(flipped[g.target.mode0], flipped[g.target.mode1]);
            out.add(std::move(flipped), amp);
        }
    }
    return std::move(out).build();
}

FockState apply_reversed_cnot(const FockState& s, const CnotSpec& g)
{
    CnotSpec swapped = g;
    std::swap(swapped.control, swapped.target);
    return apply_cnot(s, swapped);
}

FockState logical_phase_flip(const FockState& s, const DualRailQubit& q)
{
    q.validate(s.modes());
    StateBuilder out(s.modes());
    for (const auto& [occ, amp] : s.terms())
        out.add(occ, occ[q.mode1] > 0 ? -amp : amp);
    return std::move(out).build();
}

double one_third_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

ModeUnitary build_postselected_cnot_network()
{
    using L = PostselectedCnotLayout;
    const double theta = one_third_angle();
    const auto h = hadamard_pair(L::modes, L::target.mode0, L::target.mode1);
    // Controlled-Z core: the two logical-1 rails interfere on a 1/3
    // beamsplitter; the logical-0 rails are attenuated to the same 1/sqrt(3)
    // by 1/3 beamsplitters into vacuum ancillas.
    return h.then(beamsplitter(L::modes, L::control.mode1, L::target.mode1, theta, 0.0))
        .then(beamsplitter(L::modes, L::control.mode0, L::ancillas[0], theta, 0.0))
        .then(beamsplitter(L::modes, L::target.mode0, L::ancillas[1], theta, 0.0))
        .then(h);
}

PostselectedOutcome run_postselected_cnot(const ModeUnitary& network, const FockState& input)
{
    using L = PostselectedCnotLayout;
    if (input.modes() != L::modes || network.dim() != L::modes)
        throw DimensionError("post-selected CNOT acts on 6 modes");
    const FockState out = apply_unitary(input, network);

    StateBuilder kept(L::modes);
    for (const auto& [occ, amp] : out.terms()) {
        const bool coincidence = occ[L::control.mode0] + occ[L::control.mode1] == 1 &&
                                 occ[L::target.mode0] + occ[L::target.mode1] == 1;
        if (coincidence)
            kept.add(occ, amp);
    }
    FockState k = std::move(kept).build();
    PostselectedOutcome r;
    r.probability = k.norm_squared() / input.norm_squared();
    if (!k.is_zero())
        r.conditional = discard_empty_modes(k, {L::ancillas[0], L::ancillas[1]}).normalized();
    else
        r.conditional = FockState(4);
    return r;
}

std::array<TruthTableRow, 4> postselected_truth_table(const ModeUnitary& network)
{
    using L = PostselectedCnotLayout;
    std::array<TruthTableRow, 4> table;
    for (int c = 0; c < 2; ++c) {
        for (int t = 0; t < 2; ++t) {
            const int cm = c == 0 ? L::control.mode0 : L::control.mode1;
            const int tm = t == 0 ? L::target.mode0 : L::target.mode1;
            const auto res = run_postselected_cnot(network, FockState::basis(basis_occ(L::modes, {cm, tm})));

            TruthTableRow row;
            row.control_in = c;
            row.target_in = t;
            row.control_out = c;
            row.target_out = c == 1 ? 1 - t : t;
            row.probability = res.probability;
            const FockState ideal = FockState::basis(basis_occ(4, {row.control_out, 2 + row.target_out}));
            row.fidelity = res.conditional.is_zero() ? 0.0 : fidelity(ideal, res.conditional);
            table[static_cast<std::size_t>(2 * c + t)] = row;
        }
    }
    return table;
}

VacuumFailureReport vacuum_failure_demo(const ModeUnitary& network)
{
    using L = PostselectedCnotLayout;
    VacuumFailureReport report;
    const auto table = postselected_truth_table(network);
    report.logical_probability = table[0].probability;
    report.sanity_leg = table[2]; // control |10>, target |10>
    const double logical_amplitude = std::sqrt(report.logical_probability);

    const std::vector<int> qubit_modes{L::control.mode0, L::control.mode1, L::target.mode0, L::target.mode1};
    bool consistent = true;

    for (int c = 0; c < 2; ++c) {
        const int cm = c == 0 ? L::control.mode0 : L::control.mode1;
        const Occupation in = basis_occ(L::modes, {cm});
        const FockState out = apply_unitary(FockState::basis(in), network);

        VacuumLeg leg;
        leg.label = c == 0 ? "control |10>, target |00>" : "control |01>, target |00>";
        leg.input = in;

        std::map<Occupation, double> weights;
        Complex kept_amp{};
        for (const auto& [occ, amp] : out.terms()) {
            Occupation sub;
            for (int m : qubit_modes) sub.push_back(occ[m]);
            const bool ancilla_empty = occ[L::ancillas[0]] == 0 && occ[L::ancillas[1]] == 0;
            weights[sub] += std::norm(amp);
            if (occ == in)
                kept_amp = amp;
            else if (ancilla_empty)
                leg.extra_weight += std::norm(amp);
            else
                leg.lost_weight += std::norm(amp);
        }
        leg.kept_weight = std::norm(kept_amp);
        leg.effective_eta = kept_amp / logical_amplitude;
        for (const auto& [pattern, w] : weights)
            if (w > kPruneTolerance)
                leg.patterns.emplace_back(pattern, w);

        consistent = consistent && leg.extra_weight < 1e-12 &&
                     std::abs(leg.kept_weight - report.logical_probability) < 1e-10;
        report.vacuum_legs.push_back(std::move(leg));
    }
    report.consistent_with_eta_identity = consistent;
    return report;
}

} // namespace fockjoin
