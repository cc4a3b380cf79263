#pragma once

#include <array>
#include <string>
#include <vector>

#include "fockjoin/fock_state.hpp"
#include "fockjoin/linear_optics.hpp"

namespace fockjoin {

/// One photon over two modes: |10> is logical 0, |01> logical 1, |00> empty.
struct DualRailQubit {
    int mode0 = 0;
    int mode1 = 1;

    void validate(int modes) const;
    friend bool operator==(const DualRailQubit&, const DualRailQubit&) = default;
};

/// One photon over four modes, ordered as the rails of logical |0>..|3>.
struct QuartEncoding {
    std::array<int, 4> modes{0, 1, 2, 3};

    void validate(int modes) const;
};

/// Logical CNOT with explicit vacuum behaviour. `eta` multiplies terms whose
/// target pair is empty, `eta_prime` terms whose control pair is empty.
struct CnotSpec {
    DualRailQubit control;
    DualRailQubit target;
    Complex eta{1.0, 0.0};
    Complex eta_prime{1.0, 0.0};

    /// Throws DimensionError on overlapping or out-of-range modes, or
    /// |eta| > 1, |eta_prime| > 1.
    void validate(int modes) const;
};

/// Term-wise CNOT. Both pairs empty passes through with factor 1.
/// Throws EncodingError on any pattern outside {10, 01, 00} on either pair.
FockState apply_cnot(const FockState& s, const CnotSpec& g);

/// CNOT with the roles of g.control and g.target exchanged; eta keeps its
/// meaning for whichever pair is the target of the physical gate.
FockState apply_reversed_cnot(const FockState& s, const CnotSpec& g);

/// Multiplies by -1 every term with a photon on q.mode1.
FockState logical_phase_flip(const FockState& s, const DualRailQubit& q);

// ---------------------------------------------------------------------------
// Post-selected two-photon CNOT (coincidence basis, three 1/3 beamsplitters).
//
// Modes: 0,1 control rails; 2,3 target rails; 4,5 vacuum ancillas.

struct PostselectedCnotLayout {
    static constexpr DualRailQubit control{0, 1};
    static constexpr DualRailQubit target{2, 3};
    static constexpr std::array<int, 2> ancillas{4, 5};
    static constexpr int modes = 6;
};

/// Beamsplitter angle with cos^2 = 1/3.
double one_third_angle();

ModeUnitary build_postselected_cnot_network();

struct PostselectedOutcome {
    /// Conditional state on the four qubit modes (ancillas dropped), normalized.
    FockState conditional;
    double probability = 0.0;
};

/// Runs the network on a 6-mode input and keeps the coincidence events:
/// exactly one photon in the control pair and one in the target pair.
PostselectedOutcome run_postselected_cnot(const ModeUnitary& network, const FockState& input);

struct TruthTableRow {
    int control_in = 0;
    int target_in = 0;
    int control_out = 0;
    int target_out = 0;
    double probability = 0.0;
    double fidelity = 0.0;
};

std::array<TruthTableRow, 4> postselected_truth_table(const ModeUnitary& network);

struct VacuumLeg {
    std::string label;
    Occupation input;
    /// Weight of the unchanged control pattern with the target still empty.
    double kept_weight = 0.0;
    /// Weight landing on other photon patterns inside the control+target
    /// modes. In a cascade these survive the final coincidence filter.
    double extra_weight = 0.0;
    /// Weight lost to the ancilla modes.
    double lost_weight = 0.0;
    /// Amplitude of the kept pattern divided by the logical-input amplitude.
    Complex effective_eta;
    /// (control+target pattern, weight) for every pattern with nonzero weight.
    std::vector<std::pair<Occupation, double>> patterns;
};

struct VacuumFailureReport {
    double logical_probability = 0.0;
    std::vector<VacuumLeg> vacuum_legs;
    TruthTableRow sanity_leg;
    /// True only if every vacuum leg keeps the logical branch weight and
    /// produces no extra pattern, i.e. acts as eta x identity with |eta| = 1.
    bool consistent_with_eta_identity = false;
};

VacuumFailureReport vacuum_failure_demo(const ModeUnitary& network);

} // namespace fockjoin
