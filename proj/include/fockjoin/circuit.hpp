#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockjoin/errors.hpp"
#include "fockjoin/fock_state.hpp"

namespace fockjoin {

// Line-oriented circuit scripts (.pc files). One instruction per line,
// whitespace-separated, angles in radians, '#' starts a comment:
//
//   modes N                                  must precede everything else
//   bs i j theta phi                         beamsplitter()
//   ps i phi                                 phase_shift()
//   perm p0 p1 ... p(N-1)                    permutation(), mode i -> p_i
//   had i j                                  hadamard_pair()
//   cnot c0 c1 t0 t1 [er ei [epr epi]]       apply_cnot() with eta, eta'
//   rcnot c0 c1 t0 t1 [er ei [epr epi]]      apply_reversed_cnot()
//   zflip m0 m1                              logical_phase_flip()
//   project i re im [i re im ...]            apply_projector(), phi on listed modes
//   vacuum m [m ...]                         postselect_vacuum()
//   mark NAME                                records the running probability

enum class OpKind { Bs, Ps, Perm, Had, Cnot, Rcnot, Zflip, Project, Vacuum, Mark };

std::string to_string(OpKind k);

struct Instruction {
    OpKind kind = OpKind::Bs;
    std::vector<int> modes;
    std::vector<double> params;
    std::string name;
    /// Source line (1-based); 0 for programs built in code. Not compared.
    int line = 0;

    friend bool operator==(const Instruction& a, const Instruction& b)
    {
        return a.kind == b.kind && a.modes == b.modes && a.params == b.params && a.name == b.name;
    }
};

struct CircuitProgram {
    int modes = 0;
    std::vector<Instruction> instructions;

    friend bool operator==(const CircuitProgram&, const CircuitProgram&) = default;
};

struct ParseDiagnostic {
    int line = 0;
    int column = 0;
    std::string message;
    std::string token;
};

std::string to_string(const ParseDiagnostic& d);

struct ParseResult {
    /// Set only when there are no diagnostics.
    std::optional<CircuitProgram> program;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return program.has_value(); }
};

/// Collects every diagnostic; a malformed line is skipped and parsing goes on.
ParseResult parse_circuit(std::string_view text);

/// Canonical text. parse_circuit(pretty_print(p)) reproduces p exactly.
std::string pretty_print(const CircuitProgram& p);

struct BranchLogEntry {
    int instruction = 0;
    int line = 0;
    std::string what;
    /// Probability of this step (project/vacuum) or the running total (mark).
    double probability = 1.0;
};

struct RunResult {
    /// Renormalized after every projection; zero if a projection annihilated it.
    FockState state;
    /// Product of the projection probabilities.
    double probability = 1.0;
    std::vector<BranchLogEntry> log;
};

/// A gate-layer error raised while running instruction `instruction`.
class CircuitError : public Error {
public:
    CircuitError(int instruction, int line, const std::string& message);
    int instruction() const noexcept { return instruction_; }
    int line() const noexcept { return line_; }

private:
    int instruction_;
    int line_;
};

/// Throws DimensionError if input.modes() differs from p.modes, and
/// CircuitError for errors inside an instruction.
RunResult run_circuit(const CircuitProgram& p, const FockState& input);

} // namespace fockjoin
