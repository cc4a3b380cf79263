#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fockjoin/circuit.hpp"
#include "fockjoin/json_io.hpp"
#include "fockjoin/schemes.hpp"
#include "support.hpp"

using namespace fockjoin;

namespace {

const std::filesystem::path kData{FOCKJOIN_TEST_DATA};

CircuitProgram load(const std::string& name)
{
    auto r = parse_circuit(read_text_file(kData / name));
    if (!r.ok()) {
        for (const auto& d : r.diagnostics) ADD_FAILURE() << to_string(d);
        return {};
    }
    return *r.program;
}

} // namespace

TEST(Parse, EveryInstruction)
{
    const auto r = parse_circuit(R"(
# all keywords
modes 6
bs 0 1 0.5 -0.25
ps 2 1e-3
perm 1 0 2 3 5 4
had 0 1
cnot 4 5 0 1
rcnot 4 5 2 3 0.5 0 0 1
zflip 2 3
project 4 0.6 0 5 0 0.8
vacuum 0 1
mark done
)");
    ASSERT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : to_string(r.diagnostics[0]));
    const auto& p = *r.program;
    EXPECT_EQ(p.modes, 6);
    ASSERT_EQ(p.instructions.size(), 10u);
    EXPECT_EQ(p.instructions[0].kind, OpKind::Bs);
    EXPECT_EQ(p.instructions[0].params, (std::vector<double>{0.5, -0.25}));
    EXPECT_EQ(p.instructions[0].line, 4);
    EXPECT_EQ(p.instructions[2].modes, (std::vector<int>{1, 0, 2, 3, 5, 4}));
    EXPECT_EQ(p.instructions[5].params.size(), 4u);
    EXPECT_EQ(p.instructions[7].modes, (std::vector<int>{4, 5}));
    EXPECT_EQ(p.instructions[7].params, (std::vector<double>{0.6, 0.0, 0.0, 0.8}));
    EXPECT_EQ(p.instructions[9].name, "done");
}

TEST(Parse, DiagnosticsCarryLineAndColumn)
{
    const auto r = parse_circuit(read_text_file(kData / "broken.pc"));
    EXPECT_FALSE(r.ok());
    ASSERT_EQ(r.diagnostics.size(), 3u);
    EXPECT_EQ(r.diagnostics[0].line, 2);
    EXPECT_EQ(r.diagnostics[0].column, 1);
    EXPECT_EQ(r.diagnostics[1].line, 3);
    EXPECT_EQ(r.diagnostics[1].token, "frob");
    EXPECT_EQ(r.diagnostics[2].line, 4);
    EXPECT_EQ(r.diagnostics[2].column, 4);
    EXPECT_EQ(r.diagnostics[2].token, "7");
    EXPECT_NE(to_string(r.diagnostics[2]).find("line 4, column 4"), std::string::npos);
}

TEST(Parse, RejectsStructuralMistakes)
{
    EXPECT_FALSE(parse_circuit("bs 0 1 0 0\n").ok());                    // before modes
    EXPECT_FALSE(parse_circuit("").ok());                                // no modes
    EXPECT_FALSE(parse_circuit("modes 2\nmodes 2\n").ok());              // duplicate
    EXPECT_FALSE(parse_circuit("modes 0\n").ok());
    EXPECT_FALSE(parse_circuit("modes 3\nperm 0 0 1\n").ok());
    EXPECT_FALSE(parse_circuit("modes 3\nperm 0 1\n").ok());
    EXPECT_FALSE(parse_circuit("modes 2\nhad 1 1\n").ok());
    EXPECT_FALSE(parse_circuit("modes 2\nproject 0 0.5 0\n").ok());      // not normalized
    EXPECT_FALSE(parse_circuit("modes 4\ncnot 0 1 2 3 0.5\n").ok());     // odd eta arity
    EXPECT_FALSE(parse_circuit("modes 2\nps 0 nan\n").ok());
    EXPECT_FALSE(parse_circuit("modes 2\nps 0.5 0\n").ok());
    EXPECT_TRUE(parse_circuit("modes 2\r\nps 0 +0.5   # trailing\r\n").ok());
}

TEST(Parse, EmptyProgram)
{
    const auto r = parse_circuit("modes 3\n# nothing else\n");
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r.program->instructions.empty());
    const auto s = make_state(3, {{{1, 0, 2}, 1.0}});
    const auto out = run_circuit(*r.program, s);
    EXPECT_EQ(out.probability, 1.0);
    EXPECT_LT(testing_support::max_diff(out.state, s), 1e-15);
}

TEST(PrettyPrint, IsAFixedPoint)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> a(-7, 7);
    CircuitProgram p;
    p.modes = 6;
    for (int k = 0; k < 40; ++k) {
        Instruction ins;
        switch (k % 5) {
        case 0: ins.kind = OpKind::Bs; ins.modes = {k % 6, (k + 1) % 6}; ins.params = {a(rng), a(rng)}; break;
        case 1: ins.kind = OpKind::Ps; ins.modes = {k % 6}; ins.params = {a(rng)}; break;
        case 2: ins.kind = OpKind::Had; ins.modes = {0, 5}; break;
        case 3: {
            const double t = a(rng);
            ins.kind = OpKind::Project;
            ins.modes = {1, 2};
            ins.params = {std::cos(t), 0.0, 0.0, std::sin(t)};
            break;
        }
        default: ins.kind = OpKind::Mark; ins.name = "m" + std::to_string(k); break;
        }
        p.instructions.push_back(ins);
    }
    const std::string text = pretty_print(p);
    const auto r = parse_circuit(text);
    ASSERT_TRUE(r.ok()) << to_string(r.diagnostics.front());
    EXPECT_EQ(*r.program, p);
    EXPECT_EQ(pretty_print(*r.program), text);
}

TEST(Run, HongOuMandel)
{
    const auto r = run_circuit(load("hom.pc"), state_from_json(parse_json(read_text_file(kData / "fock11.json"))));
    const double h = std::numbers::sqrt2 / 2.0;
    EXPECT_NEAR(std::abs(r.state.amplitude({1, 1})), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.state.amplitude({2, 0})), h, 1e-15);
    EXPECT_NEAR(std::abs(r.state.amplitude({0, 2})), h, 1e-15);
    ASSERT_EQ(r.log.size(), 1u);
    EXPECT_EQ(r.log[0].what, "mark after_splitter");
    EXPECT_EQ(r.log[0].line, 4);
}

TEST(Run, ProjectiveJoinScriptMatchesLibrary)
{
    const auto prog = load("join_projective.pc");
    std::mt19937_64 rng(61);
    for (int i = 0; i < 10; ++i) {
        const auto in = TwoQubitInput::from_amplitudes(testing_support::random_amplitudes(rng));
        const auto r = run_circuit(prog, unfold_target(in));
        const auto lib = join_projective(in, BranchSelect::plus());
        EXPECT_NEAR(r.probability, lib.branch_probability, 1e-12);
        EXPECT_LT(testing_support::max_diff(discard_empty_modes(r.state, {4, 5}), lib.output), 1e-12);
    }
}

TEST(Run, ProjectiveSplitScriptMatchesLibrary)
{
    const auto prog = load("split_projective.pc");
    std::mt19937_64 rng(62);
    for (int i = 0; i < 10; ++i) {
        const auto q = Ququart::from_amplitudes(testing_support::random_amplitudes(rng));
        const auto r = run_circuit(prog, tensor(q.state(), FockState::basis({1, 0})));
        const auto lib = split_projective(q, BranchSelect::plus());
        EXPECT_NEAR(r.probability, 0.5, 1e-12);
        EXPECT_LT(testing_support::max_diff(discard_empty_modes(r.state, {1, 3}), lib.output), 1e-12);
    }
}

TEST(Run, UnitaryScriptsPreserveNorm)
{
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> a(-3, 3);
    const auto prog = *parse_circuit("modes 4\nbs 0 1 " + std::to_string(a(rng)) + " 0.3\nps 2 1.1\nperm 3 2 1 0\n"
                                     "had 1 2\nbs 2 3 0.9 -0.4\n")
                           .program;
    const auto s = make_state(4, {{{2, 0, 1, 0}, 0.6}, {{0, 1, 1, 1}, Complex(0, 0.8)}});
    const auto r = run_circuit(prog, s);
    EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
    EXPECT_EQ(r.probability, 1.0);
}

TEST(Run, ErrorsNameTheInstruction)
{
    const auto prog = *parse_circuit("modes 4\nps 0 0.1\ncnot 0 1 2 3\n").program;
    try {
        run_circuit(prog, FockState::basis({1, 1, 1, 0}));
        FAIL() << "expected CircuitError";
    } catch (const CircuitError& e) {
        EXPECT_EQ(e.instruction(), 1);
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(run_circuit(prog, FockState::basis({1, 0, 1})), DimensionError);
}
