#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fockjoin/schemes.hpp"
#include "support.hpp"

using namespace fockjoin;
using testing_support::random_amplitudes;

namespace {

const double kH = std::numbers::sqrt2 / 2.0;

const Amplitudes4 kBell{kH, 0.0, 0.0, kH};

} // namespace

TEST(Encodings, TwoQubitAndQuquartLayouts)
{
    const Amplitudes4 a{0.1, 0.2, 0.3, std::sqrt(1 - 0.14)};
    const auto t = two_qubit_state(a);
    EXPECT_EQ(t.amplitude({1, 0, 1, 0}), a[0]);
    EXPECT_EQ(t.amplitude({1, 0, 0, 1}), a[1]);
    EXPECT_EQ(t.amplitude({0, 1, 1, 0}), a[2]);
    EXPECT_EQ(t.amplitude({0, 1, 0, 1}), a[3]);
    const auto q = ququart_state(a);
    EXPECT_EQ(q.amplitude({0, 0, 1, 0}), a[2]);
    const auto in = TwoQubitInput::from_amplitudes(a);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(in.amplitudes()[k], a[k]);
}

TEST(Encodings, InputValidation)
{
    EXPECT_THROW(TwoQubitInput::from_state(FockState::basis({1, 1, 0, 0})), EncodingError);
    EXPECT_THROW(TwoQubitInput::from_state(FockState::basis({1, 0, 1, 0}, 0.5)), NormalizationError);
    EXPECT_THROW(TwoQubitInput::from_state(FockState::basis({1, 0, 1})), EncodingError);
    EXPECT_THROW(Ququart::from_state(FockState::basis({1, 0, 1, 0})), EncodingError);
    EXPECT_THROW(Ququart::from_amplitudes({0.5, 0.0, 0.0, 0.0}), NormalizationError);
}

TEST(Unfold, MovesTargetRailsApart)
{
    const auto u = unfold_target(TwoQubitInput::from_amplitudes(kBell));
    EXPECT_EQ(u.modes(), 6);
    EXPECT_NEAR(std::abs(u.amplitude({1, 0, 0, 0, 1, 0})), kH, 1e-15);
    EXPECT_NEAR(std::abs(u.amplitude({0, 0, 1, 0, 0, 1})), kH, 1e-15);
}

TEST(JoinProjective, BellInputPlusBranch)
{
    const auto r = join_projective(TwoQubitInput::from_amplitudes(kBell), BranchSelect::plus());
    EXPECT_NEAR(r.success_probability, 0.5, 1e-12);
    EXPECT_NEAR(r.branch_probability, 0.5, 1e-12);
    EXPECT_NEAR(r.fidelity_to_expected, 1.0, 1e-10);
    EXPECT_EQ(r.branch, "plus");
    EXPECT_NEAR(std::abs(r.output.amplitude({1, 0, 0, 0})), kH, 1e-12);
    EXPECT_NEAR(std::abs(r.output.amplitude({0, 0, 0, 1})), kH, 1e-12);
}

TEST(JoinProjective, MinusBranchNeedsFeedForward)
{
    const Amplitudes4 a{0.5, 0.5, 0.5, 0.5};
    const auto raw = join_projective(TwoQubitInput::from_amplitudes(a), BranchSelect::minus());
    EXPECT_NEAR(raw.branch_probability, 0.5, 1e-12);
    EXPECT_LT(raw.fidelity_to_expected, 0.5);
    EXPECT_FALSE(raw.feed_forward_applied);

    JoinOptions ff;
    ff.feed_forward = true;
    const auto fixed = join_projective(TwoQubitInput::from_amplitudes(a), BranchSelect::minus(), ff);
    EXPECT_TRUE(fixed.feed_forward_applied);
    EXPECT_NEAR(fixed.fidelity_to_expected, 1.0, 1e-10);
    EXPECT_NEAR(fixed.success_probability, 1.0, 1e-12);
}

TEST(JoinProjective, SampledBranchIsDeterministicPerSeed)
{
    const auto in = TwoQubitInput::from_amplitudes(kBell);
    const auto a = join_projective(in, BranchSelect::sample(17));
    const auto b = join_projective(in, BranchSelect::sample(17));
    EXPECT_EQ(a.branch, b.branch);
    int plus = 0;
    for (std::uint64_t s = 0; s < 2000; ++s)
        plus += join_projective(in, BranchSelect::sample(s)).branch == "plus";
    // Binomial(2000, 1/2): five standard deviations is ~112.
    EXPECT_NEAR(plus, 1000, 112);
}

TEST(JoinProjective, EtaOnVacuumLegsBreaksFidelity)
{
    JoinOptions opt;
    opt.eta_first = 0.5;
    const auto r = join_projective(TwoQubitInput::from_amplitudes({0.5, 0.5, 0.5, 0.5}), BranchSelect::plus(), opt);
    EXPECT_LT(r.fidelity_to_expected, 1.0 - 1e-3);
}

TEST(JoinDeterministic, ControlEndsInZero)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_amplitudes(rng);
        const auto r = join_deterministic(TwoQubitInput::from_amplitudes(a));
        EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
        EXPECT_NEAR(r.fidelity_to_expected, 1.0, 1e-10);
        const auto cut = Bipartition::from_left(6, {4, 5});
        const auto sv = schmidt_coefficients(r.register_state, cut);
        EXPECT_TRUE(sv.size() == 1 || sv[1] < 1e-10);
        EXPECT_NEAR(condition_on(r.register_state, {4, 5}, {1, 0}).norm_squared(), 1.0, 1e-12);
    }
}

TEST(SplitProjective, BothBranches)
{
    std::mt19937_64 rng(22);
    const auto a = random_amplitudes(rng);
    const auto q = Ququart::from_amplitudes(a);
    const auto plus = split_projective(q, BranchSelect::plus());
    EXPECT_NEAR(plus.success_probability, 0.5, 1e-12);
    EXPECT_NEAR(plus.fidelity_to_expected, 1.0, 1e-10);
    const auto minus = split_projective(q, BranchSelect::minus(), true);
    EXPECT_NEAR(minus.branch_probability, 0.5, 1e-12);
    EXPECT_NEAR(minus.success_probability, 1.0, 1e-12);
    EXPECT_NEAR(minus.fidelity_to_expected, 1.0, 1e-10);
}

TEST(SplitDeterministic, AlwaysSucceeds)
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const auto r = split_deterministic(Ququart::from_amplitudes(random_amplitudes(rng)));
        EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
        EXPECT_NEAR(r.fidelity_to_expected, 1.0, 1e-10);
        EXPECT_EQ(r.output.modes(), 4);
    }
}

TEST(RoundTrip, SplitAfterJoinAndJoinAfterSplit)
{
    std::mt19937_64 rng(24);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_amplitudes(rng);
        const auto joined = join_deterministic(TwoQubitInput::from_amplitudes(a));
        const auto back = split_deterministic(Ququart::from_state(joined.output));
        EXPECT_NEAR(fidelity(two_qubit_state(a), back.output), 1.0, 1e-10);

        const auto split = split_deterministic(Ququart::from_amplitudes(a));
        const auto again = join_deterministic(TwoQubitInput::from_state(split.output));
        EXPECT_NEAR(fidelity(ququart_state(a), again.output), 1.0, 1e-10);
    }
}

TEST(ProbabilityModel, PresetsAreExact)
{
    EXPECT_EQ(compose_success_probability(ProbabilityModel::ideal_projective(false)), Rational(1, 2));
    EXPECT_EQ(compose_success_probability(ProbabilityModel::ideal_projective(true)), Rational(1));
    EXPECT_EQ(compose_success_probability(ProbabilityModel::ideal_deterministic()), Rational(1));
    EXPECT_EQ(compose_success_probability(ProbabilityModel::heralded_linear(false)), Rational(1, 32));
    EXPECT_EQ(compose_success_probability(ProbabilityModel::heralded_linear(true)), Rational(1, 8));
}

TEST(ProbabilityModel, ValidationRejectsOutOfRange)
{
    ProbabilityModel m;
    m.p_cnot = Rational(3, 2);
    EXPECT_THROW(m.validate(), std::invalid_argument);
    m = ProbabilityModel::ideal_projective(true);
    m.feed_forward_gain = 4;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    EXPECT_NO_THROW(ProbabilityModel::heralded_linear(true).validate());
}

TEST(ProbabilityModel, MonotoneInCnotCount)
{
    auto m = ProbabilityModel::heralded_linear(false);
    Rational prev = compose_success_probability(m);
    for (int n = 3; n <= 6; ++n) {
        m.n_cnot = n;
        const Rational p = compose_success_probability(m);
        EXPECT_LT(p, prev);
        prev = p;
    }
}
