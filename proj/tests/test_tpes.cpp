#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fockjoin/tpes.hpp"
#include "support.hpp"
#include "sign_table_fixture.hpp"

using namespace fockjoin;

namespace {

const double kH = std::numbers::sqrt2 / 2.0;

const std::array<BellKind, 4> kKinds{BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus};

} // namespace

TEST(Bell, NamesRoundTrip)
{
    for (BellKind k : kKinds) {
        EXPECT_EQ(parse_bell_kind(to_string(k, Dof::Polarization)), k);
        EXPECT_EQ(parse_bell_kind(to_string(k, Dof::Path)), k);
    }
    EXPECT_THROW(parse_bell_kind("chi+"), std::invalid_argument);
    for (int k = 0; k < 16; ++k) EXPECT_EQ(BellOutcome::from_index(k).index(), k);
    EXPECT_THROW(BellOutcome::from_index(16), std::invalid_argument);
}

TEST(Bell, PhiMinusPolarization)
{
    // (H1 V2 - V1 H2)/sqrt2 with both photons in u.
    const auto s = bell_state(BellKind::PhiMinus, Dof::Polarization);
    Occupation hv(8, 0), vh(8, 0);
    hv[static_cast<std::size_t>(photon_mode(0, 0, 0))] = 1;
    hv[static_cast<std::size_t>(photon_mode(1, 1, 0))] = 1;
    vh[static_cast<std::size_t>(photon_mode(0, 1, 0))] = 1;
    vh[static_cast<std::size_t>(photon_mode(1, 0, 0))] = 1;
    EXPECT_NEAR(std::abs(s.amplitude(hv) - kH), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(vh) + kH), 0.0, 1e-15);
    EXPECT_EQ(s.size(), 2u);
}

TEST(Bell, PsiPlusPath)
{
    // (uu + dd)/sqrt2 with both photons H.
    const auto s = bell_state(BellKind::PsiPlus, Dof::Path);
    Occupation uu(8, 0), dd(8, 0);
    uu[static_cast<std::size_t>(photon_mode(0, 0, 0))] = 1;
    uu[static_cast<std::size_t>(photon_mode(1, 0, 0))] = 1;
    dd[static_cast<std::size_t>(photon_mode(0, 0, 1))] = 1;
    dd[static_cast<std::size_t>(photon_mode(1, 0, 1))] = 1;
    EXPECT_NEAR(std::abs(s.amplitude(uu) - kH), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(dd) - kH), 0.0, 1e-15);
}

TEST(Bell, BasesAreOrthonormal)
{
    for (Dof dof : {Dof::Polarization, Dof::Path}) {
        for (BellKind a : kKinds) {
            for (BellKind b : kKinds) {
                const Complex ip = inner_product(bell_state(a, dof), bell_state(b, dof));
                EXPECT_NEAR(std::abs(ip - (a == b ? 1.0 : 0.0)), 0.0, 1e-15);
            }
        }
    }
}

TEST(PhotonTensor, RoundTrip)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::VectorXcd t(16);
    for (auto& x : t) x = Complex(g(rng), g(rng));
    EXPECT_LT((photon_tensor(photons_state(2, t)) - t).norm(), 1e-15);
    EXPECT_THROW(photons_state(2, Eigen::VectorXcd::Zero(5)), DimensionError);
    EXPECT_THROW(photon_tensor(FockState::basis({1, 1, 0, 0})), EncodingError);
}

TEST(Tpes, DisplayedState)
{
    // 1/2 (H1 V2 - V1 H2) H3 (x) (u1 d3 - d1 u3) u2.
    const auto s = build_tpes(BellKind::PhiMinus, BellKind::PhiMinus);
    const auto t = photon_tensor(s);
    auto idx = [](int p1, int q1, int p2, int q2, int p3, int q3) {
        return 16 * (2 * p1 + q1) + 4 * (2 * p2 + q2) + (2 * p3 + q3);
    };
    EXPECT_NEAR(std::abs(t(idx(0, 0, 1, 0, 0, 1)) - 0.5), 0.0, 1e-15);  // H u | V u | H d
    EXPECT_NEAR(std::abs(t(idx(0, 1, 1, 0, 0, 0)) + 0.5), 0.0, 1e-15);  // H d | V u | H u
    EXPECT_NEAR(std::abs(t(idx(1, 0, 0, 0, 0, 1)) + 0.5), 0.0, 1e-15);  // V u | H u | H d
    EXPECT_NEAR(std::abs(t(idx(1, 1, 0, 0, 0, 0)) - 0.5), 0.0, 1e-15);  // V d | H u | H u
    EXPECT_EQ(s.size(), 4u);
    EXPECT_TRUE(s.is_normalized());
}

TEST(Tpes, PhotonOneMaximallyEntangledWithTheRest)
{
    for (BellKind p : kKinds) {
        for (BellKind q : kKinds) {
            const auto s = build_tpes(p, q);
            EXPECT_EQ(schmidt_rank(s, Bipartition::from_left(12, {0, 1, 2, 3})), 4);
            for (double c : schmidt_coefficients(s, Bipartition::from_left(12, {0, 1, 2, 3})))
                EXPECT_NEAR(c, 0.5, 1e-12);
        }
    }
}

TEST(Tpes, VariantsAreOrthonormal)
{
    for (BellKind a : kKinds)
        for (BellKind b : kKinds)
            for (BellKind c : kKinds)
                for (BellKind d : kKinds) {
                    const double expect = (a == c && b == d) ? 1.0 : 0.0;
                    EXPECT_NEAR(std::abs(inner_product(build_tpes(a, b), build_tpes(c, d))), expect, 1e-12);
                }
}

TEST(Tpes, JoiningMapsBasisStatesOntoPhotonOneRails)
{
    EXPECT_LT((joining_basis_map() - Eigen::Matrix4cd::Identity()).norm(), 1e-12);
}

TEST(Tpes, ViaJoiningMatchesDirectConstruction)
{
    for (BellKind p : kKinds)
        for (BellKind q : kKinds)
            EXPECT_NEAR(fidelity(build_tpes(p, q), tpes_via_joining(p, q)), 1.0, 1e-10)
                << to_string(p, Dof::Polarization) << to_string(q, Dof::Path);
}

TEST(Expansion, MatchesSignFixture)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto [a, b] = testing_support::random_qubit(rng);
        const auto [c, d] = testing_support::random_qubit(rng);
        const auto branches = expand_5photon(a, b, c, d);
        for (const auto& row : sign_table::kRows) {
            const auto& br = branches[static_cast<std::size_t>(BellOutcome{row.pol, row.path}.index())];
            EXPECT_LT((br.amplitudes - sign_table::branch_amplitudes(row, a, b, c, d)).norm(), 1e-12)
                << br.outcome.label();
            EXPECT_NEAR(br.weight, 1.0 / 16.0, 1e-12);
        }
    }
}

TEST(Expansion, BranchesReconstructInput)
{
    // sum_k |Bell_k>_24 |Bell_k>_35 (x) amplitudes_k rebuilds the 5-photon tensor.
    std::mt19937_64 rng(3);
    const auto [a, b] = testing_support::random_qubit(rng);
    const auto [c, d] = testing_support::random_qubit(rng);
    const auto branches = expand_5photon(a, b, c, d);

    Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(1024);
    for (const auto& br : branches) {
        const auto b24 = bell_matrix(br.outcome.polarization, Dof::Polarization);
        const auto b35 = bell_matrix(br.outcome.path, Dof::Path);
        for (int k1 = 0; k1 < 4; ++k1)
            for (int k2 = 0; k2 < 4; ++k2)
                for (int k3 = 0; k3 < 4; ++k3)
                    for (int k4 = 0; k4 < 4; ++k4)
                        for (int k5 = 0; k5 < 4; ++k5)
                            rebuilt(256 * k1 + 64 * k2 + 16 * k3 + 4 * k4 + k5) +=
                                b24(k2, k4) * b35(k3, k5) * br.amplitudes(k1);
    }
    Eigen::VectorXcd psi4 = Eigen::VectorXcd::Zero(4), psi5 = Eigen::VectorXcd::Zero(4);
    psi4 << a, 0, b, 0;
    psi5 << c, d, 0, 0;
    const auto five = tensor(tensor(build_tpes(BellKind::PhiMinus, BellKind::PhiMinus), photons_state(1, psi4)),
                             photons_state(1, psi5));
    EXPECT_LT((photon_tensor(five) - rebuilt).norm(), 1e-12);
}

TEST(Expansion, RejectsUnnormalizedInputs)
{
    EXPECT_THROW(expand_5photon(1.0, 1.0, 1.0, 0.0), NormalizationError);
    EXPECT_THROW(teleport_join(1.0, 0.0, 0.5, 0.0, OutcomeSelect::sample(1)), NormalizationError);
}

TEST(Corrections, KnownEntries)
{
    const auto table = derive_correction_table();
    auto at = [&](BellKind p, BellKind q) { return table[static_cast<std::size_t>(BellOutcome{p, q}.index())]; };
    EXPECT_TRUE(at(BellKind::PhiMinus, BellKind::PhiMinus).is_identity());
    EXPECT_EQ(at(BellKind::PhiPlus, BellKind::PhiMinus).polarization, Pauli::Z);
    EXPECT_EQ(at(BellKind::PhiPlus, BellKind::PhiMinus).path, Pauli::I);
    EXPECT_EQ(at(BellKind::PsiMinus, BellKind::PhiMinus).polarization, Pauli::X);
    EXPECT_EQ(at(BellKind::PsiPlus, BellKind::PsiPlus).polarization, Pauli::XZ);
    EXPECT_EQ(at(BellKind::PsiPlus, BellKind::PsiPlus).path, Pauli::XZ);
    for (const auto& c : table) EXPECT_LT((c.op() * c.op().adjoint() - Eigen::Matrix4cd::Identity()).norm(), 1e-15);
}

TEST(Teleport, AllOutcomesRecoverTarget)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [a, b] = testing_support::random_qubit(rng);
        const auto [c, d] = testing_support::random_qubit(rng);
        for (const auto& o : BellOutcome::all()) {
            const auto r = teleport_join(a, b, c, d, OutcomeSelect::fixed(o));
            EXPECT_NEAR(r.scheme.branch_probability, 1.0 / 16.0, 1e-12);
            EXPECT_NEAR(r.scheme.fidelity_to_expected, 1.0, 1e-10) << o.label();
        }
    }
}

TEST(Teleport, BasisInputsGiveHu)
{
    for (const auto& o : BellOutcome::all()) {
        const auto r = teleport_join(1.0, 0.0, 1.0, 0.0, OutcomeSelect::fixed(o));
        EXPECT_NEAR(std::abs(r.scheme.output.amplitude({1, 0, 0, 0})), 1.0, 1e-12);
    }
}

TEST(Teleport, OtherResourceChangesOnlyCorrections)
{
    std::mt19937_64 rng(5);
    const auto [a, b] = testing_support::random_qubit(rng);
    const auto [c, d] = testing_support::random_qubit(rng);
    for (BellKind p : kKinds) {
        for (BellKind q : kKinds) {
            const Resource res{p, q};
            for (const auto& o : BellOutcome::all())
                EXPECT_NEAR(teleport_join(a, b, c, d, OutcomeSelect::fixed(o), res).scheme.fidelity_to_expected, 1.0,
                            1e-10);
        }
    }
    const auto base = derive_correction_table();
    const auto other = derive_correction_table({BellKind::PsiPlus, BellKind::PsiPlus});
    int differing = 0;
    for (int k = 0; k < 16; ++k)
        differing += base[k].polarization != other[k].polarization || base[k].path != other[k].path;
    EXPECT_GT(differing, 0);
}

TEST(Teleport, SampledOutcomesAreUniform)
{
    std::array<int, 16> counts{};
    const int n = 4000;
    for (int s = 0; s < n; ++s)
        ++counts[static_cast<std::size_t>(
            teleport_join(0.6, 0.8, kH, kH, OutcomeSelect::sample(static_cast<std::uint64_t>(s))).outcome.index())];
    const double mean = n / 16.0;
    const double sd = std::sqrt(n * (1.0 / 16.0) * (15.0 / 16.0));
    for (int c : counts) EXPECT_NEAR(c, mean, 5 * sd);
}
