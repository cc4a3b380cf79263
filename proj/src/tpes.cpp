#include "fockjoin/tpes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockjoin/errors.hpp"
#include "fockjoin/linear_optics.hpp"

namespace fockjoin {

namespace {

// Two-qubit Bell coefficients over (bit of i, bit of j).
Eigen::Matrix2cd bell_coefficients(BellKind kind)
{
    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::Matrix2cd c = Eigen::Matrix2cd::Zero();
    switch (kind) {
    case BellKind::PsiPlus:  c(0, 0) = h; c(1, 1) = h; break;
    case BellKind::PsiMinus: c(0, 0) = h; c(1, 1) = -h; break;
    case BellKind::PhiPlus:  c(0, 1) = h; c(1, 0) = h; break;
    case BellKind::PhiMinus: c(0, 1) = h; c(1, 0) = -h; break;
    }
    return c;
}

int local_index(int pol, int path) { return 2 * pol + path; }

void require_unit(Complex a, Complex b, const char* what)
{
    const double n = std::norm(a) + std::norm(b);
    if (std::abs(n - 1.0) > kNormTolerance)
        throw NormalizationError(std::string(what) + " amplitudes are not normalized (sum |.|^2 = " +
                                 std::to_string(n) + ")");
}

std::vector<int> photon_modes(std::initializer_list<int> photons)
{
    std::vector<int> modes;
    for (int p : photons)
        for (int k = 0; k < 4; ++k)
            modes.push_back(4 * p + k);
    return modes;
}

FockState five_photon_state(Complex alpha, Complex beta, Complex gamma, Complex delta, const Resource& r)
{
    Eigen::VectorXcd psi4 = Eigen::VectorXcd::Zero(4);
    psi4(local_index(0, 0)) = alpha;
    psi4(local_index(1, 0)) = beta;
    Eigen::VectorXcd psi5 = Eigen::VectorXcd::Zero(4);
    psi5(local_index(0, 0)) = gamma;
    psi5(local_index(0, 1)) = delta;
    return tensor(tensor(build_tpes(r.polarization, r.path), photons_state(1, psi4)), photons_state(1, psi5));
}

// Photon-1 state left by projecting (2,4) and (3,5) of a 5-photon state.
FockState project_pairs(const FockState& five, const BellOutcome& o)
{
    const FockState bra = tensor(bell_state(o.polarization, Dof::Polarization), bell_state(o.path, Dof::Path));
    std::vector<int> modes = photon_modes({1, 3});
    const std::vector<int> path_modes = photon_modes({2, 4});
    modes.insert(modes.end(), path_modes.begin(), path_modes.end());
    return contract(five, modes, bra);
}

Eigen::Vector4cd as_vector(const FockState& photon)
{
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    for (int k = 0; k < 4; ++k) {
        Occupation occ(4, 0);
        occ[static_cast<std::size_t>(k)] = 1;
        v(k) = photon.amplitude(occ);
    }
    return v;
}

const CorrectionTable& cached_correction_table(const Resource& r)
{
    static std::mutex mu;
    static std::map<int, CorrectionTable> cache;
    const int key = 4 * static_cast<int>(r.polarization) + static_cast<int>(r.path);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, derive_correction_table(r)).first;
    return it->second;
}

} // namespace

std::string to_string(BellKind kind, Dof dof)
{
    const bool pol = dof == Dof::Polarization;
    switch (kind) {
    case BellKind::PsiPlus:  return pol ? "Psi+" : "psi+";
    case BellKind::PsiMinus: return pol ? "Psi-" : "psi-";
    case BellKind::PhiPlus:  return pol ? "Phi+" : "phi+";
    case BellKind::PhiMinus: return pol ? "Phi-" : "phi-";
    }
    return "?";
}

BellKind parse_bell_kind(std::string_view name)
{
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "psi+") return BellKind::PsiPlus;
    if (s == "psi-") return BellKind::PsiMinus;
    if (s == "phi+") return BellKind::PhiPlus;
    if (s == "phi-") return BellKind::PhiMinus;
    throw std::invalid_argument("unknown Bell state '" + std::string(name) + "' (expected psi+, psi-, phi+, phi-)");
}

BellOutcome BellOutcome::from_index(int k)
{
    if (k < 0 || k >= 16)
        throw std::invalid_argument("Bell outcome index must be in [0, 16), got " + std::to_string(k));
    return {static_cast<BellKind>(k / 4), static_cast<BellKind>(k % 4)};
}

std::array<BellOutcome, 16> BellOutcome::all()
{
    std::array<BellOutcome, 16> out;
    for (int k = 0; k < 16; ++k)
        out[static_cast<std::size_t>(k)] = from_index(k);
    return out;
}

std::string BellOutcome::label() const
{
    return to_string(polarization, Dof::Polarization) + "," + to_string(path, Dof::Path);
}

int photon_mode(int photon, int pol, int path) { return 4 * photon + local_index(pol, path); }

FockState photons_state(int photons, const Eigen::VectorXcd& t)
{
    Eigen::Index expected = 1;
    for (int p = 0; p < photons; ++p) expected *= 4;
    if (t.size() != expected)
        throw DimensionError("photon tensor has size " + std::to_string(t.size()) + ", expected " +
                             std::to_string(expected));
    StateBuilder b(4 * photons);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t(i) == Complex{})
            continue;
        Occupation occ(static_cast<std::size_t>(4 * photons), 0);
        Eigen::Index rest = i;
        for (int p = photons - 1; p >= 0; --p) {
            occ[static_cast<std::size_t>(4 * p + rest % 4)] = 1;
            rest /= 4;
        }
        b.add(std::move(occ), t(i));
    }
    return std::move(b).build();
}

Eigen::VectorXcd photon_tensor(const FockState& s)
{
    if (s.modes() % 4 != 0)
        throw EncodingError("photon register needs a multiple of 4 modes");
    const int photons = s.modes() / 4;
    Eigen::Index size = 1;
    for (int p = 0; p < photons; ++p) size *= 4;
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(size);
    for (const auto& [occ, amp] : s.terms()) {
        Eigen::Index idx = 0;
        for (int p = 0; p < photons; ++p) {
            int which = -1;
            int count = 0;
            for (int k = 0; k < 4; ++k) {
                const int n = occ[static_cast<std::size_t>(4 * p + k)];
                count += n;
                if (n == 1) which = k;
            }
            if (count != 1 || which < 0)
                throw EncodingError("photon " + std::to_string(p) + " does not hold exactly one quantum");
            idx = 4 * idx + which;
        }
        t(idx) = amp;
    }
    return t;
}

Eigen::Matrix4cd bell_matrix(BellKind kind, Dof dof)
{
    const Eigen::Matrix2cd c = bell_coefficients(kind);
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            if (dof == Dof::Polarization)
                b(local_index(x, 0), local_index(y, 0)) = c(x, y);
            else
                b(local_index(0, x), local_index(0, y)) = c(x, y);
        }
    }
    return b;
}

FockState bell_state(BellKind kind, Dof dof)
{
    const Eigen::Matrix4cd b = bell_matrix(kind, dof);
    Eigen::VectorXcd t(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t(4 * i + j) = b(i, j);
    return photons_state(2, t);
}

FockState build_tpes(BellKind pol, BellKind path)
{
    const Eigen::Matrix2cd cp = bell_coefficients(pol);
    const Eigen::Matrix2cd cq = bell_coefficients(path);
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(64);
    for (int p1 = 0; p1 < 2; ++p1)
        for (int q1 = 0; q1 < 2; ++q1)
            for (int p2 = 0; p2 < 2; ++p2)
                for (int q3 = 0; q3 < 2; ++q3)
                    t(16 * local_index(p1, q1) + 4 * local_index(p2, 0) + local_index(0, q3)) =
                        cp(p1, p2) * cq(q1, q3);
    return photons_state(3, t);
}

Eigen::Matrix4cd joining_basis_map()
{
    Eigen::Matrix4cd j;
    for (int k = 0; k < 4; ++k) {
        Amplitudes4 e{};
        e[static_cast<std::size_t>(k)] = 1.0;
        const SchemeReport r = join_deterministic(TwoQubitInput::from_amplitudes(e));
        j.col(k) = as_vector(r.output);
    }
    return j;
}

FockState tpes_via_joining(BellKind pol, BellKind path)
{
    // Photon 4 carries the polarization qubit (t), photon 5 the path qubit (c).
    const Eigen::Matrix2cd cp = bell_coefficients(pol);
    const Eigen::Matrix2cd cq = bell_coefficients(path);
    const Eigen::Matrix4cd join = joining_basis_map();
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(64);
    for (int p2 = 0; p2 < 2; ++p2)
        for (int p4 = 0; p4 < 2; ++p4)
            for (int q3 = 0; q3 < 2; ++q3)
                for (int q5 = 0; q5 < 2; ++q5) {
                    const Complex w = cp(p2, p4) * cq(q3, q5);
                    if (w == Complex{})
                        continue;
                    for (int k1 = 0; k1 < 4; ++k1)
                        t(16 * k1 + 4 * local_index(p2, 0) + local_index(0, q3)) +=
                            w * join(k1, local_index(p4, q5));
                }
    return photons_state(3, t);
}

std::array<BellBranch, 16> expand_5photon(Complex alpha, Complex beta, Complex gamma, Complex delta,
                                          const Resource& resource)
{
    require_unit(alpha, beta, "photon-4");
    require_unit(gamma, delta, "photon-5");
    const FockState five = five_photon_state(alpha, beta, gamma, delta, resource);

    std::array<BellBranch, 16> out;
    for (const BellOutcome& o : BellOutcome::all()) {
        BellBranch& br = out[static_cast<std::size_t>(o.index())];
        br.outcome = o;
        const FockState photon1 = project_pairs(five, o);
        br.amplitudes = as_vector(photon1);
        br.weight = photon1.norm_squared();
        br.conditional = photon1.is_zero() ? FockState(4) : photon1.normalized();
    }
    return out;
}

std::string to_string(Pauli p)
{
    switch (p) {
    case Pauli::I:  return "I";
    case Pauli::Z:  return "Z";
    case Pauli::X:  return "X";
    case Pauli::XZ: return "XZ";
    }
    return "?";
}

Eigen::Matrix2cd pauli_matrix(Pauli p)
{
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    switch (p) {
    case Pauli::I:  return Eigen::Matrix2cd::Identity();
    case Pauli::Z:  return z;
    case Pauli::X:  return x;
    case Pauli::XZ: return x * z;
    }
    return Eigen::Matrix2cd::Identity();
}

Eigen::Matrix4cd Correction::op() const
{
    const Eigen::Matrix2cd a = pauli_matrix(polarization);
    const Eigen::Matrix2cd b = pauli_matrix(path);
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

std::string Correction::label() const { return to_string(polarization) + "(x)" + to_string(path); }

FockState joined_target(Complex alpha, Complex beta, Complex gamma, Complex delta)
{
    Eigen::VectorXcd t(4);
    t << alpha * gamma, alpha * delta, beta * gamma, beta * delta;
    return photons_state(1, t);
}

CorrectionTable derive_correction_table(const Resource& resource)
{
    // Two generic instantiations: a single one can be accidentally fixed by
    // a wrong Pauli (e.g. alpha = beta).
    struct Instance {
        Complex a, b, c, d;
    };
    std::array<Instance, 2> inst;
    std::mt19937_64 rng(0x7e57ab1eULL);
    std::normal_distribution<double> g;
    for (auto& in : inst) {
        Complex v[4];
        for (auto& x : v) x = Complex(g(rng), g(rng));
        const double n1 = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        const double n2 = std::sqrt(std::norm(v[2]) + std::norm(v[3]));
        in = {v[0] / n1, v[1] / n1, v[2] / n2, v[3] / n2};
    }

    std::array<std::array<BellBranch, 16>, 2> branches;
    std::array<FockState, 2> targets{FockState(4), FockState(4)};
    for (std::size_t i = 0; i < 2; ++i) {
        branches[i] = expand_5photon(inst[i].a, inst[i].b, inst[i].c, inst[i].d, resource);
        targets[i] = joined_target(inst[i].a, inst[i].b, inst[i].c, inst[i].d);
    }

    const std::array<Pauli, 4> set{Pauli::I, Pauli::Z, Pauli::X, Pauli::XZ};
    CorrectionTable table;
    for (int k = 0; k < 16; ++k) {
        bool found = false;
        for (Pauli pp : set) {
            for (Pauli pq : set) {
                const Correction cand{pp, pq};
                const ModeUnitary u = ModeUnitary::from_operator(cand.op());
                bool ok = true;
                for (std::size_t i = 0; i < 2 && ok; ++i) {
                    const FockState& cond = branches[i][static_cast<std::size_t>(k)].conditional;
                    ok = !cond.is_zero() && fidelity(targets[i], apply_unitary(cond, u)) >= 1.0 - 1e-10;
                }
                if (ok && !found) {
                    table[static_cast<std::size_t>(k)] = cand;
                    found = true;
                }
            }
        }
        if (!found)
            throw Error("no local Pauli correction for Bell outcome " + BellOutcome::from_index(k).label());
    }
    return table;
}

TeleportReport teleport_join(Complex alpha, Complex beta, Complex gamma, Complex delta, OutcomeSelect select,
                             const Resource& resource)
{
    require_unit(alpha, beta, "photon-4");
    require_unit(gamma, delta, "photon-5");
    const FockState five = five_photon_state(alpha, beta, gamma, delta, resource);

    BellOutcome outcome;
    if (select.forced) {
        outcome = *select.forced;
    } else {
        std::array<double, 16> w{};
        for (const BellOutcome& o : BellOutcome::all())
            w[static_cast<std::size_t>(o.index())] = project_pairs(five, o).norm_squared();
        std::mt19937_64 rng(select.seed);
        std::discrete_distribution<int> pick(w.begin(), w.end());
        outcome = BellOutcome::from_index(pick(rng));
    }

    const FockState photon1 = project_pairs(five, outcome);
    const Correction corr = cached_correction_table(resource)[static_cast<std::size_t>(outcome.index())];

    TeleportReport r;
    r.outcome = outcome;
    r.correction = corr;
    r.scheme.register_state = photon1;
    r.scheme.expected = joined_target(alpha, beta, gamma, delta);
    r.scheme.branch = outcome.label();
    r.scheme.branch_probability = photon1.norm_squared();
    // Every outcome is corrected, so the scheme always delivers the target.
    r.scheme.success_probability = 1.0;
    r.scheme.feed_forward_applied = !corr.is_identity();
    r.scheme.output = photon1.is_zero()
                          ? FockState(4)
                          : apply_unitary(photon1.normalized(), ModeUnitary::from_operator(corr.op()));
    r.scheme.fidelity_to_expected = r.scheme.output.is_zero() ? 0.0 : fidelity(r.scheme.expected, r.scheme.output);
    return r;
}

} // namespace fockjoin
