#include "fockjoin/linear_optics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fockjoin/kernels.hpp"

namespace fockjoin {

namespace {

void check_pair(int m, int i, int j, const char* what)
{
    if (i < 0 || j < 0 || i >= m || j >= m)
        throw DimensionError(std::string(what) + ": mode index out of range for " + std::to_string(m) + " modes");
    if (i == j)
        throw DimensionError(std::string(what) + ": the two modes must differ");
}

} // namespace

ModeUnitary ModeUnitary::from_matrix(Eigen::MatrixXcd u, double tol)
{
    if (u.rows() != u.cols() || u.rows() == 0)
        throw DimensionError("mode unitary must be a non-empty square matrix");
    ModeUnitary out(std::move(u));
    const double err = out.unitarity_error();
    if (!(err <= tol))
        throw DimensionError("matrix is not unitary (||u u^+ - I||_max = " + std::to_string(err) + ")");
    return out;
}

ModeUnitary ModeUnitary::from_operator(const Eigen::MatrixXcd& op, double tol)
{
    return from_matrix(op.transpose(), tol);
}

ModeUnitary ModeUnitary::identity(int m)
{
    if (m <= 0)
        throw DimensionError("mode count must be positive");
    return ModeUnitary(Eigen::MatrixXcd::Identity(m, m));
}

ModeUnitary ModeUnitary::adjoint() const { return ModeUnitary(u_.adjoint()); }

ModeUnitary ModeUnitary::then(const ModeUnitary& next) const
{
    if (next.dim() != dim())
        throw DimensionError("composing unitaries of different dimension");
    return ModeUnitary(u_ * next.u_);
}

double ModeUnitary::unitarity_error() const
{
    const auto n = u_.rows();
    return (u_ * u_.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

ProjectorSpec::ProjectorSpec(Eigen::VectorXcd phi) : phi_(std::move(phi))
{
    if (phi_.size() == 0)
        throw DimensionError("projector over zero modes");
    if (std::abs(phi_.squaredNorm() - 1.0) > kNormTolerance)
        throw NormalizationError("projector mode is not normalized");
}

ProjectorSpec ProjectorSpec::on_modes(int modes, const std::vector<std::pair<int, Complex>>& entries)
{
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(modes);
    for (const auto& [mode, value] : entries) {
        if (mode < 0 || mode >= modes)
            throw DimensionError("projector entry on mode " + std::to_string(mode) + " out of range");
        phi(mode) = value;
    }
    return ProjectorSpec(std::move(phi));
}

FockState apply_unitary(const FockState& s, const ModeUnitary& u)
{
    if (u.dim() != s.modes())
        throw DimensionError("unitary dimension " + std::to_string(u.dim()) + " does not match " +
                             std::to_string(s.modes()) + " modes");
    return kernels::expand_unitary_omp(s, u.matrix());
}

ProjectionResult apply_projector(const FockState& s, const ProjectorSpec& p)
{
    if (p.dim() != s.modes())
        throw DimensionError("projector dimension does not match the state");

    StateBuilder out(s.modes());
    for (const auto& [occ, amp] : s.terms()) {
        for (int h = 0; h < s.modes(); ++h) {
            const Complex w = p.phi()(h);
            if (occ[h] == 0 || w == Complex{})
                continue;
            Occupation lowered = occ;
            --lowered[h];
            out.add(std::move(lowered), std::conj(w) * std::sqrt(static_cast<double>(occ[h])) * amp);
        }
    }

    ProjectionResult r;
    r.unnormalized = std::move(out).build();
    r.probability = r.unnormalized.norm_squared();
    if (r.unnormalized.is_zero()) {
        r.null = true;
        r.probability = 0.0;
        r.state = FockState(s.modes());
    } else {
        r.state = r.unnormalized.normalized();
    }
    return r;
}

ProjectionResult postselect_vacuum(const FockState& s, const std::vector<int>& modes)
{
    for (int m : modes)
        if (m < 0 || m >= s.modes())
            throw DimensionError("vacuum check on mode " + std::to_string(m) + " out of range");

    StateBuilder out(s.modes());
    for (const auto& [occ, amp] : s.terms()) {
        bool empty = true;
        for (int m : modes) empty = empty && occ[m] == 0;
        if (empty)
            out.add(occ, amp);
    }

    ProjectionResult r;
    r.unnormalized = std::move(out).build();
    const double total = s.norm_squared();
    r.probability = total > 0.0 ? r.unnormalized.norm_squared() / total : 0.0;
    if (r.unnormalized.is_zero()) {
        r.null = true;
        r.probability = 0.0;
        r.state = FockState(s.modes());
    } else {
        r.state = r.unnormalized.normalized();
    }
    return r;
}

ModeUnitary beamsplitter(int m, int i, int j, double theta, double phase)
{
    check_pair(m, i, j, "beamsplitter");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    u(i, i) = c;
    u(i, j) = std::polar(s, phase);
    u(j, i) = -std::polar(s, -phase);
    u(j, j) = c;
    return ModeUnitary::from_matrix(std::move(u));
}

ModeUnitary hadamard_pair(int m, int i, int j)
{
    check_pair(m, i, j, "hadamard_pair");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    const double h = std::numbers::sqrt2 / 2.0;
    u(i, i) = h;
    u(i, j) = h;
    u(j, i) = h;
    u(j, j) = -h;
    return ModeUnitary::from_matrix(std::move(u));
}

ModeUnitary phase_shift(int m, int i, double phi)
{
    if (i < 0 || i >= m)
        throw DimensionError("phase_shift: mode index out of range");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    u(i, i) = std::polar(1.0, phi);
    return ModeUnitary::from_matrix(std::move(u));
}

ModeUnitary permutation(const std::vector<int>& perm)
{
    const int m = static_cast<int>(perm.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, m);
    std::vector<bool> hit(perm.size(), false);
    for (int i = 0; i < m; ++i) {
        if (perm[i] < 0 || perm[i] >= m || hit[perm[i]])
            throw DimensionError("permutation: not a permutation of 0.." + std::to_string(m - 1));
        hit[perm[i]] = true;
        u(i, perm[i]) = 1.0;
    }
    return ModeUnitary::from_matrix(std::move(u));
}

ModeUnitary haar_random_unitary(int m, std::uint64_t seed)
{
    if (m < 1)
        throw DimensionError("haar_random_unitary needs m >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            z(i, j) = Complex(gauss(rng), gauss(rng));

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int k = 0; k < m; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
    }
    return ModeUnitary::from_matrix(std::move(q));
}

} // namespace fockjoin
