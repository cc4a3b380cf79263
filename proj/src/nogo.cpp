#include "fockjoin/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "fockjoin/errors.hpp"
#include "fockjoin/kernels.hpp"

namespace fockjoin {

namespace {

// Which phi_h* sits at each entry of M; -1 is a structural zero. Shared by
// the numeric and the symbolic determinant.
constexpr int kMPattern[4][4] = {
    {2, -1, 0, -1},
    {3, -1, -1, 0},
    {-1, 2, 1, -1},
    {-1, 3, -1, 1},
};

// |u>_k = phi_{a}* chi_{b} + phi_{b}* chi_{a}: the two logical modes of
// each symmetrized pair, 0-based.
constexpr int kPairs[4][2] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};

int permutation_sign(const std::array<int, 4>& p)
{
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

Eigen::VectorXd svd_values(const Eigen::MatrixXcd& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues();
}

double relative_singular_value(const Eigen::MatrixXcd& a, int index)
{
    const Eigen::VectorXd s = svd_values(a);
    if (s.size() <= index || s(0) <= 0.0)
        return 0.0;
    return s(index) / s(0);
}

void check_modes(int m)
{
    if (m < 4)
        throw DimensionError("the no-go scan needs at least 4 modes, got " + std::to_string(m));
}

void check_logical(int m, const std::array<int, 4>& logical)
{
    auto sorted = logical;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionError("logical modes must be distinct");
    if (sorted.front() < 0 || sorted.back() >= m)
        throw DimensionError("logical mode out of range");
}

double scan_trial(int m, std::uint64_t seed)
{
    const ModeUnitary u = haar_random_unitary(m, seed);
    const ProjectorSpec phi = random_projector(m, seed ^ 0x5bd1e995ULL);
    return symmetrized_modes(u, phi).relative_sigma_min();
}

double control_trial(int m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd rows(4, m);
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < m; ++j)
            rows(k, j) = Complex(g(rng), g(rng));
        rows.row(k).normalize();
    }
    return relative_singular_value(rows, 3);
}

NogoCertificate certify(int m, long trials, const kernels::ScanResult& r)
{
    NogoCertificate c;
    c.modes = m;
    c.trials = trials;
    c.max_sigma_min = r.max_value;
    c.argmax_seed = r.argmax_seed;
    c.verdict = r.max_value > c.threshold ? Verdict::CounterexampleFound : Verdict::RankDeficient;
    return c;
}

struct SearchContext {
    int m;
    SearchObjective objective;
};

Eigen::VectorXcd projector_from_params(int m, const double* x)
{
    Eigen::VectorXcd phi(m);
    for (int h = 0; h < m; ++h)
        phi(h) = Complex(x[2 * h], x[2 * h + 1]);
    return phi;
}

double search_value(int m, SearchObjective objective, const double* x)
{
    const ModeUnitary u = unitary_from_angles(m, x);
    Eigen::VectorXcd phi = projector_from_params(m, x + m * m);
    const double n = phi.norm();
    if (n < 1e-12)
        return 0.0;
    phi /= n;
    const SymmetrizedModeSet modes = symmetrized_modes(u, ProjectorSpec(phi));
    return relative_singular_value(modes.coeffs, objective == SearchObjective::SigmaMin ? 3 : 2);
}

double search_objective(const gsl_vector* v, void* params)
{
    const auto* ctx = static_cast<const SearchContext*>(params);
    return -search_value(ctx->m, ctx->objective, v->data);
}

struct RestartResult {
    double best = 0.0;
    long iterations = 0;
};

RestartResult run_restart(int m, int iterations, std::uint64_t seed, SearchObjective objective)
{
    const std::size_t n = static_cast<std::size_t>(m * m + 2 * m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> g;

    gsl_vector* x = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i)
        gsl_vector_set(x, i, i < static_cast<std::size_t>(m * m) ? angle(rng) : g(rng));
    gsl_vector* step = gsl_vector_alloc(n);
    gsl_vector_set_all(step, 0.5);

    SearchContext ctx{m, objective};
    gsl_multimin_function f{&search_objective, n, &ctx};
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &f, x, step);

    RestartResult r;
    r.best = -s->fval;
    for (int it = 0; it < iterations; ++it) {
        ++r.iterations;
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS)
            break;
        r.best = std::max(r.best, -s->fval);
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS)
            break;
    }

    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return r;
}

} // namespace

Eigen::Matrix4cd build_m_matrix(const Phi4& phi)
{
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (kMPattern[r][c] >= 0)
                m(r, c) = std::conj(phi[static_cast<std::size_t>(kMPattern[r][c])]);
    return m;
}

SymbolicDeterminant symbolic_m_determinant()
{
    SymbolicDeterminant det;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        Monomial mono{};
        bool zero = false;
        for (int r = 0; r < 4 && !zero; ++r) {
            const int var = kMPattern[r][perm[static_cast<std::size_t>(r)]];
            if (var < 0)
                zero = true;
            else
                ++mono[static_cast<std::size_t>(var)];
        }
        if (zero)
            continue;
        ++det.contributing_permutations;
        det.polynomial[mono] += permutation_sign(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::erase_if(det.polynomial, [](const auto& kv) { return kv.second == 0; });
    return det;
}

Eigen::VectorXd SymmetrizedModeSet::singular_values() const { return svd_values(coeffs); }

double SymmetrizedModeSet::relative_sigma_min() const { return relative_singular_value(coeffs, 3); }

int SymmetrizedModeSet::rank(double rel_tol) const
{
    const Eigen::VectorXd s = singular_values();
    if (s.size() == 0 || s(0) <= 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) / s(0) > rel_tol) ++r;
    return r;
}

SymmetrizedModeSet symmetrized_modes(const ModeUnitary& u, const ProjectorSpec& phi,
                                     const std::array<int, 4>& logical_modes)
{
    const int m = u.dim();
    if (phi.dim() != m)
        throw DimensionError("projector and unitary dimensions differ");
    check_logical(m, logical_modes);

    const Eigen::VectorXcd& p = phi.phi();
    SymmetrizedModeSet set;
    set.coeffs.resize(4, m);
    for (int k = 0; k < 4; ++k) {
        const int a = logical_modes[static_cast<std::size_t>(kPairs[k][0])];
        const int b = logical_modes[static_cast<std::size_t>(kPairs[k][1])];
        set.coeffs.row(k) = std::conj(p(b)) * u.matrix().row(a) + std::conj(p(a)) * u.matrix().row(b);
    }
    return set;
}

std::string to_string(Verdict v)
{
    return v == Verdict::RankDeficient ? "rank-deficient" : "counterexample-found";
}

ProjectorSpec random_projector(int m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd phi(m);
    for (int h = 0; h < m; ++h)
        phi(h) = Complex(g(rng), g(rng));
    phi.normalize();
    return ProjectorSpec(phi);
}

NogoCertificate rank_scan(int m, long trials, std::uint64_t seed)
{
    check_modes(m);
    return certify(m, trials, kernels::max_scan_omp(trials, seed, [m](std::uint64_t s) { return scan_trial(m, s); }));
}

NogoCertificate rank_scan_serial(int m, long trials, std::uint64_t seed)
{
    check_modes(m);
    return certify(m, trials,
                   kernels::max_scan_serial(trials, seed, [m](std::uint64_t s) { return scan_trial(m, s); }));
}

NogoCertificate rank_scan_control(int m, long trials, std::uint64_t seed)
{
    check_modes(m);
    return certify(m, trials,
                   kernels::max_scan_omp(trials, seed, [m](std::uint64_t s) { return control_trial(m, s); }));
}

ModeUnitary unitary_from_angles(int m, const double* params)
{
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    const double* x = params;
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            const double c = std::cos(x[0]);
            const double s = std::sin(x[0]);
            const Complex e = std::polar(1.0, x[1]);
            x += 2;
            // u <- u * T_pq, T = [[c, e s], [-conj(e) s, c]] on (p, q)
            const Eigen::VectorXcd col_p = u.col(p);
            const Eigen::VectorXcd col_q = u.col(q);
            u.col(p) = c * col_p - std::conj(e) * s * col_q;
            u.col(q) = e * s * col_p + c * col_q;
        }
    }
    for (int j = 0; j < m; ++j)
        u.col(j) *= std::polar(1.0, x[j]);
    return ModeUnitary::from_matrix(std::move(u), 1e-9);
}

NogoCertificate adversarial_search(int m, int restarts, int iterations, std::uint64_t seed, SearchObjective objective)
{
    check_modes(m);
    if (restarts < 1 || iterations < 1)
        throw std::invalid_argument("adversarial search needs at least one restart and one iteration");
    gsl_set_error_handler_off();

    std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r)
        results[static_cast<std::size_t>(r)] = run_restart(m, iterations, kernels::trial_seed(seed, r), objective);

    NogoCertificate c;
    c.modes = m;
    c.trials = restarts;
    for (int r = 0; r < restarts; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        c.optimizer_iterations += res.iterations;
        if (r == 0 || res.best > c.max_sigma_min) {
            c.max_sigma_min = res.best;
            c.argmax_seed = kernels::trial_seed(seed, r);
        }
    }
    c.verdict = c.max_sigma_min > c.threshold ? Verdict::CounterexampleFound : Verdict::RankDeficient;
    return c;
}

ProjectionCheck end_to_end_projection_check(const Amplitudes4& alpha, const ModeUnitary& u, const ProjectorSpec& phi,
                                            const std::array<int, 4>& logical_modes)
{
    const int m = u.dim();
    if (phi.dim() != m)
        throw DimensionError("projector and unitary dimensions differ");
    check_logical(m, logical_modes);

    StateBuilder in(m);
    for (int k = 0; k < 4; ++k) {
        Occupation occ(static_cast<std::size_t>(m), 0);
        occ[static_cast<std::size_t>(logical_modes[static_cast<std::size_t>(kPairs[k][0])])] = 1;
        occ[static_cast<std::size_t>(logical_modes[static_cast<std::size_t>(kPairs[k][1])])] = 1;
        in.add(std::move(occ), alpha[static_cast<std::size_t>(k)]);
    }
    const FockState evolved = apply_unitary(std::move(in).build(), u);

    // phi is written over the propagated modes chi_h; in the output-mode
    // basis the detected mode is u^T phi.
    const Eigen::VectorXcd lab = u.matrix().transpose() * phi.phi();
    const ProjectionResult proj = apply_projector(evolved, ProjectorSpec(lab));

    const SymmetrizedModeSet modes = symmetrized_modes(u, phi, logical_modes);
    ProjectionCheck check;
    check.projected = proj.unnormalized;
    check.analytic = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < 4; ++k)
        check.analytic += alpha[static_cast<std::size_t>(k)] * modes.coeffs.row(k).transpose();
    for (int j = 0; j < m; ++j) {
        Occupation occ(static_cast<std::size_t>(m), 0);
        occ[static_cast<std::size_t>(j)] = 1;
        check.max_deviation = std::max(check.max_deviation, std::abs(check.projected.amplitude(occ) - check.analytic(j)));
    }
    check.span_rank = modes.rank();
    return check;
}

} // namespace fockjoin
