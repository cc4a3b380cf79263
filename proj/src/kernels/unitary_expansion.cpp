#include "fockjoin/kernels.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fockjoin::kernels {

namespace {

double sqrt_factorial_product(const Occupation& occ)
{
    double acc = 1.0;
    for (int n : occ)
        for (int k = 2; k <= n; ++k)
            acc *= std::sqrt(static_cast<double>(k));
    return acc;
}

// Substitutes every creation operator of one basis term photon by photon.
// Partial monomials are keyed by their occupation, so orderings of commuting
// operators merge as they are generated. The bosonic factors are applied at
// the ends: 1/sqrt(prod n_i!) on the input, sqrt(prod p_j!) on each output.
FockState::TermMap expand_term(const Occupation& occ, Complex amp, const Eigen::MatrixXcd& u)
{
    const int m = static_cast<int>(occ.size());
    FockState::TermMap partial;
    partial.emplace(Occupation(occ.size(), 0), amp / sqrt_factorial_product(occ));

    for (int i = 0; i < m; ++i) {
        for (int rep = 0; rep < occ[i]; ++rep) {
            FockState::TermMap next;
            for (const auto& [mono, a] : partial) {
                for (int j = 0; j < m; ++j) {
                    const Complex uij = u(i, j);
                    if (uij == Complex{})
                        continue;
                    Occupation grown = mono;
                    ++grown[j];
                    auto [it, inserted] = next.try_emplace(std::move(grown), a * uij);
                    if (!inserted)
                        it->second += a * uij;
                }
            }
            partial.swap(next);
        }
    }
    for (auto& [mono, a] : partial)
        a *= sqrt_factorial_product(mono);
    return partial;
}

FockState reduce(int modes, const std::vector<FockState::TermMap>& per_term)
{
    StateBuilder out(modes);
    for (const auto& part : per_term)
        for (const auto& [occ, a] : part)
            out.add(occ, a);
    return std::move(out).build();
}

} // namespace

FockState expand_unitary_serial(const FockState& s, const Eigen::MatrixXcd& u)
{
    std::vector<FockState::TermMap> per_term;
    per_term.reserve(s.size());
    for (const auto& [occ, amp] : s.terms())
        per_term.push_back(expand_term(occ, amp, u));
    return reduce(s.modes(), per_term);
}

FockState expand_unitary_omp(const FockState& s, const Eigen::MatrixXcd& u)
{
    std::vector<const FockState::TermMap::value_type*> terms;
    terms.reserve(s.size());
    for (const auto& kv : s.terms())
        terms.push_back(&kv);

    std::vector<FockState::TermMap> per_term(terms.size());
    const long n = static_cast<long>(terms.size());
#pragma omp parallel for schedule(dynamic) if (n > 8)
    for (long k = 0; k < n; ++k)
        per_term[k] = expand_term(terms[k]->first, terms[k]->second, u);

    return reduce(s.modes(), per_term);
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace fockjoin::kernels
