#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>

#include <Eigen/Dense>

#include "fockjoin/fock_state.hpp"
#include "fockjoin/schemes.hpp"

namespace testing_support {

using fockjoin::Complex;

/// Random normalized 4-vector of complex amplitudes.
inline fockjoin::Amplitudes4 random_amplitudes(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    fockjoin::Amplitudes4 a;
    double n = 0.0;
    for (auto& x : a) {
        x = Complex(g(rng), g(rng));
        n += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(n);
    return a;
}

inline std::pair<Complex, Complex> random_qubit(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Complex a(g(rng), g(rng)), b(g(rng), g(rng));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

inline std::map<fockjoin::Occupation, Complex> as_map(const fockjoin::FockState& s)
{
    return {s.terms().begin(), s.terms().end()};
}

/// max over the union of supports of |a - b|.
inline double max_diff(const std::map<fockjoin::Occupation, Complex>& a,
                       const std::map<fockjoin::Occupation, Complex>& b)
{
    double d = 0.0;
    for (const auto& [o, x] : a) {
        const auto it = b.find(o);
        d = std::max(d, std::abs(x - (it == b.end() ? Complex{} : it->second)));
    }
    for (const auto& [o, y] : b)
        if (!a.count(o)) d = std::max(d, std::abs(y));
    return d;
}

inline double max_diff(const fockjoin::FockState& a, const fockjoin::FockState& b)
{
    return max_diff(as_map(a), as_map(b));
}

} // namespace testing_support
