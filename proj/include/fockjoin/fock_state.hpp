#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fockjoin/errors.hpp"

namespace fockjoin {

using Complex = std::complex<double>;

/// Photon count per mode. Length equals the owning state's mode count.
using Occupation = std::vector<int>;

/// Amplitudes with magnitude at or below this are dropped after every operation.
inline constexpr double kPruneTolerance = 1e-12;

/// |<s|s> - 1| tolerance for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-10;

/// Sparse superposition over occupation-number basis vectors of `modes` modes.
///
/// Terms are kept in a std::map so iteration is lexicographic in the
/// occupation vector; that ordering is what the JSON writer relies on.
/// A FockState never holds an amplitude below kPruneTolerance.
class FockState {
public:
    using TermMap = std::map<Occupation, Complex>;

    FockState() = default;

    /// Zero state on `modes` modes.
    explicit FockState(int modes);

    /// Single basis ket with the given amplitude.
    static FockState basis(const Occupation& occ, Complex amplitude = 1.0);

    /// Vacuum on `modes` modes.
    static FockState vacuum(int modes);

    int modes() const noexcept { return modes_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Complex amplitude(const Occupation& occ) const;

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    /// Throws NormalizationError on the zero state.
    FockState normalized() const;

    FockState scaled(Complex factor) const;

    friend FockState operator+(const FockState& a, const FockState& b);
    friend FockState operator-(const FockState& a, const FockState& b);
    friend FockState operator*(Complex factor, const FockState& s) { return s.scaled(factor); }

private:
    friend class StateBuilder;

    int modes_ = 0;
    TermMap terms_;
};

/// Accumulates (occupation, amplitude) pairs, merging duplicates, and
/// produces a pruned FockState. Occupations are not validated here; callers
/// inside the library construct them from already-valid states.
class StateBuilder {
public:
    explicit StateBuilder(int modes);

    void add(const Occupation& occ, Complex amplitude);
    void add(Occupation&& occ, Complex amplitude);
    void add_state(const FockState& s, Complex factor = 1.0);

    int modes() const noexcept { return modes_; }

    FockState build() &&;

private:
    int modes_;
    FockState::TermMap terms_;
};

/// Two complementary sets of mode indices.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    /// Builds the cut from the left set; the right set is the complement in
    /// {0..modes-1}. Throws DimensionError on out-of-range or duplicate indices.
    static Bipartition from_left(int modes, std::vector<int> left);
};

struct Term {
    Occupation occ;
    Complex amplitude;
};

/// Validated constructor. Throws OccupationError on length mismatch or a
/// negative entry, DimensionError if `terms` is empty.
FockState make_state(int modes, std::span<const Term> terms);
FockState make_state(int modes, std::initializer_list<Term> terms);

/// <a|b>, conjugate-linear in a.
Complex inner_product(const FockState& a, const FockState& b);

/// Modes of `a` first, then modes of `b`.
FockState tensor(const FockState& a, const FockState& b);

/// |<a|b>|^2 for normalized inputs; throws NormalizationError otherwise.
double fidelity(const FockState& a, const FockState& b);

/// Singular values (descending) of the coefficient matrix indexed by
/// (left-occupation, right-occupation).
std::vector<double> schmidt_coefficients(const FockState& s, const Bipartition& cut);

int schmidt_rank(const FockState& s, const Bipartition& cut, double tol = 1e-9);

/// Inserts empty modes. `positions` are indices in the expanded vector; the
/// original modes fill the remaining slots in order. Throws DimensionError
/// on out-of-range or repeated positions.
FockState add_vacuum_modes(const FockState& s, std::vector<int> positions);

/// Removes modes that are empty in every term. Throws NonEmptyModeError if
/// any listed mode holds a photon in some term.
FockState discard_empty_modes(const FockState& s, std::vector<int> positions);

/// Partial inner product: contracts `bra` (a state on the listed modes, in
/// the listed order) against `s`, leaving an unnormalized state on the
/// remaining modes in their original order.
FockState contract(const FockState& s, const std::vector<int>& modes, const FockState& bra);

/// Keeps only terms whose listed modes carry exactly `pattern`, then removes
/// those modes. Equivalent to contract() with a basis bra.
FockState condition_on(const FockState& s, const std::vector<int>& modes, const Occupation& pattern);

/// Reorders modes: mode i of `s` becomes mode order[i] of the result.
FockState permute_modes(const FockState& s, const std::vector<int>& order);

/// Sum of occupations of one term.
int photon_count(const Occupation& occ);

} // namespace fockjoin
