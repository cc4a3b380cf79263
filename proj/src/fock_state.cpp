#include "fockjoin/fock_state.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fockjoin {

namespace {

void prune(FockState::TermMap& terms)
{
    std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) <= kPruneTolerance; });
}

void check_sorted_unique(std::vector<int>& idx, int limit, const char* what)
{
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw DimensionError(std::string(what) + ": repeated mode index");
    for (int i : idx)
        if (i < 0 || i >= limit)
            throw DimensionError(std::string(what) + ": mode index " + std::to_string(i) +
                                 " out of range [0, " + std::to_string(limit) + ")");
}

} // namespace

FockState::FockState(int modes) : modes_(modes)
{
    if (modes < 0)
        throw DimensionError("negative mode count");
}

FockState FockState::basis(const Occupation& occ, Complex amplitude)
{
    StateBuilder b(static_cast<int>(occ.size()));
    b.add(occ, amplitude);
    return std::move(b).build();
}

FockState FockState::vacuum(int modes)
{
    return basis(Occupation(static_cast<std::size_t>(modes), 0));
}

Complex FockState::amplitude(const Occupation& occ) const
{
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex{} : it->second;
}

double FockState::norm_squared() const
{
    double acc = 0.0;
    for (const auto& [occ, amp] : terms_)
        acc += std::norm(amp);
    return acc;
}

double FockState::norm() const { return std::sqrt(norm_squared()); }

bool FockState::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

FockState FockState::normalized() const
{
    const double n = norm();
    if (n <= kPruneTolerance)
        throw NormalizationError("cannot normalize the zero state");
    return scaled(1.0 / n);
}

FockState FockState::scaled(Complex factor) const
{
    FockState out(modes_);
    for (const auto& [occ, amp] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), occ, amp * factor);
    prune(out.terms_);
    return out;
}

FockState operator+(const FockState& a, const FockState& b)
{
    if (a.modes() != b.modes())
        throw DimensionError("adding states with different mode counts");
    StateBuilder out(a.modes());
    out.add_state(a);
    out.add_state(b);
    return std::move(out).build();
}

FockState operator-(const FockState& a, const FockState& b)
{
    if (a.modes() != b.modes())
        throw DimensionError("subtracting states with different mode counts");
    StateBuilder out(a.modes());
    out.add_state(a);
    out.add_state(b, -1.0);
    return std::move(out).build();
}

StateBuilder::StateBuilder(int modes) : modes_(modes) {}

void StateBuilder::add(const Occupation& occ, Complex amplitude)
{
    auto [it, inserted] = terms_.try_emplace(occ, amplitude);
    if (!inserted)
        it->second += amplitude;
}

void StateBuilder::add(Occupation&& occ, Complex amplitude)
{
    auto [it, inserted] = terms_.try_emplace(std::move(occ), amplitude);
    if (!inserted)
        it->second += amplitude;
}

void StateBuilder::add_state(const FockState& s, Complex factor)
{
    for (const auto& [occ, amp] : s.terms())
        add(occ, amp * factor);
}

FockState StateBuilder::build() &&
{
    FockState out(modes_);
    out.terms_ = std::move(terms_);
    prune(out.terms_);
    return out;
}

Bipartition Bipartition::from_left(int modes, std::vector<int> left)
{
    check_sorted_unique(left, modes, "bipartition");
    Bipartition cut;
    cut.left = std::move(left);
    for (int i = 0; i < modes; ++i)
        if (!std::binary_search(cut.left.begin(), cut.left.end(), i))
            cut.right.push_back(i);
    return cut;
}

FockState make_state(int modes, std::span<const Term> terms)
{
    if (modes <= 0)
        throw DimensionError("mode count must be positive");
    if (terms.empty())
        throw DimensionError("make_state needs at least one term");
    StateBuilder b(modes);
    for (const auto& t : terms) {
        if (static_cast<int>(t.occ.size()) != modes)
            throw OccupationError("occupation length " + std::to_string(t.occ.size()) +
                                  " does not match mode count " + std::to_string(modes));
        if (std::any_of(t.occ.begin(), t.occ.end(), [](int n) { return n < 0; }))
            throw OccupationError("negative occupation");
        b.add(t.occ, t.amplitude);
    }
    return std::move(b).build();
}

FockState make_state(int modes, std::initializer_list<Term> terms)
{
    return make_state(modes, std::span<const Term>(terms.begin(), terms.size()));
}

Complex inner_product(const FockState& a, const FockState& b)
{
    if (a.modes() != b.modes())
        throw DimensionError("inner product of states with different mode counts");
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    Complex acc{};
    for (const auto& [occ, amp] : small.terms()) {
        const Complex other = large.amplitude(occ);
        if (other == Complex{})
            continue;
        acc += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return acc;
}

FockState tensor(const FockState& a, const FockState& b)
{
    StateBuilder out(a.modes() + b.modes());
    for (const auto& [oa, xa] : a.terms()) {
        for (const auto& [ob, xb] : b.terms()) {
            Occupation occ;
            occ.reserve(oa.size() + ob.size());
            occ.insert(occ.end(), oa.begin(), oa.end());
            occ.insert(occ.end(), ob.begin(), ob.end());
            out.add(std::move(occ), xa * xb);
        }
    }
    return std::move(out).build();
}

double fidelity(const FockState& a, const FockState& b)
{
    if (!a.is_normalized() || !b.is_normalized())
        throw NormalizationError("fidelity requires normalized states");
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

std::vector<double> schmidt_coefficients(const FockState& s, const Bipartition& cut)
{
    if (static_cast<int>(cut.left.size() + cut.right.size()) != s.modes())
        throw DimensionError("bipartition does not cover the state's modes");

    std::map<Occupation, int> rows;
    std::map<Occupation, int> cols;
    auto split = [&](const Occupation& occ) {
        Occupation l, r;
        l.reserve(cut.left.size());
        r.reserve(cut.right.size());
        for (int i : cut.left) l.push_back(occ[i]);
        for (int i : cut.right) r.push_back(occ[i]);
        return std::pair{std::move(l), std::move(r)};
    };
    for (const auto& [occ, amp] : s.terms()) {
        auto [l, r] = split(occ);
        rows.try_emplace(std::move(l), static_cast<int>(rows.size()));
        cols.try_emplace(std::move(r), static_cast<int>(cols.size()));
    }
    if (rows.empty())
        return {};

    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(cols.size()));
    for (const auto& [occ, amp] : s.terms()) {
        auto [l, r] = split(occ);
        c(rows.at(l), cols.at(r)) = amp;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

int schmidt_rank(const FockState& s, const Bipartition& cut, double tol)
{
    const auto sv = schmidt_coefficients(s, cut);
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [tol](double x) { return x > tol; }));
}

FockState add_vacuum_modes(const FockState& s, std::vector<int> positions)
{
    const int expanded = s.modes() + static_cast<int>(positions.size());
    check_sorted_unique(positions, expanded, "add_vacuum_modes");

    std::vector<bool> is_new(static_cast<std::size_t>(expanded), false);
    for (int p : positions) is_new[p] = true;

    StateBuilder out(expanded);
    for (const auto& [occ, amp] : s.terms()) {
        Occupation grown(static_cast<std::size_t>(expanded), 0);
        std::size_t src = 0;
        for (int i = 0; i < expanded; ++i)
            if (!is_new[i]) grown[i] = occ[src++];
        out.add(std::move(grown), amp);
    }
    return std::move(out).build();
}

FockState discard_empty_modes(const FockState& s, std::vector<int> positions)
{
    check_sorted_unique(positions, s.modes(), "discard_empty_modes");
    std::vector<bool> drop(static_cast<std::size_t>(s.modes()), false);
    for (int p : positions) drop[p] = true;

    StateBuilder out(s.modes() - static_cast<int>(positions.size()));
    for (const auto& [occ, amp] : s.terms()) {
        Occupation kept;
        kept.reserve(occ.size() - positions.size());
        for (int i = 0; i < s.modes(); ++i) {
            if (!drop[i]) {
                kept.push_back(occ[i]);
            } else if (occ[i] != 0) {
                throw NonEmptyModeError("mode " + std::to_string(i) + " holds " +
                                        std::to_string(occ[i]) + " photon(s) and cannot be discarded");
            }
        }
        out.add(std::move(kept), amp);
    }
    return std::move(out).build();
}

FockState contract(const FockState& s, const std::vector<int>& modes, const FockState& bra)
{
    if (static_cast<int>(modes.size()) != bra.modes())
        throw DimensionError("contract: bra mode count does not match the listed modes");
    std::vector<int> sorted = modes;
    check_sorted_unique(sorted, s.modes(), "contract");

    std::vector<bool> listed(static_cast<std::size_t>(s.modes()), false);
    for (int m : modes) listed[m] = true;

    StateBuilder out(s.modes() - static_cast<int>(modes.size()));
    Occupation sub(modes.size());
    for (const auto& [occ, amp] : s.terms()) {
        for (std::size_t k = 0; k < modes.size(); ++k)
            sub[k] = occ[modes[k]];
        const Complex b = bra.amplitude(sub);
        if (b == Complex{})
            continue;
        Occupation rest;
        rest.reserve(occ.size() - modes.size());
        for (int i = 0; i < s.modes(); ++i)
            if (!listed[i]) rest.push_back(occ[i]);
        out.add(std::move(rest), std::conj(b) * amp);
    }
    return std::move(out).build();
}

FockState condition_on(const FockState& s, const std::vector<int>& modes, const Occupation& pattern)
{
    if (pattern.size() != modes.size())
        throw DimensionError("condition_on: pattern length does not match the listed modes");
    return contract(s, modes, FockState::basis(pattern));
}

FockState permute_modes(const FockState& s, const std::vector<int>& order)
{
    if (static_cast<int>(order.size()) != s.modes())
        throw DimensionError("permute_modes: permutation length does not match mode count");
    std::vector<int> check = order;
    check_sorted_unique(check, s.modes(), "permute_modes");

    StateBuilder out(s.modes());
    for (const auto& [occ, amp] : s.terms()) {
        Occupation moved(occ.size());
        for (std::size_t i = 0; i < occ.size(); ++i)
            moved[order[i]] = occ[i];
        out.add(std::move(moved), amp);
    }
    return std::move(out).build();
}

int photon_count(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

} // namespace fockjoin
