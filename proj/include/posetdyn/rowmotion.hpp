#pragma once

#include "posetdyn/transfer.hpp"

#include <numeric>
#include <optional>
#include <string_view>

namespace posetdyn {

inline Mask toggle_sequence(const Poset& P, Mask I, const std::vector<int>& order)
{
    for (int p : order) I = toggle(P, I, p);
    return I;
}

inline Mask rowmotion_by_toggles(const Poset& P, Mask I)
{
    for (int p = P.size() - 1; p >= 0; --p) I = toggle(P, I, p);
    return I;
}

// ideal generated by the minimal elements of the complement
inline Mask rowmotion_direct(const Poset& P, Mask I) { return down_closure(P, min_of(P, P.all() & ~I)); }

inline Mask rowmotion(const Poset& P, Mask I)
{
    Mask r = rowmotion_by_toggles(P, I);
#ifndef NDEBUG
    if (r != rowmotion_direct(P, I)) throw std::logic_error("rowmotion: toggle and direct forms disagree");
#endif
    return r;
}

inline Mask inverse_rowmotion(const Poset& P, Mask I)
{
    for (int p = 0; p < P.size(); ++p) I = toggle(P, I, p);
    return I;
}

// toggles in the reverse of the given linear extension
inline Mask rowmotion_along(const Poset& P, Mask I, const std::vector<int>& linear_extension)
{
    for (auto it = linear_extension.rbegin(); it != linear_extension.rend(); ++it) I = toggle(P, I, *it);
    return I;
}

// Orbits of a permutation of 0..n-1; each orbit starts at its least state.
struct OrbitPartition {
    std::vector<std::vector<std::uint32_t>> orbits;

    std::vector<std::size_t> lengths() const
    {
        std::vector<std::size_t> v;
        for (auto& o : orbits) v.push_back(o.size());
        return v;
    }
    BigInt order() const
    {
        BigInt r = 1;
        for (auto& o : orbits) r = lcm(r, BigInt(o.size()));
        return r;
    }
};

inline OrbitPartition orbit_partition(const std::vector<std::uint32_t>& next)
{
    OrbitPartition part;
    std::vector<char> seen(next.size(), 0);
    for (std::uint32_t s = 0; s < next.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> orbit;
        std::uint32_t x = s;
        do {
            if (seen[x]) throw std::logic_error("map is not a permutation");
            seen[x] = 1;
            orbit.push_back(x);
            x = next[x];
        } while (x != s);
        part.orbits.push_back(std::move(orbit));
    }
    return part;
}

// The common orbit average of f, if there is one.
template <class F>
std::optional<Rational> homomesy_value(const OrbitPartition& part, F&& f)
{
    std::optional<Rational> value;
    for (auto& o : part.orbits) {
        Rational s = 0;
        for (auto x : o) s += f(x);
        Rational avg = s / Rational(static_cast<long>(o.size()));
        if (!value) value = avg;
        else if (*value != avg) return std::nullopt;
    }
    return value;
}

struct OrbitSummary {
    std::uint32_t representative = 0;
    std::size_t length = 0;
    long long ddeg_sum = 0;
    Rational ddeg_average() const { return Rational(ddeg_sum, static_cast<long long>(length)); }
};

inline std::vector<OrbitSummary> summarize(const OrbitPartition& part, const std::vector<long long>& ddeg)
{
    std::vector<OrbitSummary> out;
    for (auto& o : part.orbits) {
        OrbitSummary s{o.front(), o.size(), 0};
        for (auto x : o) s.ddeg_sum += ddeg[x];
        out.push_back(s);
    }
    return out;
}

// Rowmotion on J(P) as a permutation of lattice indices.
struct CombinatorialSystem {
    IdealLattice lattice;
    std::vector<std::uint32_t> next;
    std::vector<long long> ddeg;

    explicit CombinatorialSystem(const Poset& P, std::size_t cap = default_ideal_cap) : lattice(P, cap)
    {
        for (Mask I : lattice.ideals()) {
            next.push_back(lattice.find(rowmotion(P, I)));
            ddeg.push_back(posetdyn::ddeg(P, I));
        }
    }
    const Poset& poset() const { return lattice.poset(); }
    std::size_t size() const { return next.size(); }
    OrbitPartition orbits() const { return orbit_partition(next); }
    int toggleability(std::uint32_t s, int p) const
    {
        Mask I = lattice[s];
        return (can_add(poset(), I, p) ? 1 : 0) - (can_remove(poset(), I, p) ? 1 : 0);
    }
    long long antichain_size(std::uint32_t s) const { return popcount(max_of(poset(), lattice[s])); }
};

// Piecewise-linear toggles. Minimal elements see alpha below, maximal elements see omega above.
inline Rational pl_floor(const Poset& P, const RationalVector& f, int p, const Rational& alpha)
{
    if (!P.lower_covers(p)) return alpha;
    std::optional<Rational> m;
    for_each_bit(P.lower_covers(p), [&](int q) { if (!m || f[q] > *m) m = f[q]; });
    return *m;
}

inline Rational pl_ceiling(const Poset& P, const RationalVector& f, int p, const Rational& omega)
{
    if (!P.upper_covers(p)) return omega;
    std::optional<Rational> m;
    for_each_bit(P.upper_covers(p), [&](int q) { if (!m || f[q] < *m) m = f[q]; });
    return *m;
}

inline void pl_toggle(const Poset& P, RationalVector& f, int p, const Rational& alpha = 0, const Rational& omega = 1)
{
    f[p] = pl_floor(P, f, p, alpha) + pl_ceiling(P, f, p, omega) - f[p];
}

inline RationalVector pl_rowmotion(const Poset& P, RationalVector f, const Rational& alpha = 0, const Rational& omega = 1)
{
    for (int p = P.size() - 1; p >= 0; --p) pl_toggle(P, f, p, alpha, omega);
    return f;
}

inline RationalVector pl_inverse_rowmotion(const Poset& P, RationalVector f, const Rational& alpha = 0,
                                           const Rational& omega = 1)
{
    for (int p = 0; p < P.size(); ++p) pl_toggle(P, f, p, alpha, omega);
    return f;
}

struct PLToggleability {
    Rational plus, minus;
    Rational value() const { return plus - minus; }
};

inline PLToggleability pl_toggleability(const Poset& P, const RationalVector& f, int p, const Rational& alpha = 0,
                                        const Rational& omega = 1)
{
    return {f[p] - pl_floor(P, f, p, alpha), pl_ceiling(P, f, p, omega) - f[p]};
}

inline Rational pl_ddeg(const Poset& P, const RationalVector& f, const Rational& alpha = 0, const Rational& omega = 1)
{
    Rational s = 0;
    for (int p = 0; p < P.size(); ++p) s += pl_ceiling(P, f, p, omega) - f[p];
    return s;
}

// Length of the PL rowmotion orbit of f, or nullopt past the cap.
inline std::optional<std::size_t> pl_orbit_length(const Poset& P, const RationalVector& f, std::size_t cap,
                                                  const Rational& alpha = 0, const Rational& omega = 1)
{
    RationalVector g = f;
    for (std::size_t k = 1; k <= cap; ++k) {
        g = pl_rowmotion(P, std::move(g), alpha, omega);
        if (g == f) return k;
    }
    return std::nullopt;
}

// Integer piecewise-linear toggles on PP^ell.
inline void pp_toggle(const Poset& P, PPartition& T, int p)
{
    T.values[p] = max_below(P, T, p) + min_above(P, T, p) - T.values[p];
}

inline PPartition pp_rowmotion_by_toggles(const Poset& P, PPartition T)
{
    for (int p = P.size() - 1; p >= 0; --p) pp_toggle(P, T, p);
    return T;
}

// The chain-polytope coordinates of the image are T(p) - max below.
inline PPartition pp_rowmotion_direct(const Poset& P, const PPartition& T)
{
    std::vector<int> g(P.size());
    for (int p = 0; p < P.size(); ++p) g[p] = T.values[p] - max_below(P, T, p);
    return transfer_scaled_inverse(P, g, T.height);
}

inline PPartition pp_rowmotion(const Poset& P, const PPartition& T)
{
    PPartition r = pp_rowmotion_by_toggles(P, T);
#ifndef NDEBUG
    if (r != pp_rowmotion_direct(P, T)) throw std::logic_error("pp_rowmotion: toggle and direct forms disagree");
#endif
    return r;
}

inline int pp_toggleability(const Poset& P, const PPartition& T, int p)
{
    return (T.values[p] - max_below(P, T, p)) - (min_above(P, T, p) - T.values[p]);
}

// PP^ell with an index keyed on value vectors.
class PPSpace {
public:
    PPSpace(const Poset& P, int ell, std::size_t cap = default_ideal_cap) : P_(P), ell_(ell)
    {
        if (ell < 1) throw std::invalid_argument("height must be at least 1");
        for_each_ppartition(
            P, ell,
            [&](const PPartition& T) {
                index_.emplace(key(T.values), static_cast<std::uint32_t>(states_.size()));
                states_.push_back(T);
            },
            cap);
    }
    const Poset& poset() const { return P_; }
    int height() const { return ell_; }
    std::size_t size() const { return states_.size(); }
    const PPartition& operator[](std::size_t i) const { return states_[i]; }
    std::uint32_t find(const PPartition& T) const { return index_.at(key(T.values)); }

private:
    static std::string key(const std::vector<int>& v) { return std::string(v.begin(), v.end()); }
    Poset P_;
    int ell_;
    std::vector<PPartition> states_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct PPSystem {
    PPSpace space;
    std::vector<std::uint32_t> next;
    std::vector<long long> ddeg;

    PPSystem(const Poset& P, int ell, std::size_t cap = default_ideal_cap) : space(P, ell, cap)
    {
        next.reserve(space.size());
        ddeg.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            next.push_back(space.find(pp_rowmotion(P, space[i])));
            ddeg.push_back(ppartition_ddeg(P, space[i]));
        }
    }
    const Poset& poset() const { return space.poset(); }
    std::size_t size() const { return next.size(); }
    OrbitPartition orbits() const { return orbit_partition(next); }
    int toggleability(std::uint32_t s, int p) const { return pp_toggleability(poset(), space[s], p); }
    long long antichain_size(std::uint32_t s) const { return ppartition_acard(poset(), space[s]); }
};

// Equivariant bijection J(P) -> J(Q) for Q obtained from P by dualizing the
// autonomous subset A. Entry i is the lattice index in J(Q) of the image of J(P)[i].
inline std::vector<std::uint32_t> dualization_bijection(const IdealLattice& LP, const IdealLattice& LQ, Mask A)
{
    const Poset& P = LP.poset();
    const Poset& Q = LQ.poset();
    Poset PA = induced_subposet(P, A);
    Mask AQ = transport_mask(P, Q, A);
    Poset QA = induced_subposet(Q, AQ);
    // J(A) and J(A*) as masks over the label set A, in P's indices
    IdealLattice LA(PA), LB(QA);
    auto to_p = [&](const Poset& S, Mask m) { Mask r = 0; for_each_bit(m, [&](int i) { r |= bit(P.index_of(S.label(i))); }); return r; };
    auto from_p = [&](const Poset& S, Mask m) { Mask r = 0; for_each_bit(m, [&](int i) { r |= bit(S.index_of(P.label(i))); }); return r; };
    std::unordered_map<Mask, Mask> psi;
    std::vector<char> done(LA.size(), 0);
    auto assign = [&](std::uint32_t i0, Mask j0) {
        Mask I = LA[i0], J = j0;
        do {
            done[LA.find(I)] = 1;
            psi[to_p(PA, I)] = to_p(QA, J);
            I = rowmotion(PA, I);
            J = rowmotion(QA, J);
        } while (I != LA[i0]);
        if (J != j0) throw std::logic_error("dualization_bijection: orbit lengths differ");
    };
    assign(0, 0);
    for (std::uint32_t i = 0; i < LA.size(); ++i)
        if (!done[i]) assign(i, from_p(QA, to_p(PA, PA.all() & ~LA[i])));
    std::vector<std::uint32_t> out;
    for (Mask I : LP.ideals()) {
        Mask rest = I & ~A;
        Mask img = transport_mask(P, Q, rest | psi.at(I & A));
        out.push_back(LQ.find(img));
    }
    return out;
}

} // namespace posetdyn
