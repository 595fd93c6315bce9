#pragma once

#include "posetdyn/autonomous.hpp"
#include "posetdyn/ideals.hpp"
#include "posetdyn/polynomial.hpp"

#include <functional>
#include <unordered_map>

namespace posetdyn {

// Weakly order-preserving map P -> {0..height}, by element index.
struct PPartition {
    int height = 1;
    std::vector<int> values;

    bool operator==(const PPartition&) const = default;
    auto operator<=>(const PPartition&) const = default;
};

inline bool is_ppartition(const Poset& P, const PPartition& T)
{
    if (static_cast<int>(T.values.size()) != P.size() || T.height < 0) return false;
    for (int v : T.values)
        if (v < 0 || v > T.height) return false;
    for (auto [p, q] : P.covers())
        if (T.values[p] > T.values[q]) return false;
    return true;
}

// I_i = T^{-1}{0..i} for i = 0..height-1
inline std::vector<Mask> ideal_chain(const PPartition& T)
{
    std::vector<Mask> chain(T.height, 0);
    for (std::size_t p = 0; p < T.values.size(); ++p)
        for (int i = T.values[p]; i < T.height; ++i) chain[i] |= bit(static_cast<int>(p));
    return chain;
}

inline PPartition from_ideal_chain(const Poset& P, const std::vector<Mask>& chain)
{
    PPartition T{static_cast<int>(chain.size()), std::vector<int>(P.size(), static_cast<int>(chain.size()))};
    for (int i = static_cast<int>(chain.size()) - 1; i >= 0; --i)
        for_each_bit(chain[i], [&](int p) { T.values[p] = i; });
    return T;
}

inline PPartition ideal_as_ppartition(const Poset& P, Mask I)
{
    PPartition T{1, std::vector<int>(P.size(), 1)};
    for_each_bit(I, [&](int p) { T.values[p] = 0; });
    return T;
}

// min over upper covers, or the height at maximal elements
inline int min_above(const Poset& P, const PPartition& T, int p)
{
    int m = T.height;
    for_each_bit(P.upper_covers(p), [&](int q) { m = std::min(m, T.values[q]); });
    return m;
}

inline int max_below(const Poset& P, const PPartition& T, int p)
{
    int m = 0;
    for_each_bit(P.lower_covers(p), [&](int q) { m = std::max(m, T.values[q]); });
    return m;
}

// sum over i of ddeg(I_i); p is maximal in I_i exactly for T(p) <= i < min_above(p)
inline long long ppartition_ddeg(const Poset& P, const PPartition& T)
{
    long long s = 0;
    for (int p = 0; p < P.size(); ++p) s += min_above(P, T, p) - T.values[p];
    return s;
}

inline long long ppartition_size(const PPartition& T)
{
    long long s = 0;
    for (int v : T.values) s += v;
    return s;
}

inline long long ppartition_acard(const Poset& P, const PPartition& T)
{
    long long s = 0;
    for (int p = 0; p < P.size(); ++p)
        if (min_above(P, T, p) > T.values[p]) ++s;
    return s;
}

// Calls f on each height-ell P-partition in lexicographic order of value vectors.
inline std::size_t for_each_ppartition(const Poset& P, int ell, const std::function<void(const PPartition&)>& f,
                                       std::size_t cap = default_ideal_cap)
{
    PPartition T{ell, std::vector<int>(P.size(), 0)};
    std::size_t count = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == P.size()) {
            if (++count > cap) throw cap_exceeded("P-partition cap exceeded");
            f(T);
            return;
        }
        for (int v = max_below(P, T, i); v <= ell; ++v) {
            T.values[i] = v;
            rec(i + 1);
        }
        T.values[i] = 0;
    };
    rec(0);
    return count;
}

inline std::vector<PPartition> enumerate_ppartitions(const Poset& P, int ell, std::size_t cap = default_ideal_cap)
{
    if (ell < 1) throw std::invalid_argument("height must be at least 1");
    std::vector<PPartition> out;
    for_each_ppartition(P, ell, [&](const PPartition& T) { out.push_back(T); }, cap);
    return out;
}

// Sum over multichains I_0 <= ... <= I_{ell-1} of prod_i w(I_i).
// The weight is applied by mul(value, ideal index).
template <class T, class Mul>
T multichain_sum(const IdealLattice& L, int ell, const T& one, Mul mul)
{
    std::vector<T> g(L.size(), one);
    for (std::size_t i = 0; i < L.size(); ++i) mul(g[i], i);
    for (int k = 1; k < ell; ++k) {
        L.zeta(g);
        for (std::size_t i = 0; i < L.size(); ++i) mul(g[i], i);
    }
    T total = g[0];
    for (std::size_t i = 1; i < L.size(); ++i) total += g[i];
    return total;
}

inline BigInt count_ppartitions(const IdealLattice& L, int ell)
{
    if (ell == 0) return 1;
    return multichain_sum<BigInt>(L, ell, BigInt(1), [](BigInt&, std::size_t) {});
}

inline BigInt count_ppartitions(const Poset& P, int ell) { return count_ppartitions(IdealLattice(P), ell); }

inline RationalPolynomial order_polynomial(const IdealLattice& L)
{
    const int n = L.poset().size();
    std::vector<Rational> xs, ys;
    for (int ell = 1; ell <= n + 1; ++ell) {
        xs.emplace_back(ell);
        ys.emplace_back(count_ppartitions(L, ell));
    }
    return lagrange_interpolate(xs, ys);
}

inline RationalPolynomial order_polynomial(const Poset& P) { return order_polynomial(IdealLattice(P)); }

// sum over T of q^{sum_i exponent(I_i)}
inline IntPolynomial chain_generating_function(const IdealLattice& L, int ell, const std::function<int(Mask)>& exponent)
{
    std::vector<int> e(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) e[i] = exponent(L[i]);
    return multichain_sum<IntPolynomial>(L, ell, IntPolynomial::constant(1), [&](IntPolynomial& v, std::size_t i) {
        if (e[i]) v = v * IntPolynomial::monomial(1, e[i]);
    });
}

inline IntPolynomial ddeg_generating_function(const IdealLattice& L, int ell)
{
    const Poset& P = L.poset();
    return chain_generating_function(L, ell, [&](Mask I) { return ddeg(P, I); });
}

inline IntPolynomial ddeg_generating_function(const Poset& P, int ell)
{
    return ddeg_generating_function(IdealLattice(P), ell);
}

// sum over T of q^{|T|}
inline IntPolynomial size_generating_function(const IdealLattice& L, int ell)
{
    const int n = L.poset().size();
    return chain_generating_function(L, ell, [&](Mask I) { return n - popcount(I); });
}

struct CountSum {
    BigInt count, sum;
    CountSum& operator+=(const CountSum& o)
    {
        count += o.count;
        sum += o.sum;
        return *this;
    }
};

// (#PP^ell, sum of ddeg over PP^ell) without expanding the generating function
inline CountSum ddeg_total(const IdealLattice& L, int ell)
{
    const Poset& P = L.poset();
    std::vector<int> d(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) d[i] = ddeg(P, L[i]);
    return multichain_sum<CountSum>(L, ell, CountSum{1, 0}, [&](CountSum& v, std::size_t i) {
        v.sum += d[i] * v.count;
    });
}

// ---------------------------------------------------------------------------
// Set-valued P-partitions

struct SetValuedPPartition {
    int height = 1;
    std::vector<std::uint32_t> sets; // bitmask subsets of {0..height}

    bool operator==(const SetValuedPPartition&) const = default;
};

inline int set_min(std::uint32_t s) { return std::countr_zero(s); }
inline int set_max(std::uint32_t s) { return 31 - std::countl_zero(s); }

inline int excess(const SetValuedPPartition& T)
{
    int e = 0;
    for (auto s : T.sets) e += std::popcount(s) - 1;
    return e;
}

inline bool is_setvalued(const Poset& P, const SetValuedPPartition& T)
{
    if (static_cast<int>(T.sets.size()) != P.size() || T.height < 0 || T.height > 30) return false;
    const std::uint32_t full = (std::uint32_t{1} << (T.height + 1)) - 1;
    for (auto s : T.sets)
        if (!s || (s & ~full)) return false;
    for (auto [p, q] : P.covers())
        if (set_max(T.sets[p]) > set_min(T.sets[q])) return false;
    return true;
}

// sorted value-set sizes, largest first
inline std::vector<int> size_partition(const SetValuedPPartition& T)
{
    std::vector<int> l;
    for (auto s : T.sets) l.push_back(std::popcount(s));
    std::sort(l.rbegin(), l.rend());
    return l;
}

// Depth-first enumeration with excess exactly e, elements in index order.
inline BigInt enumerate_setvalued(const Poset& P, int ell, int e,
                                  const std::function<void(const SetValuedPPartition&)>& f = {},
                                  std::size_t cap = default_ideal_cap)
{
    if (ell < 0 || ell > 30) throw std::invalid_argument("height out of range");
    SetValuedPPartition T{ell, std::vector<std::uint32_t>(P.size(), 0)};
    BigInt count = 0;
    std::size_t visited = 0;
    std::function<void(int, int)> rec = [&](int i, int budget) {
        if (i == P.size()) {
            if (budget != 0) return;
            if (++visited > cap) throw cap_exceeded("set-valued enumeration cap exceeded");
            ++count;
            if (f) f(T);
            return;
        }
        int lo = 0;
        for_each_bit(P.lower_covers(i), [&](int q) { lo = std::max(lo, set_max(T.sets[q])); });
        const int width = ell - lo + 1;
        for (std::uint32_t s = 1; s < (std::uint32_t{1} << width); ++s) {
            int extra = std::popcount(s) - 1;
            if (extra > budget) continue;
            T.sets[i] = s << lo;
            rec(i + 1, budget - extra);
        }
        T.sets[i] = 0;
    };
    rec(0, e);
    return count;
}

namespace detail {
struct MaskPairHash {
    std::size_t operator()(const std::pair<Mask, Mask>& k) const
    {
        return std::hash<Mask>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
};
} // namespace detail

// Coefficient of x^e is #PP^ell_e(P); excesses above e_max are dropped (e_max < 0 keeps all).
// Sweeps the values 0..ell and, within a value, the elements in index order; each element is
// unstarted, open (will take a larger value) or closed.
inline IntPolynomial setvalued_counts(const Poset& P, int ell, int e_max = -1)
{
    const int n = P.size();
    const std::size_t width = e_max < 0 ? static_cast<std::size_t>(n * ell + 1) : static_cast<std::size_t>(e_max + 1);
    using Vec = std::vector<BigInt>;
    using Map = std::unordered_map<std::pair<Mask, Mask>, Vec, detail::MaskPairHash>;
    auto add = [&](Map& m, std::pair<Mask, Mask> key, const Vec& w, int shift) {
        auto [it, fresh] = m.try_emplace(key, Vec(width, 0));
        Vec& dst = it->second;
        for (std::size_t k = 0; k + shift < width; ++k)
            if (w[k] != 0) dst[k + shift] += w[k];
    };
    Map cur;
    Vec one(width, 0);
    one[0] = 1;
    cur.emplace(std::make_pair(Mask{0}, Mask{0}), one);
    for (int v = 0; v <= ell; ++v) {
        const bool last = v == ell;
        for (int p = 0; p < n; ++p) {
            Map next;
            next.reserve(cur.size() * 2);
            for (auto& [key, w] : cur) {
                auto [S, C] = key;
                if (C & bit(p)) {
                    add(next, key, w, 0);
                } else if (S & bit(p)) {
                    if (!last) {
                        add(next, key, w, 0);
                        add(next, key, w, 1);
                    }
                    add(next, {S, C | bit(p)}, w, 1);
                } else {
                    if (!last) add(next, key, w, 0);
                    if ((P.lower_covers(p) & C) == P.lower_covers(p)) {
                        add(next, {S | bit(p), C | bit(p)}, w, 0);
                        if (!last) add(next, {S | bit(p), C}, w, 0);
                    }
                }
            }
            cur = std::move(next);
        }
    }
    auto it = cur.find({P.all(), P.all()});
    if (it == cur.end()) return {};
    return IntPolynomial(it->second);
}

inline BigInt setvalued_count(const Poset& P, int ell, int e) { return setvalued_counts(P, ell, e)[e]; }

// Reflects the values on A through alpha + omega - x, where alpha and omega are the
// smallest and largest values used on A. The result lives on dualize_autonomous(P, A).
inline SetValuedPPartition setvalued_reflection(const Poset& P, Mask A, const SetValuedPPartition& T,
                                                const Poset& Q)
{
    if (!is_autonomous(P, A)) throw poset_error("subset is not autonomous");
    int alpha = T.height, omega = 0;
    for_each_bit(A, [&](int q) {
        alpha = std::min(alpha, set_min(T.sets[q]));
        omega = std::max(omega, set_max(T.sets[q]));
    });
    SetValuedPPartition R{T.height, std::vector<std::uint32_t>(Q.size(), 0)};
    for (int p = 0; p < P.size(); ++p) {
        std::uint32_t s = T.sets[p];
        if (A & bit(p)) {
            std::uint32_t r = 0;
            for (int x = 0; x <= T.height; ++x)
                if (s & (std::uint32_t{1} << x)) r |= std::uint32_t{1} << (alpha + omega - x);
            s = r;
        }
        R.sets[Q.index_of(P.label(p))] = s;
    }
    return R;
}

} // namespace posetdyn
