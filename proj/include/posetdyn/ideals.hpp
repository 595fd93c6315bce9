#pragma once

#include "posetdyn/poset.hpp"

#include <functional>
#include <unordered_map>

namespace posetdyn {

inline constexpr std::size_t default_ideal_cap = 100'000'000;

inline bool is_ideal(const Poset& P, Mask I)
{
    bool ok = (I & ~P.all()) == 0;
    for_each_bit(I, [&](int p) {
        if ((P.lower_covers(p) & I) != P.lower_covers(p)) ok = false;
    });
    return ok;
}

inline Mask down_closure(const Poset& P, Mask S)
{
    Mask r = S;
    for_each_bit(S, [&](int p) { r |= P.strictly_below(p); });
    return r;
}

inline Mask up_closure(const Poset& P, Mask S)
{
    Mask r = S;
    for_each_bit(S, [&](int p) { r |= P.strictly_above(p); });
    return r;
}

// maximal elements of the subposet I
inline Mask max_of(const Poset& P, Mask I)
{
    Mask r = 0;
    for_each_bit(I, [&](int p) {
        if (!(P.upper_covers(p) & I)) r |= bit(p);
    });
    return r;
}

// minimal elements of the subposet S
inline Mask min_of(const Poset& P, Mask S)
{
    Mask r = 0;
    for_each_bit(S, [&](int p) {
        if (!(P.lower_covers(p) & S)) r |= bit(p);
    });
    return r;
}

inline int ddeg(const Poset& P, Mask I) { return popcount(max_of(P, I)); }

inline bool can_add(const Poset& P, Mask I, int p)
{
    return !(I & bit(p)) && (P.lower_covers(p) & I) == P.lower_covers(p);
}

inline bool can_remove(const Poset& P, Mask I, int p)
{
    return (I & bit(p)) && !(P.upper_covers(p) & I);
}

inline Mask toggle(const Poset& P, Mask I, int p)
{
    if (can_add(P, I, p) || can_remove(P, I, p)) return I ^ bit(p);
    return I;
}

// All order ideals in increasing mask order.
inline std::vector<Mask> order_ideals(const Poset& P, std::size_t cap = default_ideal_cap)
{
    std::vector<Mask> out;
    const int n = P.size();
    std::function<void(int, Mask)> rec = [&](int i, Mask I) {
        if (i == n) {
            if (out.size() >= cap) throw cap_exceeded("order ideal cap exceeded");
            out.push_back(I);
            return;
        }
        rec(i + 1, I);
        if ((P.lower_covers(i) & I) == P.lower_covers(i)) rec(i + 1, I | bit(i));
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// J(P) with an index and its Hasse diagram grouped by the element toggled.
class IdealLattice {
public:
    explicit IdealLattice(const Poset& P, std::size_t cap = default_ideal_cap)
        : P_(P), ideals_(order_ideals(P, cap)), edges_(P.size())
    {
        index_.reserve(ideals_.size() * 2);
        for (std::size_t i = 0; i < ideals_.size(); ++i) index_.emplace(ideals_[i], static_cast<std::uint32_t>(i));
        for (std::size_t i = 0; i < ideals_.size(); ++i)
            for_each_bit(max_of(P, ideals_[i]), [&](int p) {
                edges_[p].emplace_back(static_cast<std::uint32_t>(i), index_.at(ideals_[i] ^ bit(p)));
            });
    }

    const Poset& poset() const { return P_; }
    std::size_t size() const { return ideals_.size(); }
    Mask operator[](std::size_t i) const { return ideals_[i]; }
    const std::vector<Mask>& ideals() const { return ideals_; }
    std::uint32_t find(Mask I) const { return index_.at(I); }

    // pairs (I, I minus p) for p maximal in I
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges(int p) const { return edges_[p]; }

    std::size_t edge_count() const
    {
        std::size_t s = 0;
        for (auto& e : edges_) s += e.size();
        return s;
    }

    // h(I) <- sum of h(J) over ideals J contained in I
    template <class T>
    void zeta(std::vector<T>& h) const
    {
        for (int p = 0; p < P_.size(); ++p)
            for (auto [a, b] : edges_[p]) h[a] += h[b];
    }

private:
    Poset P_;
    std::vector<Mask> ideals_;
    std::unordered_map<Mask, std::uint32_t> index_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges_;
};

// e(P), as the number of maximal chains of J(P)
inline BigInt count_linear_extensions(const IdealLattice& L)
{
    std::vector<BigInt> c(L.size(), 0);
    c[0] = 1;
    const Poset& P = L.poset();
    for (std::size_t i = 1; i < L.size(); ++i)
        for_each_bit(max_of(P, L[i]), [&](int p) { c[i] += c[L.find(L[i] ^ bit(p))]; });
    return c.back();
}

inline BigInt count_linear_extensions(const Poset& P) { return count_linear_extensions(IdealLattice(P)); }

// Calls f(order) for each linear extension, in lexicographic order of index sequences.
inline std::size_t for_each_linear_extension(const Poset& P, const std::function<void(const std::vector<int>&)>& f,
                                             std::size_t cap = default_ideal_cap)
{
    std::vector<int> seq;
    std::size_t count = 0;
    std::function<void(Mask)> rec = [&](Mask I) {
        if (I == P.all()) {
            if (++count > cap) throw cap_exceeded("linear extension cap exceeded");
            f(seq);
            return;
        }
        for (int p = 0; p < P.size(); ++p)
            if (can_add(P, I, p)) {
                seq.push_back(p);
                rec(I | bit(p));
                seq.pop_back();
            }
    };
    rec(0);
    return count;
}

} // namespace posetdyn
