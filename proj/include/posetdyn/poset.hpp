#pragma once

#include "posetdyn/arith.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace posetdyn {

using Mask = std::uint64_t;
inline constexpr int max_poset_size = 64;

struct poset_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline int popcount(Mask m) { return std::popcount(m); }

template <class F>
void for_each_bit(Mask m, F&& f)
{
    while (m) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

// Immutable finite poset. Element indices are a linear extension of the order,
// so i < j whenever element i lies strictly below element j.
class Poset {
public:
    Poset() = default;

    int size() const { return static_cast<int>(labels_.size()); }
    Mask all() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int p) const { return labels_[p]; }
    int index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end()) throw poset_error("unknown element: " + label);
        return it->second;
    }

    // cover pairs (lower, upper) as indices, lexicographically sorted
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }

    Mask upper_covers(int p) const { return up_[p]; }
    Mask lower_covers(int p) const { return down_[p]; }
    Mask strictly_above(int p) const { return above_[p]; }
    Mask strictly_below(int p) const { return below_[p]; }
    bool less(int p, int q) const { return (above_[p] >> q) & 1; }
    bool comparable(int p, int q) const { return p == q || less(p, q) || less(q, p); }

    Mask minimal() const { return minimal_; }
    Mask maximal() const { return maximal_; }

    // length of the longest chain ending at p
    int rank(int p) const { return rank_[p]; }
    // r(P): length of the longest chain
    int rank() const { return height_; }
    bool graded() const { return graded_; }

    bool operator==(const Poset& o) const { return labels_ == o.labels_ && covers_ == o.covers_; }

private:
    friend Poset build_poset(const std::vector<std::string>&,
                             const std::vector<std::pair<std::string, std::string>>&);

    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<Mask> up_, down_, above_, below_;
    std::vector<int> rank_;
    Mask minimal_ = 0, maximal_ = 0;
    int height_ = 0;
    bool graded_ = true;
};

// Validates a Hasse diagram. Transitively implied pairs are rejected.
inline Poset build_poset(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& cover_pairs)
{
    const int n = static_cast<int>(elements.size());
    if (n > max_poset_size) throw poset_error("more than 64 elements");
    std::map<std::string, int> orig;
    for (int i = 0; i < n; ++i)
        if (!orig.emplace(elements[i], i).second) throw poset_error("duplicate element: " + elements[i]);

    std::vector<Mask> up(n, 0), down(n, 0);
    for (auto& [a, b] : cover_pairs) {
        auto ia = orig.find(a), ib = orig.find(b);
        if (ia == orig.end()) throw poset_error("unknown element: " + a);
        if (ib == orig.end()) throw poset_error("unknown element: " + b);
        if (ia->second == ib->second) throw poset_error("cycle detected at " + a);
        if (up[ia->second] & bit(ib->second)) throw poset_error("duplicate cover: " + a + " < " + b);
        up[ia->second] |= bit(ib->second);
        down[ib->second] |= bit(ia->second);
    }

    // Kahn's algorithm, smallest declared index first
    std::vector<int> indeg(n), order;
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i) {
        indeg[i] = popcount(down[i]);
        if (!indeg[i]) ready.push(i);
    }
    while (!ready.empty()) {
        int i = ready.top();
        ready.pop();
        order.push_back(i);
        for_each_bit(up[i], [&](int j) {
            if (--indeg[j] == 0) ready.push(j);
        });
    }
    if (static_cast<int>(order.size()) != n) throw poset_error("cycle detected");

    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    auto remap = [&](Mask m) {
        Mask r = 0;
        for_each_bit(m, [&](int i) { r |= bit(pos[i]); });
        return r;
    };

    Poset P;
    P.labels_.resize(n);
    P.up_.resize(n);
    P.down_.resize(n);
    for (int k = 0; k < n; ++k) {
        P.labels_[k] = elements[order[k]];
        P.index_[P.labels_[k]] = k;
        P.up_[k] = remap(up[order[k]]);
        P.down_[k] = remap(down[order[k]]);
    }
    P.below_.assign(n, 0);
    P.above_.assign(n, 0);
    P.rank_.assign(n, 0);
    for (int q = 0; q < n; ++q)
        for_each_bit(P.down_[q], [&](int p) {
            P.below_[q] |= P.below_[p] | bit(p);
            P.rank_[q] = std::max(P.rank_[q], P.rank_[p] + 1);
        });
    for (int p = n - 1; p >= 0; --p)
        for_each_bit(P.up_[p], [&](int q) { P.above_[p] |= P.above_[q] | bit(q); });

    for (int q = 0; q < n; ++q)
        for_each_bit(P.down_[q], [&](int p) {
            for_each_bit(P.down_[q] & ~bit(p), [&](int r) {
                if (P.below_[r] & bit(p))
                    throw poset_error("non-Hasse pair: " + P.labels_[p] + " < " + P.labels_[q] +
                                      " is implied via " + P.labels_[r]);
            });
            P.covers_.emplace_back(p, q);
        });
    std::sort(P.covers_.begin(), P.covers_.end());

    for (int p = 0; p < n; ++p) {
        if (!P.down_[p]) P.minimal_ |= bit(p);
        if (!P.up_[p]) P.maximal_ |= bit(p);
        P.height_ = std::max(P.height_, P.rank_[p]);
    }
    for (auto [p, q] : P.covers_)
        if (P.rank_[q] != P.rank_[p] + 1) P.graded_ = false;
    for_each_bit(P.maximal_, [&](int p) {
        if (P.rank_[p] != P.height_) P.graded_ = false;
    });
    return P;
}

inline Poset build_poset(const std::vector<std::string>& elements,
                         const std::vector<std::pair<int, int>>& cover_indices)
{
    std::vector<std::pair<std::string, std::string>> c;
    for (auto [a, b] : cover_indices) c.emplace_back(elements.at(a), elements.at(b));
    return build_poset(elements, c);
}

// Builds a poset from a strict order given by below[q] = {p : p < q} over the
// element list, taking the transitive reduction.
inline Poset poset_from_order(const std::vector<std::string>& elements, const std::vector<Mask>& below)
{
    const int n = static_cast<int>(elements.size());
    for (int q = 0; q < n; ++q) {
        if (below[q] & bit(q)) throw poset_error("order is not irreflexive");
        for_each_bit(below[q], [&](int p) {
            if ((below[p] & below[q]) != below[p]) throw poset_error("order is not transitive");
        });
    }
    std::vector<std::pair<int, int>> cov;
    for (int q = 0; q < n; ++q)
        for_each_bit(below[q], [&](int p) {
            bool covered = true;
            for_each_bit(below[q], [&](int r) {
                if (r != p && (below[r] & bit(p))) covered = false;
            });
            if (covered) cov.emplace_back(p, q);
        });
    return build_poset(elements, cov);
}

inline std::vector<Mask> order_relation(const Poset& P)
{
    std::vector<Mask> below(P.size());
    for (int p = 0; p < P.size(); ++p) below[p] = P.strictly_below(p);
    return below;
}

inline Poset dual(const Poset& P)
{
    std::vector<std::pair<int, int>> c;
    for (auto [a, b] : P.covers()) c.emplace_back(b, a);
    return build_poset(P.labels(), c);
}

inline Poset induced_subposet(const Poset& P, Mask S)
{
    std::vector<std::string> el;
    std::vector<int> idx(P.size(), -1);
    for_each_bit(S, [&](int p) {
        idx[p] = static_cast<int>(el.size());
        el.push_back(P.label(p));
    });
    std::vector<Mask> below(el.size(), 0);
    for_each_bit(S, [&](int q) {
        for_each_bit(P.strictly_below(q) & S, [&](int p) { below[idx[q]] |= bit(idx[p]); });
    });
    return poset_from_order(el, below);
}

inline Poset disjoint_union(const Poset& P, const Poset& Q, const std::string& left = "L",
                            const std::string& right = "R")
{
    std::vector<std::string> el;
    for (auto& s : P.labels()) el.push_back(left + s);
    for (auto& s : Q.labels()) el.push_back(right + s);
    std::vector<std::pair<int, int>> c;
    for (auto [a, b] : P.covers()) c.emplace_back(a, b);
    for (auto [a, b] : Q.covers()) c.emplace_back(a + P.size(), b + P.size());
    return build_poset(el, c);
}

inline bool is_connected(const Poset& P)
{
    if (P.size() == 0) return true;
    Mask seen = 1, frontier = 1;
    while (frontier) {
        Mask next = 0;
        for_each_bit(frontier, [&](int p) { next |= P.upper_covers(p) | P.lower_covers(p); });
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == P.all();
}

// up-degree and down-degree bounded by k
inline bool degree_bounded(const Poset& P, int k)
{
    for (int p = 0; p < P.size(); ++p)
        if (popcount(P.upper_covers(p)) > k || popcount(P.lower_covers(p)) > k) return false;
    return true;
}

} // namespace posetdyn
