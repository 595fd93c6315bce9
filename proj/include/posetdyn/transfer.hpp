#pragma once

#include "posetdyn/ppartition.hpp"

namespace posetdyn {

using RationalVector = std::vector<Rational>;

inline bool in_order_polytope(const Poset& P, const RationalVector& f)
{
    if (static_cast<int>(f.size()) != P.size()) return false;
    for (auto& x : f)
        if (x < 0 || x > 1) return false;
    for (auto [p, q] : P.covers())
        if (f[p] > f[q]) return false;
    return true;
}

// g >= 0 and the sum along every chain is at most 1
inline bool in_chain_polytope(const Poset& P, const RationalVector& g)
{
    if (static_cast<int>(g.size()) != P.size()) return false;
    RationalVector best(P.size());
    for (int p = 0; p < P.size(); ++p) {
        if (g[p] < 0) return false;
        Rational m = 0;
        for_each_bit(P.lower_covers(p), [&](int q) { m = std::max(m, best[q]); });
        best[p] = m + g[p];
        if (best[p] > 1) return false;
    }
    return true;
}

inline RationalVector transfer_map(const Poset& P, const RationalVector& f)
{
    if (!in_order_polytope(P, f)) throw std::domain_error("point is outside the order polytope");
    RationalVector g(P.size());
    for (int p = 0; p < P.size(); ++p) {
        Rational m = 1;
        for_each_bit(P.upper_covers(p), [&](int q) { m = std::min(m, f[q]); });
        g[p] = m - f[p];
    }
    return g;
}

inline RationalVector transfer_inverse(const Poset& P, const RationalVector& g)
{
    if (!in_chain_polytope(P, g)) throw std::domain_error("point is outside the chain polytope");
    RationalVector f(P.size());
    for (int p = P.size() - 1; p >= 0; --p) {
        Rational m = 1;
        for_each_bit(P.upper_covers(p), [&](int q) { m = std::min(m, f[q]); });
        f[p] = m - g[p];
    }
    return f;
}

// Scaled by ell: T in PP^ell maps to ell * phi(T / ell).
inline std::vector<int> transfer_scaled(const Poset& P, const PPartition& T)
{
    std::vector<int> g(P.size());
    for (int p = 0; p < P.size(); ++p) g[p] = min_above(P, T, p) - T.values[p];
    return g;
}

inline bool in_chain_lattice(const Poset& P, const std::vector<int>& g, int ell)
{
    std::vector<int> best(P.size());
    for (int p = 0; p < P.size(); ++p) {
        if (g[p] < 0) return false;
        int m = 0;
        for_each_bit(P.lower_covers(p), [&](int q) { m = std::max(m, best[q]); });
        best[p] = m + g[p];
        if (best[p] > ell) return false;
    }
    return true;
}

inline PPartition transfer_scaled_inverse(const Poset& P, const std::vector<int>& g, int ell)
{
    if (!in_chain_lattice(P, g, ell)) throw std::domain_error("point is outside the chain polytope");
    PPartition T{ell, std::vector<int>(P.size(), 0)};
    for (int p = P.size() - 1; p >= 0; --p) T.values[p] = min_above(P, T, p) - g[p];
    return T;
}

// Integer points of ell * C(P), depth first in index order.
inline std::vector<std::vector<int>> chain_lattice_points(const Poset& P, int ell, std::size_t cap = default_ideal_cap)
{
    std::vector<std::vector<int>> out;
    std::vector<int> g(P.size(), 0), best(P.size(), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == P.size()) {
            if (out.size() >= cap) throw cap_exceeded("chain polytope point cap exceeded");
            out.push_back(g);
            return;
        }
        int m = 0;
        for_each_bit(P.lower_covers(i), [&](int q) { m = std::max(m, best[q]); });
        for (int v = 0; m + v <= ell; ++v) {
            g[i] = v;
            best[i] = m + v;
            rec(i + 1);
        }
        g[i] = 0;
    };
    rec(0);
    return out;
}

} // namespace posetdyn
