#pragma once

#include "posetdyn/poset.hpp"

#include <deque>
#include <set>

namespace posetdyn {

// Every element outside A is below all of A, above all of A, or incomparable to all of A.
inline bool is_autonomous(const Poset& P, Mask A)
{
    if (!A || (A & ~P.all())) return false;
    for (int x = 0; x < P.size(); ++x) {
        if (A & bit(x)) continue;
        Mask up = P.strictly_above(x) & A, dn = P.strictly_below(x) & A;
        if (!(up == A || dn == A || (up | dn) == 0)) return false;
    }
    return true;
}

// smallest autonomous subset containing M
inline Mask autonomous_closure(const Poset& P, Mask M)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < P.size(); ++x) {
            if (M & bit(x)) continue;
            Mask up = P.strictly_above(x) & M, dn = P.strictly_below(x) & M;
            if (!(up == M || dn == M || (up | dn) == 0)) {
                M |= bit(x);
                changed = true;
            }
        }
    }
    return M;
}

// All nonempty autonomous subsets, singletons and P included, in increasing mask order.
inline std::vector<Mask> autonomous_subsets(const Poset& P)
{
    std::set<Mask> seen;
    std::deque<Mask> queue;
    for (int p = 0; p < P.size(); ++p)
        if (seen.insert(bit(p)).second) queue.push_back(bit(p));
    while (!queue.empty()) {
        Mask M = queue.front();
        queue.pop_front();
        for (int x = 0; x < P.size(); ++x) {
            if (M & bit(x)) continue;
            Mask N = autonomous_closure(P, M | bit(x));
            if (seen.insert(N).second) queue.push_back(N);
        }
    }
    return {seen.begin(), seen.end()};
}

// Reverses the order inside A and keeps every relation with the outside.
// Labels are preserved; indices of the result follow its own linear extension.
inline Poset dualize_autonomous(const Poset& P, Mask A)
{
    if (!is_autonomous(P, A)) throw poset_error("subset is not autonomous");
    std::vector<Mask> below(P.size());
    for (int q = 0; q < P.size(); ++q) {
        if (A & bit(q)) below[q] = (P.strictly_below(q) & ~A) | (P.strictly_above(q) & A);
        else below[q] = P.strictly_below(q);
    }
    return poset_from_order(P.labels(), below);
}

// Mask over Q's indices of the elements whose labels lie in mask over P's indices.
inline Mask transport_mask(const Poset& P, const Poset& Q, Mask m)
{
    Mask r = 0;
    for_each_bit(m, [&](int p) { r |= bit(Q.index_of(P.label(p))); });
    return r;
}

} // namespace posetdyn
