#pragma once

#include "posetdyn/rowmotion.hpp"

#include <map>

namespace posetdyn {

using OrbitKey = std::pair<std::size_t, long long>; // (length, ddeg sum)

inline std::vector<OrbitKey> orbit_keys(const std::vector<OrbitSummary>& s)
{
    std::vector<OrbitKey> k;
    for (auto& o : s) k.emplace_back(o.length, o.ddeg_sum);
    return k;
}

// Perfect matching left[i] <-> right[m[i]] joining equal keys, if one exists. The compatibility
// graph is a disjoint union of complete bipartite blocks, one per key, so pairing within each
// block succeeds exactly when every key has the same multiplicity on both sides.
inline std::optional<std::vector<std::size_t>> match_orbits(const std::vector<OrbitKey>& left,
                                                            const std::vector<OrbitKey>& right)
{
    if (left.size() != right.size()) return std::nullopt;
    std::map<OrbitKey, std::vector<std::size_t>> by_key;
    for (std::size_t j = right.size(); j-- > 0;) by_key[right[j]].push_back(j);
    std::vector<std::size_t> m(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        auto it = by_key.find(left[i]);
        if (it == by_key.end() || it->second.empty()) return std::nullopt;
        m[i] = it->second.back();
        it->second.pop_back();
    }
    return m;
}

// Bijective and key-preserving.
inline bool valid_matching(const std::vector<OrbitKey>& left, const std::vector<OrbitKey>& right,
                           const std::vector<std::size_t>& m)
{
    if (left.size() != right.size() || m.size() != left.size()) return false;
    std::vector<char> used(right.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] >= right.size() || used[m[i]] || left[i] != right[m[i]]) return false;
        used[m[i]] = 1;
    }
    return true;
}

// Orbit map induced by a state bijection that commutes with the dynamics.
inline std::optional<std::vector<std::size_t>> induced_orbit_map(const OrbitPartition& a, const OrbitPartition& b,
                                                                 const std::vector<std::uint32_t>& bijection)
{
    std::vector<std::size_t> orbit_of(bijection.size());
    for (std::size_t j = 0; j < b.orbits.size(); ++j)
        for (auto x : b.orbits[j]) orbit_of[x] = j;
    std::vector<std::size_t> m;
    for (auto& o : a.orbits) {
        std::size_t j = orbit_of[bijection[o.front()]];
        for (auto x : o)
            if (orbit_of[bijection[x]] != j) return std::nullopt;
        m.push_back(j);
    }
    return m;
}

} // namespace posetdyn
