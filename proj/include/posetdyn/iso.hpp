#pragma once

#include "posetdyn/autonomous.hpp"
#include "posetdyn/ideals.hpp"

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace posetdyn {

// A relation on at most 64 vertices: out[v] and in[v] are the successor and
// predecessor sets. Undirected graphs have out == in.
struct Relation {
    std::vector<Mask> out, in;
    int size() const { return static_cast<int>(out.size()); }
};

inline Relation comparability_graph(const Poset& P)
{
    Relation g;
    for (int p = 0; p < P.size(); ++p) {
        Mask m = P.strictly_above(p) | P.strictly_below(p);
        g.out.push_back(m);
        g.in.push_back(m);
    }
    return g;
}

inline Relation order_relation_graph(const Poset& P)
{
    Relation g;
    for (int p = 0; p < P.size(); ++p) {
        g.out.push_back(P.strictly_above(p));
        g.in.push_back(P.strictly_below(p));
    }
    return g;
}

namespace detail {

using Signature = std::vector<int>;

inline Signature vertex_signature(const Relation& g, const std::vector<int>& color, int v)
{
    Signature s{color[v]};
    std::vector<int> a, b;
    for_each_bit(g.out[v], [&](int u) { a.push_back(color[u]); });
    for_each_bit(g.in[v], [&](int u) { b.push_back(color[u]); });
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    s.push_back(-1);
    s.insert(s.end(), a.begin(), a.end());
    s.push_back(-2);
    s.insert(s.end(), b.begin(), b.end());
    return s;
}

// Joint colour refinement; colours are comparable across the graphs.
inline void refine(const std::vector<const Relation*>& gs, std::vector<std::vector<int>>& colors,
                   std::vector<std::vector<Signature>>* history = nullptr)
{
    auto classes = [&] {
        std::set<int> s;
        for (auto& c : colors) s.insert(c.begin(), c.end());
        return s.size();
    };
    std::size_t before = classes();
    while (true) {
        std::vector<std::vector<Signature>> sig(gs.size());
        std::vector<Signature> all;
        for (std::size_t k = 0; k < gs.size(); ++k)
            for (int v = 0; v < gs[k]->size(); ++v) {
                sig[k].push_back(vertex_signature(*gs[k], colors[k], v));
                all.push_back(sig[k].back());
            }
        std::sort(all.begin(), all.end());
        if (history) history->push_back(all);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        for (std::size_t k = 0; k < gs.size(); ++k)
            for (int v = 0; v < gs[k]->size(); ++v)
                colors[k][v] = static_cast<int>(std::lower_bound(all.begin(), all.end(), sig[k][v]) - all.begin());
        std::size_t after = all.size();
        if (after == before) break;
        before = after;
    }
}

inline std::optional<std::vector<int>> iso_search(const Relation& g, const Relation& h, std::vector<int> cg,
                                                  std::vector<int> ch)
{
    std::vector<std::vector<int>> colors{std::move(cg), std::move(ch)};
    refine({&g, &h}, colors);
    const int n = g.size();
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> cells;
    for (int v = 0; v < n; ++v) cells[colors[0][v]].first.push_back(v);
    for (int v = 0; v < n; ++v) cells[colors[1][v]].second.push_back(v);
    const std::vector<int>* best_g = nullptr;
    const std::vector<int>* best_h = nullptr;
    for (auto& [c, cell] : cells) {
        if (cell.first.size() != cell.second.size()) return std::nullopt;
        if (cell.first.size() > 1 && (!best_g || cell.first.size() < best_g->size())) {
            best_g = &cell.first;
            best_h = &cell.second;
        }
    }
    if (!best_g) {
        std::vector<int> map(n);
        for (auto& [c, cell] : cells) map[cell.first[0]] = cell.second[0];
        for (int v = 0; v < n; ++v) {
            Mask img = 0;
            for_each_bit(g.out[v], [&](int u) { img |= bit(map[u]); });
            if (img != h.out[map[v]]) return std::nullopt;
        }
        return map;
    }
    int fresh = 0;
    for (auto& [c, cell] : cells) fresh = std::max(fresh, c + 1);
    int v = best_g->front();
    for (int w : *best_h) {
        auto a = colors[0], b = colors[1];
        a[v] = fresh;
        b[w] = fresh;
        if (auto r = iso_search(g, h, a, b)) return r;
    }
    return std::nullopt;
}

} // namespace detail

// Vertex map g -> h preserving the relation, if one exists.
inline std::optional<std::vector<int>> find_isomorphism(const Relation& g, const Relation& h)
{
    if (g.size() != h.size()) return std::nullopt;
    return detail::iso_search(g, h, std::vector<int>(g.size(), 0), std::vector<int>(h.size(), 0));
}

inline std::optional<std::vector<int>> comp_isomorphic(const Poset& P, const Poset& Q)
{
    return find_isomorphism(comparability_graph(P), comparability_graph(Q));
}

inline std::optional<std::vector<int>> poset_isomorphic(const Poset& P, const Poset& Q)
{
    return find_isomorphism(order_relation_graph(P), order_relation_graph(Q));
}

// Isomorphism-invariant fingerprint from the refinement history.
inline std::string refinement_certificate(const Relation& g)
{
    std::vector<std::vector<int>> colors{std::vector<int>(g.size(), 0)};
    std::vector<std::vector<detail::Signature>> hist;
    detail::refine({&g}, colors, &hist);
    std::string s = std::to_string(g.size());
    for (auto& round : hist) {
        s += '|';
        for (auto& sig : round) {
            for (int x : sig) s += std::to_string(x) + ',';
            s += ';';
        }
    }
    return s;
}

// Posets up to isomorphism, bucketed by certificate.
class PosetClassSet {
public:
    // true if P was new
    bool insert(const Poset& P)
    {
        auto& bucket = buckets_[refinement_certificate(order_relation_graph(P))];
        for (std::size_t i : bucket)
            if (poset_isomorphic(items_[i], P)) return false;
        bucket.push_back(items_.size());
        items_.push_back(P);
        return true;
    }
    std::optional<std::size_t> find(const Poset& P) const
    {
        auto it = buckets_.find(refinement_certificate(order_relation_graph(P)));
        if (it == buckets_.end()) return std::nullopt;
        for (std::size_t i : it->second)
            if (poset_isomorphic(items_[i], P)) return i;
        return std::nullopt;
    }
    const std::vector<Poset>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }

private:
    std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
    std::vector<Poset> items_;
};

// All posets on n elements up to isomorphism, grown by adding a maximal element
// above each order ideal of each poset on n - 1 elements.
inline std::vector<std::vector<Poset>> all_posets_up_to(int n)
{
    std::vector<std::vector<Poset>> levels{{build_poset({}, std::vector<std::pair<int, int>>{})}};
    for (int k = 1; k <= n; ++k) {
        PosetClassSet set;
        for (const Poset& P : levels.back()) {
            std::vector<std::string> el;
            for (int i = 1; i <= k; ++i) el.push_back(std::to_string(i));
            // P's labels are 1..k-1 in index order
            for (Mask I : order_ideals(P)) {
                std::vector<std::pair<std::string, std::string>> lc;
                for (auto [a, b] : P.covers()) lc.emplace_back(P.label(a), P.label(b));
                for_each_bit(max_of(P, I), [&](int p) { lc.emplace_back(P.label(p), std::to_string(k)); });
                set.insert(build_poset(el, lc));
            }
        }
        levels.push_back(set.items());
    }
    return levels;
}

inline std::vector<Poset> connected_posets(int n)
{
    std::vector<Poset> out;
    auto levels = all_posets_up_to(n);
    for (auto& P : levels.back())
        if (is_connected(P)) out.push_back(P);
    return out;
}

// Shortest sequence of autonomous subsets (as label sets) whose successive
// dualizations turn P into a poset isomorphic to Q.
inline std::optional<std::vector<std::vector<std::string>>> dualization_sequence(const Poset& P, const Poset& Q,
                                                                                  std::size_t max_classes = 100000)
{
    PosetClassSet seen;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> parent;
    std::deque<std::size_t> queue;
    seen.insert(P);
    parent.push_back({0, {}});
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        const Poset R = seen.items()[i];
        if (poset_isomorphic(R, Q)) {
            std::vector<std::vector<std::string>> seq;
            for (std::size_t j = i; j != 0; j = parent[j].first) seq.push_back(parent[j].second);
            std::reverse(seq.begin(), seq.end());
            return seq;
        }
        for (Mask A : autonomous_subsets(R)) {
            if (popcount(A) < 2) continue;
            Poset S = dualize_autonomous(R, A);
            if (seen.insert(S)) {
                if (seen.size() > max_classes) throw cap_exceeded("dualization search cap exceeded");
                std::vector<std::string> labels;
                for_each_bit(A, [&](int p) { labels.push_back(R.label(p)); });
                parent.push_back({i, labels});
                queue.push_back(seen.size() - 1);
            }
        }
    }
    return std::nullopt;
}

} // namespace posetdyn
