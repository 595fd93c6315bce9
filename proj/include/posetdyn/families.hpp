#pragma once

#include "posetdyn/poset.hpp"

#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace posetdyn {

enum class Family {
    rectangle,
    shifted_staircase,
    propeller,
    cayley_plane,
    freudenthal,
    root,
    trapezoid,
    chain,
    antichain,
    example,
};

struct FamilySpec {
    Family family = Family::chain;
    int a = 1;      // rectangle rows, trapezoid k, shifted/propeller n, root rank or m, chain length
    int b = 0;      // rectangle columns, trapezoid n
    char type = 0;  // root type letter: A B C D E H I
    std::string name; // example name

    bool operator==(const FamilySpec&) const = default;
};

inline FamilySpec rectangle(int a, int b) { return {Family::rectangle, a, b}; }
inline FamilySpec grassmannian(int k, int n) { return rectangle(k, n - k); }
inline FamilySpec trapezoid(int k, int n) { return {Family::trapezoid, k, n}; }
inline FamilySpec shifted_staircase(int n) { return {Family::shifted_staircase, n}; }
inline FamilySpec propeller(int n) { return {Family::propeller, n}; }
inline FamilySpec cayley_plane() { return {Family::cayley_plane}; }
inline FamilySpec freudenthal() { return {Family::freudenthal}; }
inline FamilySpec root_poset(char type, int n) { return {Family::root, n, 0, type}; }
inline FamilySpec chain(int n) { return {Family::chain, n}; }
inline FamilySpec antichain(int n) { return {Family::antichain, n}; }
inline FamilySpec example(const std::string& name) { return {Family::example, 0, 0, 0, name}; }

inline bool is_minuscule(const FamilySpec& s)
{
    switch (s.family) {
    case Family::rectangle:
    case Family::shifted_staircase:
    case Family::propeller:
    case Family::cayley_plane:
    case Family::freudenthal: return true;
    default: return false;
    }
}

inline bool is_coincidental_root(const FamilySpec& s)
{
    if (s.family != Family::root) return false;
    return s.type == 'A' || s.type == 'B' || s.type == 'C' || s.type == 'H' || s.type == 'I';
}

inline std::string to_string(const FamilySpec& s)
{
    switch (s.family) {
    case Family::rectangle: return "rect:" + std::to_string(s.a) + "x" + std::to_string(s.b);
    case Family::trapezoid: return "trap:" + std::to_string(s.a) + "," + std::to_string(s.b);
    case Family::shifted_staircase: return "shifted:" + std::to_string(s.a);
    case Family::propeller: return "prop:" + std::to_string(s.a);
    case Family::cayley_plane: return "e6";
    case Family::freudenthal: return "e7";
    case Family::root:
        if (s.type == 'I') return "root:I2(" + std::to_string(s.a) + ")";
        return std::string("root:") + s.type + std::to_string(s.a);
    case Family::chain: return "chain:" + std::to_string(s.a);
    case Family::antichain: return "antichain:" + std::to_string(s.a);
    case Family::example: return s.name;
    }
    return "?";
}

inline FamilySpec parse_spec(const std::string& text)
{
    std::smatch m;
    auto num = [&](int i) { return std::stoi(m[i].str()); };
    if (std::regex_match(text, m, std::regex(R"(rect:(\d+)x(\d+))"))) return rectangle(num(1), num(2));
    if (std::regex_match(text, m, std::regex(R"(gr:(\d+),(\d+))"))) return grassmannian(num(1), num(2));
    if (std::regex_match(text, m, std::regex(R"(trap:(\d+),(\d+))"))) return trapezoid(num(1), num(2));
    if (std::regex_match(text, m, std::regex(R"(shifted:(\d+))"))) return shifted_staircase(num(1));
    if (std::regex_match(text, m, std::regex(R"(prop:(\d+))"))) return propeller(num(1));
    if (std::regex_match(text, m, std::regex(R"(root:I2\((\d+)\))"))) return root_poset('I', num(1));
    if (std::regex_match(text, m, std::regex(R"(root:([ABCDEH])(\d+))"))) return root_poset(m[1].str()[0], num(2));
    if (std::regex_match(text, m, std::regex(R"(chain:(\d+))"))) return chain(num(1));
    if (std::regex_match(text, m, std::regex(R"(antichain:(\d+))"))) return antichain(num(1));
    if (text == "e6") return cayley_plane();
    if (text == "e7") return freudenthal();
    if (text == "ex6p" || text == "ex6q" || text == "ex7p" || text == "ex7q") return example(text);
    throw std::invalid_argument("unrecognized poset spec: " + text);
}

namespace detail {

inline std::string coord(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Hasse diagram drawn with heights; each edge is oriented upward.
struct Drawing {
    std::vector<std::pair<std::string, int>> nodes; // label, height
    std::vector<std::pair<std::string, std::string>> edges;
};

inline Poset from_drawing(const Drawing& d)
{
    std::map<std::string, int> h;
    std::vector<std::string> el;
    for (auto& [l, y] : d.nodes) {
        h[l] = y;
        el.push_back(l);
    }
    std::vector<std::pair<std::string, std::string>> c;
    for (auto& [a, b] : d.edges) {
        if (h.at(a) == h.at(b)) throw poset_error("horizontal edge in drawing");
        if (h.at(a) < h.at(b)) c.emplace_back(a, b);
        else c.emplace_back(b, a);
    }
    return build_poset(el, c);
}

inline std::vector<std::pair<std::string, std::string>> numbered_edges(
    std::initializer_list<std::pair<int, int>> e)
{
    std::vector<std::pair<std::string, std::string>> r;
    for (auto [a, b] : e) r.emplace_back(std::to_string(a), std::to_string(b));
    return r;
}

// Upper half of the E7 drawing is the same shape as the H3 root poset.
inline const std::vector<std::pair<int, int>>& h3_edges()
{
    static const std::vector<std::pair<int, int>> e = {
        {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}, {5, 7}, {6, 8}, {7, 8},
        {7, 9}, {8, 10}, {8, 11}, {9, 11}, {10, 12}, {11, 12}, {12, 13}, {13, 14}, {14, 15}};
    return e;
}

// heights doubled so they are integers
inline const std::vector<int>& h3_heights()
{
    static const std::vector<int> y = {0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 6, 7, 8};
    return y;
}

inline Drawing h3_drawing()
{
    Drawing d;
    for (int i = 1; i <= 15; ++i) d.nodes.emplace_back(std::to_string(i), h3_heights()[i - 1]);
    for (auto [a, b] : h3_edges()) d.edges.emplace_back(std::to_string(a), std::to_string(b));
    return d;
}

inline Drawing e6_drawing()
{
    Drawing d;
    d.nodes = {{"-4", -3}, {"-3", -2}, {"-2", -1}, {"-1", 0}, {"0", 1}, {"1", 0}, {"2", 1}, {"3", 2},
               {"4", 3},   {"6", 2},   {"7", 3},   {"8", 4},  {"11", 4}, {"12", 5}, {"13", 6}, {"14", 7}};
    d.edges = {{"-4", "-3"}, {"-3", "-2"}, {"-2", "-1"}, {"-2", "1"}, {"-1", "2"}, {"0", "6"}, {"0", "1"},
               {"1", "2"},   {"2", "3"},   {"3", "4"},   {"2", "6"},  {"3", "7"},  {"4", "8"}, {"6", "7"},
               {"7", "8"},   {"7", "11"},  {"8", "12"},  {"11", "12"}, {"12", "13"}, {"13", "14"}};
    return d;
}

inline Drawing e7_drawing()
{
    Drawing d = h3_drawing();
    // mirrored lower half, heights doubled
    const std::vector<std::pair<int, int>> lower = {{-4, -1}, {-5, -1}, {-6, -2}, {-7, -2}, {-8, -3}, {-9, -3},
                                                    {-10, -4}, {-11, -4}, {-12, -5}, {-13, -6}, {-14, -7}, {-15, -8}};
    for (auto [l, y] : lower) d.nodes.emplace_back(std::to_string(l), y);
    const std::vector<std::pair<int, int>> e = {
        {1, -4},   {2, -4},   {2, -5},   {3, -5},    {-4, -6},   {-5, -6},   {-5, -7},   {-6, -8},   {-7, -8},
        {-7, -9},  {-8, -10}, {-8, -11}, {-9, -11},  {-10, -12}, {-11, -12}, {-12, -13}, {-13, -14}, {-14, -15}};
    for (auto [a, b] : e) d.edges.emplace_back(std::to_string(a), std::to_string(b));
    return d;
}

inline Poset make_rectangle(int a, int b)
{
    std::vector<std::string> el;
    std::vector<std::pair<std::string, std::string>> c;
    for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= b; ++j) {
            el.push_back(coord(i, j));
            if (i < a) c.emplace_back(coord(i, j), coord(i + 1, j));
            if (j < b) c.emplace_back(coord(i, j), coord(i, j + 1));
        }
    return build_poset(el, c);
}

// Points (x, y) with x + y in {0, 2, ..., 2k-2}, y >= 0 and x >= 2k - n;
// (x, y) is covered by (x - 1, y + 1) and (x + 1, y + 1).
inline Poset make_trapezoid(int k, int n)
{
    std::vector<std::string> el;
    std::set<std::pair<int, int>> pts;
    for (int d = 0; d <= 2 * k - 2; d += 2)
        for (int y = 0;; ++y) {
            int x = d - y;
            if (x < 2 * k - n) break;
            pts.emplace(x, y);
        }
    std::vector<std::pair<std::string, std::string>> c;
    for (auto [x, y] : pts) {
        el.push_back(coord(x, y));
        for (int dx : {-1, 1})
            if (pts.count({x + dx, y + 1})) c.emplace_back(coord(x, y), coord(x + dx, y + 1));
    }
    return build_poset(el, c);
}

// (a, b) with 0 <= a <= b <= n - 2
inline Poset make_shifted_staircase(int n)
{
    std::vector<std::string> el;
    std::vector<std::pair<std::string, std::string>> c;
    for (int a = 0; a <= n - 2; ++a)
        for (int b = a; b <= n - 2; ++b) {
            el.push_back(coord(a, b));
            if (b < n - 2) c.emplace_back(coord(a, b), coord(a, b + 1));
            if (a < b) c.emplace_back(coord(a, b), coord(a + 1, b));
        }
    return build_poset(el, c);
}

inline Poset make_propeller(int n)
{
    std::vector<std::string> el;
    std::vector<std::pair<std::string, std::string>> c;
    for (int i = 1; i <= 2 * n; ++i) el.push_back(std::to_string(i));
    auto e = [&](int a, int b) { c.emplace_back(std::to_string(a), std::to_string(b)); };
    for (int i = 1; i < n - 1; ++i) e(i, i + 1);
    e(n - 1, n);
    e(n - 1, n + 1);
    e(n, n + 2);
    e(n + 1, n + 2);
    for (int i = n + 2; i < 2 * n; ++i) e(i, i + 1);
    return build_poset(el, c);
}

inline Poset make_chain(int n)
{
    std::vector<std::string> el;
    std::vector<std::pair<int, int>> c;
    for (int i = 0; i < n; ++i) {
        el.push_back(std::to_string(i + 1));
        if (i) c.emplace_back(i - 1, i);
    }
    return build_poset(el, c);
}

inline Poset make_i2(int m)
{
    std::vector<std::string> el;
    std::vector<std::pair<int, int>> c;
    for (int i = 1; i <= m; ++i) el.push_back(std::to_string(i));
    if (m >= 3) {
        c.emplace_back(0, 2);
        c.emplace_back(1, 2);
    }
    for (int i = 3; i < m; ++i) c.emplace_back(i - 1, i);
    return build_poset(el, c);
}

inline Poset make_example(const std::string& name)
{
    if (name == "ex6p")
        return build_poset({"1", "2", "3", "4", "5", "6"}, numbered_edges({{1, 2}, {2, 3}, {4, 5}, {5, 6}}));
    if (name == "ex6q")
        return build_poset({"1", "2", "3", "4", "5", "6"},
                           numbered_edges({{1, 2}, {1, 3}, {2, 4}, {3, 5}, {3, 6}}));
    if (name == "ex7p")
        return build_poset({"1", "2", "3", "4", "5", "6", "7"},
                           numbered_edges({{1, 3}, {2, 3}, {2, 4}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}}));
    if (name == "ex7q")
        return build_poset({"1", "2", "3", "4", "5", "6", "7"},
                           numbered_edges({{1, 3}, {2, 3}, {2, 5}, {2, 6}, {3, 7}, {5, 4}, {6, 4}, {4, 7}}));
    throw std::invalid_argument("unknown example poset: " + name);
}

} // namespace detail

// Positive roots in simple-root coordinates, generated from a Cartan matrix
// A[i][j] = <alpha_i, alpha_j^vee> by the root-string rule.
inline std::vector<std::vector<int>> positive_roots(const std::vector<std::vector<int>>& cartan)
{
    const int n = static_cast<int>(cartan.size());
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> level, all;
    for (int i = 0; i < n; ++i) {
        std::vector<int> v(n, 0);
        v[i] = 1;
        level.push_back(v);
        roots.insert(v);
    }
    while (!level.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& beta : level) {
            all.push_back(beta);
            for (int i = 0; i < n; ++i) {
                int p = 0;
                std::vector<int> down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!roots.count(down)) break;
                    ++p;
                }
                int pairing = 0;
                for (int j = 0; j < n; ++j) pairing += beta[j] * cartan[j][i];
                if (p - pairing > 0) {
                    std::vector<int> up = beta;
                    up[i] += 1;
                    if (roots.insert(up).second) next.push_back(up);
                }
            }
        }
        level = std::move(next);
    }
    return all;
}

// Cartan matrix of a crystallographic type, Bourbaki numbering.
inline std::vector<std::vector<int>> cartan_matrix(char type, int n)
{
    std::vector<std::vector<int>> simple; // in the standard e-basis
    auto e = [](int dim, std::initializer_list<std::pair<int, int>> entries) {
        std::vector<int> v(dim, 0);
        for (auto [i, x] : entries) v[i] = x;
        return v;
    };
    if (n < 1) throw std::invalid_argument("rank must be positive");
    switch (type) {
    case 'A':
        for (int i = 0; i < n; ++i) simple.push_back(e(n + 1, {{i, 1}, {i + 1, -1}}));
        break;
    case 'B':
        for (int i = 0; i + 1 < n; ++i) simple.push_back(e(n, {{i, 1}, {i + 1, -1}}));
        simple.push_back(e(n, {{n - 1, 1}}));
        break;
    case 'C':
        for (int i = 0; i + 1 < n; ++i) simple.push_back(e(n, {{i, 1}, {i + 1, -1}}));
        simple.push_back(e(n, {{n - 1, 2}}));
        break;
    case 'D':
        if (n < 2) throw std::invalid_argument("D_n needs n >= 2");
        for (int i = 0; i + 1 < n; ++i) simple.push_back(e(n, {{i, 1}, {i + 1, -1}}));
        simple.push_back(e(n, {{n - 2, 1}, {n - 1, 1}}));
        break;
    case 'E': {
        if (n != 6 && n != 7 && n != 8) throw std::invalid_argument("E_n needs n in 6..8");
        std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
        auto link = [&](int i, int j) { A[i - 1][j - 1] = A[j - 1][i - 1] = -1; };
        for (int i = 0; i < n; ++i) A[i][i] = 2;
        link(1, 3);
        link(2, 4);
        for (int i = 3; i < n; ++i) link(i, i + 1);
        return A;
    }
    default: throw std::invalid_argument(std::string("no Cartan matrix for type ") + type);
    }
    std::vector<std::vector<int>> A(n, std::vector<int>(n));
    auto dot = [](const std::vector<int>& x, const std::vector<int>& y) {
        int s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = 2 * dot(simple[i], simple[j]) / dot(simple[j], simple[j]);
    return A;
}

inline std::string root_label(const std::vector<int>& v)
{
    std::string s;
    for (int x : v) s += std::to_string(x);
    return s;
}

// Root poset on the given roots: beta >= alpha iff beta - alpha is nonnegative.
inline Poset poset_of_roots(const std::vector<std::vector<int>>& roots)
{
    const int m = static_cast<int>(roots.size());
    if (m > max_poset_size) throw poset_error("root poset larger than 64 elements");
    std::vector<std::string> el;
    std::vector<Mask> below(m, 0);
    for (int i = 0; i < m; ++i) {
        el.push_back(root_label(roots[i]));
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            bool ge = true;
            for (std::size_t k = 0; k < roots[i].size(); ++k)
                if (roots[i][k] < roots[j][k]) ge = false;
            if (ge) below[i] |= bit(j);
        }
    }
    return poset_from_order(el, below);
}

inline Poset crystallographic_root_poset(char type, int n)
{
    return poset_of_roots(positive_roots(cartan_matrix(type, n)));
}

// Order filter generated by the simple root alpha_node (1-based) in the root poset.
inline Poset minuscule_from_roots(char type, int n, int node)
{
    std::vector<std::vector<int>> f;
    for (auto& r : positive_roots(cartan_matrix(type, n)))
        if (r[node - 1] >= 1) f.push_back(r);
    return poset_of_roots(f);
}

inline Poset make(const FamilySpec& s)
{
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("parameter out of range: " + what);
    };
    switch (s.family) {
    case Family::rectangle:
        need(s.a >= 1 && s.b >= 1, "rectangle sides");
        return detail::make_rectangle(s.a, s.b);
    case Family::trapezoid:
        need(s.a >= 1 && 2 * s.a <= s.b, "trapezoid requires 1 <= k <= n/2");
        return detail::make_trapezoid(s.a, s.b);
    case Family::shifted_staircase:
        need(s.a >= 2, "shifted staircase requires n >= 2");
        return detail::make_shifted_staircase(s.a);
    case Family::propeller:
        need(s.a >= 2, "propeller requires n >= 2");
        return detail::make_propeller(s.a);
    case Family::cayley_plane: return detail::from_drawing(detail::e6_drawing());
    case Family::freudenthal: return detail::from_drawing(detail::e7_drawing());
    case Family::root:
        if (s.type == 'H') {
            need(s.a == 3, "only H3 has a root poset here");
            return detail::from_drawing(detail::h3_drawing());
        }
        if (s.type == 'I') {
            need(s.a >= 2, "I2(m) requires m >= 2");
            return detail::make_i2(s.a);
        }
        return crystallographic_root_poset(s.type, s.a);
    case Family::chain:
        need(s.a >= 0, "chain length");
        return detail::make_chain(s.a);
    case Family::antichain: {
        need(s.a >= 0, "antichain size");
        std::vector<std::string> el;
        for (int i = 1; i <= s.a; ++i) el.push_back(std::to_string(i));
        return build_poset(el, std::vector<std::pair<std::string, std::string>>{});
    }
    case Family::example: return detail::make_example(s.name);
    }
    throw std::invalid_argument("unknown family");
}

inline Poset make(const std::string& spec) { return make(parse_spec(spec)); }

inline std::vector<int> rank_sizes(const Poset& P)
{
    std::vector<int> s(P.size() ? P.rank() + 1 : 0, 0);
    for (int p = 0; p < P.size(); ++p) ++s[P.rank(p)];
    return s;
}

// Inverts #{roots of rank i} = #{j : d_j > i + 1}.
inline std::vector<int> degrees_from_rank_sizes(const std::vector<int>& s)
{
    std::vector<int> d;
    for (std::size_t i = 0; i < s.size(); ++i) {
        int next = i + 1 < s.size() ? s[i + 1] : 0;
        for (int c = 0; c < s[i] - next; ++c) d.push_back(static_cast<int>(i) + 2);
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Root system whose root poset carries the degrees of the family.
inline FamilySpec host_root_system(const FamilySpec& s)
{
    switch (s.family) {
    case Family::root: return s;
    case Family::rectangle: return root_poset('A', s.a + s.b - 1);
    case Family::shifted_staircase: return root_poset('D', s.a);
    case Family::propeller: return root_poset('D', s.a + 1);
    case Family::cayley_plane: return root_poset('E', 6);
    case Family::freudenthal: return root_poset('E', 7);
    default: throw std::invalid_argument("family has no degrees: " + to_string(s));
    }
}

inline std::vector<int> degrees(const FamilySpec& s)
{
    FamilySpec h = host_root_system(s);
    if (h.type == 'I') {
        if (h.a == 2) return {2, 2};
        return {2, h.a};
    }
    if (h.type == 'E') return degrees_from_rank_sizes(rank_sizes(poset_of_roots(positive_roots(cartan_matrix('E', h.a)))));
    return degrees_from_rank_sizes(rank_sizes(make(h)));
}

inline int coxeter_number(const FamilySpec& s)
{
    switch (s.family) {
    case Family::trapezoid: return s.b;
    case Family::rectangle: return s.a + s.b;
    case Family::shifted_staircase: return 2 * s.a - 2;
    case Family::propeller: return 2 * s.a;
    default: break;
    }
    auto d = degrees(s);
    return d.back();
}

struct DoppelgangerPair {
    std::string name;
    FamilySpec p, q;
};

// (Gr(k,n), T_{k,n}) for 2 <= n <= n_max and 1 <= k <= n/2, then (OG(6,12), H3)
// and (Q^{2m}, I2(2m)) for 2 <= m <= m_max.
inline std::vector<DoppelgangerPair> doppelganger_pairs(int n_max, int m_max = 0, bool with_h3 = true)
{
    std::vector<DoppelgangerPair> out;
    for (int n = 2; n <= n_max; ++n)
        for (int k = 1; 2 * k <= n; ++k)
            out.push_back({"Gr(" + std::to_string(k) + "," + std::to_string(n) + ")", grassmannian(k, n),
                           trapezoid(k, n)});
    if (with_h3) out.push_back({"OG(6,12)", shifted_staircase(6), root_poset('H', 3)});
    for (int m = 2; m <= m_max; ++m)
        out.push_back({"Q^" + std::to_string(2 * m), propeller(m), root_poset('I', 2 * m)});
    return out;
}

} // namespace posetdyn
