#pragma once

#include "posetdyn/birational.hpp"
#include "posetdyn/cyclic_sieving.hpp"
#include "posetdyn/iso.hpp"
#include "posetdyn/matching.hpp"
#include "posetdyn/poset_io.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <ostream>
#include <thread>

namespace posetdyn {

inline constexpr const char* version = "0.1.0";

using json = nlohmann::json;

inline json poly_json(const IntPolynomial& p) { return p.to_strings(); }
inline IntPolynomial poly_from_json(const json& j) { return parse_int_poly(j.get<std::vector<std::string>>()); }

// 0 for the combinatorial level, ell for pp:ell
inline int parse_level(const std::string& s)
{
    if (s == "comb") return 0;
    if (s.rfind("pp:", 0) == 0) {
        int ell = std::stoi(s.substr(3));
        if (ell < 1) throw std::invalid_argument("level height must be at least 1");
        return ell;
    }
    throw std::invalid_argument("level must be comb or pp:L");
}

inline std::string level_name(int ell) { return ell == 0 ? "comb" : "pp:" + std::to_string(ell); }

struct Verdict {
    bool holds = false;
    json values = json::object();
};

struct OrbitData {
    OrbitPartition part;
    std::vector<OrbitSummary> summary;
};

inline OrbitData orbit_data(const Poset& P, int ell)
{
    if (ell == 0) {
        CombinatorialSystem S(P);
        auto part = S.orbits();
        return {part, summarize(part, S.ddeg)};
    }
    PPSystem S(P, ell);
    auto part = S.orbits();
    return {part, summarize(part, S.ddeg)};
}

// multiset of (length, ddeg sum) as sorted [[length, sum, multiplicity], ...]
inline json key_multiset(const std::vector<OrbitKey>& keys)
{
    std::map<OrbitKey, long> m;
    for (auto& k : keys) ++m[k];
    json j = json::array();
    for (auto& [k, c] : m) j.push_back({k.first, k.second, c});
    return j;
}

inline Verdict check_mcde_pair(const Poset& P, const Poset& Q)
{
    IdealLattice LP(P), LQ(Q);
    Rational expected(P.size(), P.rank() + 2);
    Rational dp = edge_density(LP), dq = edge_density(LQ);
    bool mp = is_mcde(LP), mq = is_mcde(LQ);
    Verdict v;
    v.values = {{"density", {to_string(dp), to_string(dq)}},
                {"expected_density", to_string(expected)},
                {"mcde", {mp, mq}},
                {"ell_checked", {P.size() + 2, Q.size() + 2}}};
    v.holds = mp && mq && dp == expected && dq == expected;
    return v;
}

inline Verdict check_ddeg_gf_pair(const Poset& P, const Poset& Q, const std::vector<int>& ells)
{
    IdealLattice LP(P), LQ(Q);
    Verdict v{true, json::object()};
    for (int ell : ells) {
        auto a = ddeg_generating_function(LP, ell), b = ddeg_generating_function(LQ, ell);
        v.values[std::to_string(ell)] = {{"p", poly_json(a)}, {"q", poly_json(b)}};
        v.holds = v.holds && a == b;
    }
    return v;
}

inline Verdict check_setvalued_pair(const Poset& P, const Poset& Q, const std::vector<int>& ells)
{
    Verdict v{true, json::object()};
    for (int ell : ells) {
        auto a = setvalued_counts(P, ell), b = setvalued_counts(Q, ell);
        v.values[std::to_string(ell)] = {{"p", poly_json(a)}, {"q", poly_json(b)}};
        v.holds = v.holds && a == b;
    }
    return v;
}

inline constexpr std::size_t witness_limit = 2000;

inline Verdict check_orbit_matching(const Poset& P, const Poset& Q, int ell)
{
    auto a = orbit_data(P, ell), b = orbit_data(Q, ell);
    auto ka = orbit_keys(a.summary), kb = orbit_keys(b.summary);
    Verdict v;
    v.values = {{"level", level_name(ell)}, {"p", key_multiset(ka)}, {"q", key_multiset(kb)}};
    auto m = match_orbits(ka, kb);
    if (m && !valid_matching(ka, kb, *m)) throw std::logic_error("matcher produced an invalid witness");
    v.holds = m.has_value();
    if (m && ka.size() <= witness_limit) {
        json keys_p = json::array(), keys_q = json::array();
        for (auto& k : ka) keys_p.push_back({k.first, k.second});
        for (auto& k : kb) keys_q.push_back({k.first, k.second});
        v.values["witness"] = {{"p_keys", keys_p}, {"q_keys", keys_q}, {"map", *m}};
    }
    return v;
}

inline Verdict check_tcde(const Poset& P)
{
    IdealLattice L(P);
    auto r = tcde_solve_detailed(L);
    Verdict v;
    v.values["delta"] = to_string(edge_density(L));
    v.holds = r.certificate.has_value();
    if (r.certificate) {
        json c = json::object(), scaled = json::object();
        BigInt k = r.certificate->scale();
        for (int p = 0; p < P.size(); ++p) {
            c[P.label(p)] = to_string(r.certificate->c[p]);
            scaled[P.label(p)] = to_string(Rational(r.certificate->c[p] * k));
        }
        v.values["certificate"] = c;
        v.values["scale"] = to_string(k);
        v.values["scaled_certificate"] = scaled;
        v.values["scaled_delta"] = to_string(Rational(r.certificate->delta * k));
        v.values["rank"] = r.rank;
    }
    return v;
}

inline Verdict check_row_order(const Poset& P, long expected)
{
    CombinatorialSystem S(P);
    auto part = S.orbits();
    Verdict v;
    std::map<std::size_t, long> lengths;
    for (auto l : part.lengths()) ++lengths[l];
    json lj = json::array();
    for (auto [l, c] : lengths) lj.push_back({l, c});
    v.values = {{"lengths", lj}, {"order", to_string(part.order())}, {"expected", expected}};
    v.holds = part.order() == expected;
    return v;
}

inline Verdict check_csp(const FamilySpec& s, int ell)
{
    Poset P = make(s);
    auto sd = sieving_polynomial(s, ell == 0 ? 1 : ell);
    OrbitPartition part = ell == 0 ? CombinatorialSystem(P).orbits() : PPSystem(P, ell).orbits();
    auto r = csp_check(part, sd.N, sd.X);
    Verdict v;
    json table = json::array();
    for (auto& row : r.rows)
        table.push_back({{"k", row.k}, {"fixed", to_string(row.fixed)}, {"value", row.value.str()}, {"ok", row.ok}});
    BigInt states = 0;
    for (auto& o : part.orbits) states += o.size();
    v.values = {{"level", level_name(ell)}, {"N", sd.N},         {"order", to_string(r.order)},
                {"poly", poly_json(sd.X)},  {"name", sd.name},    {"states", to_string(states)},
                {"table", table}};
    v.holds = r.ok() && sd.X.sum_of_coeffs() == states;
    return v;
}

// ddeg is (ell * delta)-mesic (delta = edge density of J(P)), antichain cardinality is #P/h-mesic
// at the combinatorial level when h is given, and every toggleability sums to zero along each orbit.
inline Verdict check_homomesy(const Poset& P, int ell, int h = 0)
{
    IdealLattice L(P);
    Rational target = edge_density(L) * (ell == 0 ? 1 : ell);
    OrbitPartition part;
    std::vector<long long> dd;
    std::function<int(std::uint32_t, int)> tog;
    std::optional<CombinatorialSystem> cs;
    std::optional<PPSystem> ps;
    if (ell == 0) {
        cs.emplace(P);
        part = cs->orbits();
        dd = cs->ddeg;
        tog = [&](std::uint32_t x, int p) { return cs->toggleability(x, p); };
    } else {
        ps.emplace(P, ell);
        part = ps->orbits();
        dd = ps->ddeg;
        tog = [&](std::uint32_t x, int p) { return ps->toggleability(x, p); };
    }
    auto summary = summarize(part, dd);
    bool ddeg_ok = true;
    for (auto& o : summary) ddeg_ok = ddeg_ok && o.ddeg_average() == target;
    json nonzero = json::array();
    for (std::size_t i = 0; i < part.orbits.size(); ++i)
        for (int p = 0; p < P.size(); ++p) {
            long long s = 0;
            for (auto x : part.orbits[i]) s += tog(x, p);
            if (s != 0) nonzero.push_back({i, P.label(p), s});
        }
    Verdict v;
    v.values = {{"level", level_name(ell)},
                {"ddeg_target", to_string(target)},
                {"orbits", key_multiset(orbit_keys(summary))},
                {"toggle_nonzero", nonzero}};
    v.holds = ddeg_ok && nonzero.empty();
    if (ell == 0 && h > 0) {
        Rational acard_target(P.size(), h);
        bool ok = true;
        for (auto& orbit : part.orbits) {
            long long s = 0;
            for (auto x : orbit) s += cs->antichain_size(x);
            ok = ok && Rational(s, static_cast<long long>(orbit.size())) == acard_target;
        }
        v.values["antichain_target"] = to_string(acard_target);
        v.values["antichain_ok"] = ok;
        v.holds = v.holds && ok;
    }
    return v;
}

inline Verdict check_orbit_length_present(const Poset& P, int ell, std::size_t length)
{
    auto d = orbit_data(P, ell);
    Verdict v;
    std::map<std::size_t, long> lengths;
    for (auto l : d.part.lengths()) ++lengths[l];
    json lj = json::array();
    for (auto [l, c] : lengths) lj.push_back({l, c});
    v.values = {{"level", level_name(ell)}, {"lengths", lj}, {"wanted", length}};
    v.holds = lengths.count(length) > 0;
    return v;
}

enum class OrderExpectation { equals, divides };

inline json labeling_json(const RationalVector& f)
{
    json j = json::array();
    for (auto& x : f) j.push_back(to_string(x));
    return j;
}

// Order detection plus, when a certificate exists and degrees are at most 2, the orbit product
// and lifted certificate identities at each (alpha, omega); rectangles also get the refined identities.
inline Verdict check_birational(const FamilySpec& s, int trials, std::uint64_t seed,
                                const std::vector<std::pair<long, long>>& params = {{2, 3}, {1, 5}})
{
    Poset P = make(s);
    long target;
    OrderExpectation kind;
    if (s.family == Family::trapezoid) {
        target = P.rank() + 2;
        kind = OrderExpectation::equals;
    } else if (is_minuscule(s)) {
        target = coxeter_number(s);
        kind = OrderExpectation::equals;
    } else {
        target = 2 * coxeter_number(s);
        kind = OrderExpectation::divides;
    }
    std::size_t cap = 4 * static_cast<std::size_t>(coxeter_number(s)) + 4;
    Verdict v{true, json::object()};
    v.values["expected"] = {{"relation", kind == OrderExpectation::equals ? "equals" : "divides"}, {"value", target}};
    v.values["cap"] = cap;
    v.values["seed"] = seed;
    IdealLattice L(P);
    auto cert = tcde_solve(L);
    bool identities = cert && degree_bounded(P, 2);
    if (cert) v.values["delta"] = to_string(cert->delta);
    v.values["exponent"] = identities ? homomesy_exponent(P, cert->delta) : 0;
    json runs = json::array();
    for (auto [a, w] : params) {
        BirationalParams bp{Rational(a), Rational(w)};
        auto rep = detect_order(P, trials, cap, seed, bp);
        json run = {{"alpha", to_string(bp.alpha)}, {"omega", to_string(bp.omega)}, {"diagnosis", rep.diagnosis}};
        json tj = json::array();
        bool order_ok = rep.order.has_value() &&
                        (kind == OrderExpectation::equals ? static_cast<long>(*rep.order) == target
                                                          : target % static_cast<long>(*rep.order) == 0);
        run["order"] = rep.order ? json(*rep.order) : json(nullptr);
        run["order_ok"] = order_ok;
        bool ids_ok = true;
        for (auto& o : rep.trials) {
            json t = {{"labeling", labeling_json(o.seed)},
                      {"period", o.period ? json(*o.period) : json(nullptr)},
                      {"bits", o.bit_growth}};
            if (o.period && identities) {
                auto pts = orbit_points(P, o.seed, *o.period, bp);
                Rational prod = 1;
                for (auto& f : pts) prod *= birational_ddeg(P, f, bp);
                t["ddeg_product"] = to_string(prod);
                bool ok = check_orbit_product(P, pts, cert->delta, bp).ok;
                for (auto& f : pts) ok = ok && check_lifted_certificate(P, f, *cert, bp).ok;
                if (s.family == Family::rectangle) ok = ok && check_rectangle_refined(P, s.a, s.b, pts, bp).ok;
                t["identities_ok"] = ok;
                ids_ok = ids_ok && ok;
            }
            tj.push_back(t);
        }
        run["trials"] = tj;
        runs.push_back(run);
        v.holds = v.holds && order_ok && ids_ok;
    }
    v.values["runs"] = runs;
    v.values["identities_checked"] = identities;
    return v;
}

// For every poset on at most n_max elements and every autonomous subset A with #A >= 2,
// builds the equivariant bijection J(P) -> J(dual_A P) and checks it against the matcher.
inline Verdict check_dualization_bijections(int n_max)
{
    long posets = 0, pairs = 0;
    json failures = json::array();
    auto levels = all_posets_up_to(n_max);
    for (auto& level : levels)
        for (auto& P : level) {
            ++posets;
            IdealLattice LP(P);
            CombinatorialSystem SP(P);
            auto partP = SP.orbits();
            auto keysP = orbit_keys(summarize(partP, SP.ddeg));
            for (Mask A : autonomous_subsets(P)) {
                if (popcount(A) < 2) continue;
                ++pairs;
                Poset Q = dualize_autonomous(P, A);
                CombinatorialSystem SQ(Q);
                auto psi = dualization_bijection(LP, SQ.lattice, A);
                bool ok = true;
                std::vector<char> hit(psi.size(), 0);
                for (std::uint32_t i = 0; i < psi.size() && ok; ++i) {
                    ok = !hit[psi[i]] && psi[SP.next[i]] == SQ.next[psi[i]];
                    hit[psi[i]] = 1;
                }
                auto partQ = SQ.orbits();
                auto keysQ = orbit_keys(summarize(partQ, SQ.ddeg));
                auto induced = ok ? induced_orbit_map(partP, partQ, psi) : std::nullopt;
                ok = ok && induced && valid_matching(keysP, keysQ, *induced) && match_orbits(keysP, keysQ).has_value();
                if (!ok) failures.push_back({{"poset", poset_to_json(P)}, {"subset", popcount(A)}});
            }
        }
    Verdict v;
    v.values = {{"n_max", n_max}, {"posets", posets}, {"pairs", pairs}, {"failures", failures}};
    v.holds = failures.empty();
    return v;
}

// Orbit matching at pp:ell for every dualization pair among connected posets on n elements.
inline Verdict check_dualization_pp(int n, int ell)
{
    long pairs = 0;
    json failures = json::array();
    for (auto& P : connected_posets(n)) {
        std::optional<std::vector<OrbitKey>> kp;
        for (Mask A : autonomous_subsets(P)) {
            if (popcount(A) < 2) continue;
            if (!kp) kp = orbit_keys(orbit_data(P, ell).summary);
            ++pairs;
            Poset Q = dualize_autonomous(P, A);
            auto kq = orbit_keys(orbit_data(Q, ell).summary);
            if (!match_orbits(*kp, kq)) failures.push_back({{"poset", poset_to_json(P)}, {"subset", popcount(A)}});
        }
    }
    Verdict v;
    v.values = {{"n", n}, {"level", level_name(ell)}, {"pairs", pairs}, {"failures", failures}};
    v.holds = failures.empty();
    return v;
}

// Campaigns

struct Step {
    std::string kind;
    json subject;
    bool expect_pass = true;
    std::function<Verdict()> run;
};

inline std::string status_of(bool expect_pass, const std::string& verdict)
{
    if (verdict == "error") return "FAIL";
    bool holds = verdict == "pass";
    if (expect_pass) return holds ? "pass" : "FAIL";
    return holds ? "FAIL" : "expected-negative: pass";
}

inline std::vector<Step> desk_scale_steps(std::uint64_t seed)
{
    std::vector<Step> steps;
    auto add = [&](std::string kind, json subject, bool expect, std::function<Verdict()> f) {
        steps.push_back({std::move(kind), std::move(subject), expect, std::move(f)});
    };
    auto pair_subject = [](const FamilySpec& p, const FamilySpec& q) { return json{to_string(p), to_string(q)}; };

    for (int a = 1; a < 10; ++a)
        for (int b = a; a + b <= 10; ++b)
            add("row_order", to_string(rectangle(a, b)), true, [a, b] { return check_row_order(make(rectangle(a, b)), a + b); });

    std::vector<FamilySpec> minuscule16, roots;
    for (int a = 1; a <= 16; ++a)
        for (int b = a; a * b <= 16; ++b) minuscule16.push_back(rectangle(a, b));
    for (int n = 2; n * (n - 1) / 2 <= 16; ++n) minuscule16.push_back(shifted_staircase(n));
    for (int n = 2; 2 * n <= 16; ++n) minuscule16.push_back(propeller(n));
    minuscule16.push_back(cayley_plane());
    for (int n = 1; n <= 5; ++n) roots.push_back(root_poset('A', n));
    for (int n = 2; n <= 4; ++n) roots.push_back(root_poset('B', n));
    roots.push_back(root_poset('H', 3));
    for (int m = 2; m <= 8; ++m) roots.push_back(root_poset('I', m));

    for (auto& s : minuscule16) add("tcde", to_string(s), true, [s] { return check_tcde(make(s)); });
    for (auto& s : roots) add("tcde", to_string(s), true, [s] { return check_tcde(make(s)); });
    add("tcde", "trap:2,5", false, [] { return check_tcde(make("trap:2,5")); });
    add("tcde", "root:D4", false, [] { return check_tcde(make("root:D4")); });

    for (auto& d : doppelganger_pairs(8, 4))
        add("mcde_pair", pair_subject(d.p, d.q), true, [d] { return check_mcde_pair(make(d.p), make(d.q)); });

    for (auto& d : doppelganger_pairs(8, 4)) {
        bool all_levels = (d.p.a == 3 && (d.p.a + d.p.b == 7 || d.p.a + d.p.b == 8)) ||
                     (d.p.a == 4 && d.p.a + d.p.b == 8) || d.p.family != Family::rectangle;
        std::vector<int> ells = all_levels ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{1};
        add("ddeg_gf_pair", pair_subject(d.p, d.q), true, [d, ells] { return check_ddeg_gf_pair(make(d.p), make(d.q), ells); });
    }
    add("ddeg_gf_pair", json{"ex6p", "ex6q"}, false, [] { return check_ddeg_gf_pair(make("ex6p"), make("ex6q"), {1}); });

    for (auto& d : doppelganger_pairs(8, 0))
        add("setvalued_pair", pair_subject(d.p, d.q), true, [d] { return check_setvalued_pair(make(d.p), make(d.q), {2, 3}); });
    add("setvalued_pair", json{"ex6p", "ex6q"}, false, [] { return check_setvalued_pair(make("ex6p"), make("ex6q"), {1}); });

    for (auto& s : minuscule16) add("csp", {to_string(s), "comb"}, true, [s] { return check_csp(s, 0); });
    for (int n = 1; n <= 5; ++n) add("csp", {to_string(root_poset('A', n)), "comb"}, true, [n] { return check_csp(root_poset('A', n), 0); });
    for (int n = 2; n <= 4; ++n) add("csp", {to_string(root_poset('B', n)), "comb"}, true, [n] { return check_csp(root_poset('B', n), 0); });
    add("csp", {"root:H3", "comb"}, true, [] { return check_csp(root_poset('H', 3), 0); });
    for (int m = 2; m <= 6; ++m) add("csp", {to_string(root_poset('I', m)), "comb"}, true, [m] { return check_csp(root_poset('I', m), 0); });

    std::vector<FamilySpec> pp_csp;
    for (int n = 2; n <= 7; ++n) pp_csp.push_back(shifted_staircase(n));
    for (int n = 2; n <= 6; ++n) pp_csp.push_back(propeller(n));
    pp_csp.push_back(cayley_plane());
    pp_csp.push_back(freudenthal());
    for (int n = 1; n <= 5; ++n) pp_csp.push_back(root_poset('A', n));
    for (int n = 2; n <= 4; ++n) pp_csp.push_back(root_poset('B', n));
    pp_csp.push_back(root_poset('H', 3));
    for (int m = 3; m <= 6; ++m) pp_csp.push_back(root_poset('I', m));
    for (auto& s : pp_csp)
        for (int ell : {2, 3, 4}) add("csp", {to_string(s), level_name(ell)}, true, [s, ell] { return check_csp(s, ell); });

    std::vector<FamilySpec> homo;
    for (int a = 1; a <= 4; ++a)
        for (int b = a; a + b <= 8; ++b) homo.push_back(rectangle(a, b));
    for (int n = 2; n <= 7; ++n) homo.push_back(shifted_staircase(n));
    for (int n = 2; n <= 6; ++n) homo.push_back(propeller(n));
    homo.push_back(cayley_plane());
    homo.push_back(freudenthal());
    for (int n = 1; n <= 5; ++n) homo.push_back(root_poset('A', n));
    for (int n = 2; n <= 4; ++n) homo.push_back(root_poset('B', n));
    homo.push_back(root_poset('H', 3));
    for (int m = 2; m <= 8; ++m) homo.push_back(root_poset('I', m));
    for (auto& s : homo)
        for (int ell : {0, 1, 2, 3, 4})
            add("homomesy", {to_string(s), level_name(ell)}, true,
                [s, ell] { return check_homomesy(make(s), ell, ell == 0 ? coxeter_number(s) : 0); });
    add("homomesy", {"root:D4", "pp:2"}, false, [] { return check_homomesy(make("root:D4"), 2); });
    add("orbit_length", {"root:D4", "pp:2", 54}, true, [] { return check_orbit_length_present(make("root:D4"), 2, 54); });

    std::vector<FamilySpec> bir;
    for (int a = 1; a <= 12; ++a)
        for (int b = a; a * b <= 12; ++b) bir.push_back(rectangle(a, b));
    for (int n = 2; n <= 5; ++n) bir.push_back(shifted_staircase(n));
    for (int n = 2; n <= 6; ++n) bir.push_back(propeller(n));
    for (int n = 1; n <= 4; ++n) bir.push_back(root_poset('A', n));
    for (int n = 2; n <= 3; ++n) bir.push_back(root_poset('B', n));
    bir.push_back(root_poset('H', 3));
    for (int m = 2; m <= 8; ++m) bir.push_back(root_poset('I', m));
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; 2 * k <= n; ++k) bir.push_back(trapezoid(k, n));
    for (auto& s : bir) add("birational", to_string(s), true, [s, seed] { return check_birational(s, 3, seed); });
    add("birational", "root:D4", false, [seed] { return check_birational(root_poset('D', 4), 3, seed); });

    for (int n = 7; n <= 10; ++n)
        for (int k = 3; 2 * k < n; ++k)
            add("orbit_matching", {to_string(grassmannian(k, n)), to_string(trapezoid(k, n)), "comb"}, true,
                [k, n] { return check_orbit_matching(make(grassmannian(k, n)), make(trapezoid(k, n)), 0); });
    for (auto& d : doppelganger_pairs(8, 8))
        for (int ell : {2, 3, 4})
            add("orbit_matching", {to_string(d.p), to_string(d.q), level_name(ell)}, true,
                [d, ell] { return check_orbit_matching(make(d.p), make(d.q), ell); });
    add("dualization", 8, true, [] { return check_dualization_bijections(8); });
    return steps;
}

inline std::vector<Step> suite_steps(const std::string& suite, std::uint64_t seed)
{
    if (suite == "paper-desk-scale") return desk_scale_steps(seed);
    if (suite == "empty") return {};
    throw std::invalid_argument("unknown suite: " + suite);
}

// Runs every step (in parallel when jobs > 1) and writes one JSON line per step in step order.
// Returns true when every step has status pass or expected-negative: pass.
inline bool run_campaign(const std::string& suite, std::uint64_t seed, int jobs, std::ostream& out,
                         bool timing = false, std::ostream* progress = nullptr)
{
    auto steps = suite_steps(suite, seed);
    std::vector<json> records(steps.size());
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < steps.size();) {
            auto t0 = std::chrono::steady_clock::now();
            json rec = {{"suite", suite},
                        {"step", i},
                        {"kind", steps[i].kind},
                        {"subject", steps[i].subject},
                        {"expect", steps[i].expect_pass ? "pass" : "fail"},
                        {"seed", seed},
                        {"version", version}};
            try {
                Verdict v = steps[i].run();
                rec["verdict"] = v.holds ? "pass" : "fail";
                rec["values"] = std::move(v.values);
            } catch (const std::exception& e) {
                rec["verdict"] = "error";
                rec["error"] = e.what();
            }
            rec["status"] = status_of(steps[i].expect_pass, rec["verdict"]);
            if (timing) rec["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (progress) {
                std::lock_guard<std::mutex> lock(mu);
                *progress << rec["status"].get<std::string>() << "  " << rec["kind"].get<std::string>() << " "
                          << rec["subject"].dump() << "\n";
            }
            records[i] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < std::max(jobs, 1); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    bool ok = true;
    for (auto& r : records) {
        out << r.dump() << "\n";
        ok = ok && r["status"] != "FAIL";
    }
    return ok;
}

// Recomputes a record's verdict from its embedded values. Certificates are revalidated on J(P),
// which only needs the ideal lattice.
inline bool reverify_holds(const json& rec)
{
    const std::string kind = rec.at("kind");
    const json& v = rec.at("values");
    auto same_polys = [&] {
        for (auto& [ell, pq] : v.items())
            if (poly_from_json(pq.at("p")) != poly_from_json(pq.at("q"))) return false;
        return true;
    };
    if (kind == "row_order") return v.at("order").get<std::string>() == std::to_string(v.at("expected").get<long>());
    if (kind == "tcde") {
        if (!v.contains("certificate")) return false;
        Poset P = make(rec.at("subject").get<std::string>());
        IdealLattice L(P);
        ToggleCertificate c{std::vector<Rational>(P.size()), parse_rational(v.at("delta"))};
        for (auto& [label, val] : v.at("certificate").items()) c.c[P.index_of(label)] = parse_rational(val);
        return validate_certificate(L, c);
    }
    if (kind == "mcde_pair") {
        auto d = v.at("density");
        return v.at("mcde")[0].get<bool>() && v.at("mcde")[1].get<bool>() && d[0] == v.at("expected_density") &&
               d[1] == v.at("expected_density");
    }
    if (kind == "ddeg_gf_pair" || kind == "setvalued_pair") return same_polys();
    if (kind == "orbit_matching") {
        if (v.at("p") != v.at("q")) return false;
        if (!v.contains("witness")) return true;
        auto keys = [](const json& j) {
            std::vector<OrbitKey> k;
            for (auto& x : j) k.emplace_back(x[0].get<std::size_t>(), x[1].get<long long>());
            return k;
        };
        auto& w = v.at("witness");
        return valid_matching(keys(w.at("p_keys")), keys(w.at("q_keys")), w.at("map").get<std::vector<std::size_t>>());
    }
    if (kind == "csp") {
        BigInt states = parse_bigint(v.at("states"));
        if (BigInt(v.at("N").get<int>()) % parse_bigint(v.at("order")) != 0) return false;
        if (poly_from_json(v.at("poly")).sum_of_coeffs() != states) return false;
        for (auto& row : v.at("table"))
            if (row.at("fixed") != row.at("value")) return false;
        return true;
    }
    if (kind == "homomesy") {
        Rational target = parse_rational(v.at("ddeg_target"));
        for (auto& o : v.at("orbits"))
            if (Rational(o[1].get<long long>(), o[0].get<long long>()) != target) return false;
        if (!v.at("toggle_nonzero").empty()) return false;
        return !v.contains("antichain_ok") || v.at("antichain_ok").get<bool>();
    }
    if (kind == "orbit_length") {
        for (auto& l : v.at("lengths"))
            if (l[0] == v.at("wanted")) return true;
        return false;
    }
    if (kind == "birational") {
        long target = v.at("expected").at("value");
        bool equals = v.at("expected").at("relation") == "equals";
        long k = v.at("exponent");
        for (auto& run : v.at("runs")) {
            if (run.at("order").is_null()) return false;
            long order = run.at("order");
            if (equals ? order != target : target % order != 0) return false;
            Rational ratio = parse_rational(run.at("omega")) / parse_rational(run.at("alpha"));
            for (auto& t : run.at("trials")) {
                if (t.at("period") != run.at("order")) return false;
                if (!t.contains("ddeg_product")) continue;
                if (!t.at("identities_ok").get<bool>()) return false;
                Rational e = parse_rational(v.at("delta")) * k * t.at("period").get<long>();
                if (rpow(parse_rational(t.at("ddeg_product")), k) != rpow(ratio, numer(e).convert_to<long long>()))
                    return false;
            }
        }
        return true;
    }
    if (kind == "dualization") return v.at("failures").empty() && v.at("pairs").get<long>() > 0;
    throw std::invalid_argument("unknown record kind: " + kind);
}

struct VerifySummary {
    std::size_t records = 0, consistent = 0, passing = 0;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty() && records == consistent && records == passing; }
};

inline VerifySummary verify_report(std::istream& in)
{
    VerifySummary s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++s.records;
        json rec = json::parse(line);
        std::string where = rec.value("kind", "?") + " " + rec.value("subject", json()).dump();
        try {
            if (rec.at("verdict") == "error") {
                s.problems.push_back(where + ": recorded error");
                continue;
            }
            bool holds = reverify_holds(rec);
            if ((holds ? "pass" : "fail") != rec.at("verdict").get<std::string>()) {
                s.problems.push_back(where + ": verdict does not match embedded values");
                continue;
            }
            ++s.consistent;
            if (status_of(rec.at("expect") == "pass", rec.at("verdict")) != "FAIL") ++s.passing;
            else s.problems.push_back(where + ": status FAIL");
        } catch (const std::exception& e) {
            s.problems.push_back(where + ": " + e.what());
        }
    }
    return s;
}

} // namespace posetdyn
