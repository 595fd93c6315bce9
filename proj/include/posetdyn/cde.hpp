#pragma once

#include "posetdyn/ppartition.hpp"

#include <optional>

namespace posetdyn {

struct Toggleability {
    int plus = 0, minus = 0;
    int value() const { return plus - minus; }
};

inline Toggleability toggleability(const Poset& P, Mask I, int p)
{
    return {can_add(P, I, p) ? 1 : 0, can_remove(P, I, p) ? 1 : 0};
}

// Probability distribution on J(P), indexed like the lattice.
struct Distribution {
    std::vector<Rational> weights;
};

inline Distribution uniform_distribution(const IdealLattice& L)
{
    return {std::vector<Rational>(L.size(), Rational(1, static_cast<long>(L.size())))};
}

// weight of I proportional to the number of maximal chains of J(P) through I
inline Distribution maxchain_distribution(const IdealLattice& L)
{
    const Poset& P = L.poset();
    std::vector<BigInt> below(L.size(), 0), above(L.size(), 0);
    below[0] = 1;
    for (std::size_t i = 1; i < L.size(); ++i)
        for_each_bit(max_of(P, L[i]), [&](int p) { below[i] += below[L.find(L[i] ^ bit(p))]; });
    above[L.size() - 1] = 1;
    for (std::size_t i = L.size() - 1; i-- > 0;)
        for_each_bit(min_of(P, P.all() & ~L[i]), [&](int p) { above[i] += above[L.find(L[i] | bit(p))]; });
    BigInt total = 0;
    std::vector<BigInt> w(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) {
        w[i] = below[i] * above[i];
        total += w[i];
    }
    Distribution d;
    for (auto& x : w) d.weights.emplace_back(x, total);
    return d;
}

// T uniform in PP^ell, i uniform in 0..ell-1, select T^{-1}{0..i}
inline Distribution mchain_distribution(const IdealLattice& L, int ell)
{
    if (ell < 1) throw std::invalid_argument("ell must be at least 1");
    const Poset& P = L.poset();
    // down[k][I]: multichains of k ideals inside I; up[k][I]: multichains of k ideals containing I
    std::vector<std::vector<BigInt>> down(ell, std::vector<BigInt>(L.size(), 1)), up = down;
    for (int k = 1; k < ell; ++k) {
        down[k] = down[k - 1];
        L.zeta(down[k]);
        up[k] = up[k - 1];
        for (int p = P.size() - 1; p >= 0; --p)
            for (auto [a, b] : L.edges(p)) up[k][b] += up[k][a];
    }
    std::vector<BigInt> w(L.size(), 0);
    BigInt total = 0;
    for (std::size_t I = 0; I < L.size(); ++I) {
        for (int i = 0; i < ell; ++i) w[I] += down[i][I] * up[ell - 1 - i][I];
        total += w[I];
    }
    Distribution d;
    for (auto& x : w) d.weights.emplace_back(x, total);
    return d;
}

inline Rational expectation(const IdealLattice& L, const Distribution& mu, const std::function<Rational(Mask)>& f)
{
    Rational s = 0;
    for (std::size_t i = 0; i < L.size(); ++i)
        if (mu.weights[i] != 0) s += mu.weights[i] * f(L[i]);
    return s;
}

inline Rational expected_ddeg(const IdealLattice& L, const Distribution& mu)
{
    const Poset& P = L.poset();
    return expectation(L, mu, [&](Mask I) { return Rational(ddeg(P, I)); });
}

// Hasse edges of J(P) per element of J(P)
inline Rational edge_density(const IdealLattice& L)
{
    return Rational(static_cast<long>(L.edge_count()), static_cast<long>(L.size()));
}

inline bool is_toggle_symmetric(const IdealLattice& L, const Distribution& mu)
{
    const Poset& P = L.poset();
    for (int p = 0; p < P.size(); ++p)
        if (expectation(L, mu, [&](Mask I) { return Rational(toggleability(P, I, p).value()); }) != 0) return false;
    return true;
}

inline bool is_cde(const IdealLattice& L)
{
    return expected_ddeg(L, maxchain_distribution(L)) == edge_density(L);
}

inline Rational mchain_expected_ddeg(const IdealLattice& L, int ell)
{
    CountSum t = ddeg_total(L, ell);
    return Rational(t.sum, t.count * ell);
}

inline bool is_mcde_upto(const IdealLattice& L, int ell_max)
{
    Rational d = edge_density(L);
    for (int ell = 1; ell <= ell_max; ++ell)
        if (mchain_expected_ddeg(L, ell) != d) return false;
    return true;
}

// Both sides of sum_T ddeg(T) = ell * delta * #PP^ell are polynomials in ell of degree
// at most #P + 1, so agreement at ell = 1..#P+2 proves it for every ell.
inline bool is_mcde(const IdealLattice& L) { return is_mcde_upto(L, L.poset().size() + 2); }

struct ToggleCertificate {
    std::vector<Rational> c;
    Rational delta;

    // smallest positive integer k making k*c and k*delta integral
    BigInt scale() const
    {
        BigInt k = denom(delta);
        for (auto& x : c) k = lcm(k, denom(x));
        return k;
    }
};

// ddeg(I) + sum_p c_p T_p(I) = delta at every I
inline bool validate_certificate(const IdealLattice& L, const ToggleCertificate& cert)
{
    const Poset& P = L.poset();
    if (static_cast<int>(cert.c.size()) != P.size()) return false;
    for (Mask I : L.ideals()) {
        Rational s = ddeg(P, I);
        for (int p = 0; p < P.size(); ++p) {
            int t = toggleability(P, I, p).value();
            if (t) s += t * cert.c[p];
        }
        if (s != cert.delta) return false;
    }
    return true;
}

// Exact solution of A x = b with integer entries by fraction-free elimination.
// Free variables are set to zero. Returns nullopt when inconsistent.
struct LinearSolution {
    std::vector<Rational> x;
    int rank = 0;
};

inline std::optional<LinearSolution> solve_integer_system(std::vector<std::vector<BigInt>> rows, int unknowns)
{
    // each row: coefficients then right-hand side
    const int n = unknowns;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    auto normalize = [](std::vector<BigInt>& row) {
        BigInt g = 0;
        for (auto& v : row) g = boost::multiprecision::gcd(g, v);
        if (g > 1)
            for (auto& v : row) v /= g;
    };
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            BigInt a = rows[r][col], b = rows[i][col];
            for (int j = 0; j <= n; ++j) rows[i][j] = a * rows[i][j] - b * rows[r][j];
            normalize(rows[i]);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][n] != 0) return std::nullopt;
    LinearSolution s{std::vector<Rational>(n, 0), static_cast<int>(r)};
    for (std::size_t i = 0; i < r; ++i) s.x[pivot_col[i]] = Rational(rows[i][n], rows[i][pivot_col[i]]);
    return s;
}

struct TcdeResult {
    std::optional<ToggleCertificate> certificate;
    int rank = 0;      // rank of the toggle system
    int unknowns = 0;
};

inline TcdeResult tcde_solve_detailed(const IdealLattice& L)
{
    const Poset& P = L.poset();
    const int n = P.size();
    Rational delta = edge_density(L);
    BigInt D = denom(delta);
    std::set<std::vector<BigInt>> uniq;
    for (Mask I : L.ideals()) {
        std::vector<BigInt> row(n + 1);
        for (int p = 0; p < n; ++p) row[p] = toggleability(P, I, p).value() * D;
        row[n] = numer(delta) - D * ddeg(P, I);
        uniq.insert(row);
    }
    TcdeResult res;
    res.unknowns = n;
    auto sol = solve_integer_system({uniq.begin(), uniq.end()}, n);
    if (!sol) return res;
    res.rank = sol->rank;
    ToggleCertificate cert{sol->x, delta};
    if (!validate_certificate(L, cert)) throw std::logic_error("solver returned an invalid certificate");
    res.certificate = cert;
    return res;
}

inline std::optional<ToggleCertificate> tcde_solve(const IdealLattice& L) { return tcde_solve_detailed(L).certificate; }

} // namespace posetdyn
