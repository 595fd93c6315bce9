#pragma once

#include "posetdyn/families.hpp"
#include "posetdyn/rowmotion.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace posetdyn {

inline IntPolynomial one_minus_q_to(long a) { return IntPolynomial::constant(1) - IntPolynomial::monomial(1, a); }

// prod (1 - q^a) / prod (1 - q^b), asserted to be a polynomial
inline IntPolynomial q_rational_product(const std::vector<long>& numerator, const std::vector<long>& denominator,
                                        bool require_nonnegative = false)
{
    IntPolynomial r = IntPolynomial::constant(1);
    std::vector<long> num = numerator, den = denominator;
    std::sort(num.begin(), num.end());
    std::sort(den.begin(), den.end());
    // cancel common factors first to keep intermediate degrees down
    std::vector<long> n2, d2;
    std::set_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(n2));
    std::set_difference(den.begin(), den.end(), num.begin(), num.end(), std::back_inserter(d2));
    for (long a : n2) {
        if (a <= 0) throw std::invalid_argument("q_rational_product: exponents must be positive");
        r *= one_minus_q_to(a);
    }
    for (long b : d2) {
        if (b <= 0) throw std::invalid_argument("q_rational_product: exponents must be positive");
        r = r.exact_div(one_minus_q_to(b));
    }
    if (require_nonnegative && !nonnegative(r)) throw std::domain_error("q_rational_product: negative coefficient");
    return r;
}

inline IntPolynomial cyclotomic_polynomial(int d)
{
    static std::map<int, IntPolynomial> memo;
    static std::mutex mu;
    if (d < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(d); it != memo.end()) return it->second;
    }
    IntPolynomial r = IntPolynomial::monomial(1, d) - IntPolynomial::constant(1);
    for (int e = 1; e < d; ++e)
        if (d % e == 0) r = r.exact_div(cyclotomic_polynomial(e));
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(d, r);
    return r;
}

// X(zeta^k) for zeta a primitive N-th root of unity, as a residue modulo Phi_d with d = N / gcd(N, k).
struct CyclotomicValue {
    int order = 1;
    IntPolynomial residue;

    bool is_integer() const { return residue.degree() <= 0; }
    BigInt integer() const
    {
        if (!is_integer()) throw std::domain_error("value at root of unity is not an integer");
        return residue[0];
    }
    std::string str() const { return is_integer() ? to_string(residue[0]) : "[" + pretty(residue, "z") + "]"; }
};

inline CyclotomicValue eval_at_root_of_unity(const IntPolynomial& X, int N, int k)
{
    if (N < 1 || k < 0 || k >= N) throw std::invalid_argument("eval_at_root_of_unity: need N >= 1 and 0 <= k < N");
    int d = N / std::gcd(N, k);
    return {d, X % cyclotomic_polynomial(d)};
}

struct CspRow {
    int k = 0;
    BigInt fixed;
    CyclotomicValue value;
    bool ok = false;
};

struct CspResult {
    int N = 0;
    BigInt order;
    std::vector<CspRow> rows;
    bool ok() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const CspRow& r) { return r.ok; });
    }
};

// The operator is given by its orbits; its order must divide N.
inline CspResult csp_check(const OrbitPartition& orbits, int N, const IntPolynomial& X)
{
    CspResult res{N, orbits.order(), {}};
    if (N < 1 || BigInt(N) % res.order != 0)
        throw std::domain_error("csp_check: operator order " + to_string(res.order) + " does not divide " +
                                std::to_string(N));
    std::map<std::size_t, std::size_t> by_length;
    for (auto& o : orbits.orbits) by_length[o.size()] += o.size();
    for (int k = 0; k < N; ++k) {
        BigInt fixed = 0;
        for (auto [len, total] : by_length)
            if (k % static_cast<long>(len) == 0) fixed += total;
        CyclotomicValue v = eval_at_root_of_unity(X, N, k);
        bool ok = v.is_integer() && v.integer() == fixed;
        res.rows.push_back({k, fixed, v, ok});
    }
    return res;
}

// Size generating function of PP^ell for a minuscule poset: prod over p of
// (1 - q^{ell + r(p) + 1}) / (1 - q^{r(p) + 1}).
inline IntPolynomial minuscule_size_gf(const Poset& P, int ell)
{
    if (!P.graded()) throw std::invalid_argument("minuscule_size_gf: poset is not graded");
    std::vector<long> num, den;
    for (int p = 0; p < P.size(); ++p) {
        num.push_back(ell + P.rank(p) + 1);
        den.push_back(P.rank(p) + 1);
    }
    return q_rational_product(num, den, true);
}

// MacMahon's box formula for [a] x [b]
inline IntPolynomial macmahon(int a, int b, int ell)
{
    std::vector<long> num, den;
    for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= b; ++j) {
            num.push_back(ell + i + j - 1);
            den.push_back(i + j - 1);
        }
    return q_rational_product(num, den, true);
}

inline IntPolynomial multi_catalan(const std::vector<int>& degrees, int h, int ell)
{
    std::vector<long> num, den;
    for (int j = 0; j < ell; ++j)
        for (int d : degrees) {
            num.push_back(h + d + 2 * j);
            den.push_back(d + 2 * j);
        }
    return q_rational_product(num, den, true);
}

inline IntPolynomial q_catalan(const std::vector<int>& degrees, int h) { return multi_catalan(degrees, h, 1); }

struct SievingData {
    IntPolynomial X;
    int N = 0;
    std::string name;
};

// The standard sieving polynomial for a family at height ell (ell = 1 is J(P)).
inline SievingData sieving_polynomial(const FamilySpec& s, int ell)
{
    if (is_minuscule(s)) {
        Poset P = make(s);
        return {minuscule_size_gf(P, ell), coxeter_number(s), "F(P," + std::to_string(ell) + ")"};
    }
    if (s.family == Family::root && is_coincidental_root(s)) {
        int h = coxeter_number(s);
        return {multi_catalan(degrees(s), h, ell), 2 * h, "Cat(" + to_string(s) + "," + std::to_string(ell) + ")"};
    }
    throw std::invalid_argument("no sieving polynomial known for " + to_string(s));
}

} // namespace posetdyn
