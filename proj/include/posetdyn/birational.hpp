#pragma once

#include "posetdyn/cde.hpp"
#include "posetdyn/families.hpp"
#include "posetdyn/rowmotion.hpp"

#include <random>

namespace posetdyn {

struct BirationalParams {
    Rational alpha = 1, omega = 1;
};

// sum of values covered by p, or alpha at minimal elements
inline Rational bi_below(const Poset& P, const RationalVector& f, int p, const BirationalParams& bp)
{
    if (!P.lower_covers(p)) return bp.alpha;
    Rational s = 0;
    for_each_bit(P.lower_covers(p), [&](int q) { s += f[q]; });
    return s;
}

// sum of reciprocals of values covering p, or 1/omega at maximal elements
inline Rational bi_above(const Poset& P, const RationalVector& f, int p, const BirationalParams& bp)
{
    if (!P.upper_covers(p)) return 1 / bp.omega;
    Rational s = 0;
    for_each_bit(P.upper_covers(p), [&](int q) { s += 1 / f[q]; });
    return s;
}

inline void birational_toggle(const Poset& P, RationalVector& f, int p, const BirationalParams& bp)
{
    Rational v = bi_below(P, f, p, bp) / (f[p] * bi_above(P, f, p, bp));
    f[p] = v;
}

inline RationalVector birational_rowmotion(const Poset& P, RationalVector f, const BirationalParams& bp)
{
    for (int p = P.size() - 1; p >= 0; --p) birational_toggle(P, f, p, bp);
    return f;
}

struct BiToggleability {
    Rational plus, minus;
};

inline BiToggleability birational_toggleability(const Poset& P, const RationalVector& f, int p,
                                                const BirationalParams& bp)
{
    Rational plus = f[p] / bi_below(P, f, p, bp);
    Rational minus = 1 / (f[p] * bi_above(P, f, p, bp));
    return {plus, minus};
}

inline Rational birational_ddeg(const Poset& P, const RationalVector& f, const BirationalParams& bp)
{
    Rational r = 1;
    for (int p = 0; p < P.size(); ++p) r *= birational_toggleability(P, f, p, bp).minus;
    return r;
}

inline std::size_t max_bit_size(const RationalVector& f)
{
    std::size_t b = 0;
    for (auto& x : f) b = std::max({b, bit_size(numer(x)), bit_size(denom(x))});
    return b;
}

// numerators and denominators uniform in [1, 2^16]
inline RationalVector random_positive_labeling(const Poset& P, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> d(1, 1L << 16);
    RationalVector f;
    for (int p = 0; p < P.size(); ++p) {
        long a = d(rng), b = d(rng);
        f.emplace_back(a, b);
    }
    return f;
}

inline constexpr std::size_t default_bit_cap = 1 << 15;

struct BirationalOrbit {
    RationalVector seed;
    std::optional<std::size_t> period;
    std::vector<std::size_t> bit_growth; // max bit size after each step
    bool bit_cap_hit = false;
};

// Iterates until the seed returns, the step cap is reached, or coefficients pass bit_cap bits.
inline BirationalOrbit birational_orbit(const Poset& P, const RationalVector& seed, const BirationalParams& bp,
                                        std::size_t cap, std::size_t bit_cap = default_bit_cap)
{
    BirationalOrbit o{seed, std::nullopt, {}, false};
    RationalVector g = seed;
    for (std::size_t k = 1; k <= cap; ++k) {
        g = birational_rowmotion(P, std::move(g), bp);
        o.bit_growth.push_back(max_bit_size(g));
        if (o.bit_growth.back() > bit_cap) {
            o.bit_cap_hit = true;
            break;
        }
        if (g == seed) {
            o.period = k;
            break;
        }
    }
    return o;
}

struct OrderReport {
    std::uint64_t seed = 0;
    std::size_t cap = 0;
    std::vector<BirationalOrbit> trials;
    std::optional<std::size_t> order; // common period when all trials agree
    std::string diagnosis;
};

inline OrderReport detect_order(const Poset& P, int trials, std::size_t cap, std::uint64_t seed,
                                const BirationalParams& bp = {}, std::size_t bit_cap = default_bit_cap)
{
    if (trials < 1 || cap < 1) throw std::invalid_argument("detect_order: trials and cap must be positive");
    OrderReport rep{seed, cap, {}, std::nullopt, ""};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) rep.trials.push_back(birational_orbit(P, random_positive_labeling(P, rng), bp, cap, bit_cap));
    bool all_finite = true;
    std::set<std::size_t> periods;
    for (auto& o : rep.trials) {
        if (o.period) periods.insert(*o.period);
        else all_finite = false;
    }
    if (all_finite && periods.size() == 1) {
        rep.order = *periods.begin();
        rep.diagnosis = "finite";
    } else if (all_finite) {
        rep.diagnosis = "seeds disagree";
    } else {
        // steady growth of coefficient size means the orbit is not closing up
        const auto& o = *std::find_if(rep.trials.begin(), rep.trials.end(), [](auto& t) { return !t.period; });
        std::size_t first = max_bit_size(o.seed), last = o.bit_growth.back();
        if (o.bit_cap_hit) rep.diagnosis = "bit cap exceeded: probably infinite order";
        else if (last > 4 * std::max<std::size_t>(first, 1)) rep.diagnosis = "cap exceeded, bit size growing: probably infinite order";
        else rep.diagnosis = "cap exceeded, bit size bounded: cap may be too small";
    }
    return rep;
}

// Smallest k such that k * delta is an integer and (r+2) divides k.
inline long homomesy_exponent(const Poset& P, const Rational& delta)
{
    long r2 = P.rank() + 2;
    Rational x = delta * r2;
    return r2 * denom(x).convert_to<long>();
}

struct BirationalCheck {
    bool ok = true;
    std::string failure;
};

// Along one finite orbit: prod of ddeg^B raised to k equals (omega/alpha)^{k delta #O}.
inline BirationalCheck check_orbit_product(const Poset& P, const std::vector<RationalVector>& orbit,
                                           const Rational& delta, const BirationalParams& bp)
{
    Rational prod = 1;
    for (auto& f : orbit) prod *= birational_ddeg(P, f, bp);
    long k = homomesy_exponent(P, delta);
    Rational rhs_exp = delta * k * static_cast<long>(orbit.size());
    Rational lhs = rpow(prod, k), rhs = rpow(bp.omega / bp.alpha, numer(rhs_exp).convert_to<long long>());
    if (lhs != rhs) return {false, "orbit product " + to_string(prod) + " fails"};
    return {};
}

// prod_p (T+)^{c_p} (T-)^{1-c_p} = (omega/alpha)^delta, with exponents cleared
inline BirationalCheck check_lifted_certificate(const Poset& P, const RationalVector& f, const ToggleCertificate& cert,
                                                const BirationalParams& bp)
{
    BigInt D = cert.scale();
    Rational lhs = 1;
    for (int p = 0; p < P.size(); ++p) {
        auto t = birational_toggleability(P, f, p, bp);
        Rational a = cert.c[p] * D, b = (1 - cert.c[p]) * D;
        lhs *= rpow(t.plus, numer(a).convert_to<long long>()) * rpow(t.minus, numer(b).convert_to<long long>());
    }
    Rational rhs = rpow(bp.omega / bp.alpha, numer(cert.delta * D).convert_to<long long>());
    if (lhs != rhs) return {false, "lifted certificate fails"};
    return {};
}

inline std::vector<RationalVector> orbit_points(const Poset& P, const RationalVector& seed, std::size_t period,
                                               const BirationalParams& bp)
{
    std::vector<RationalVector> pts{seed};
    for (std::size_t k = 1; k < period; ++k) pts.push_back(birational_rowmotion(P, pts.back(), bp));
    return pts;
}

// Refined rectangle identities: for each row X_i, (prod_O prod_{X_i} T-)^{a+b} = (omega/alpha)^{b #O},
// and for each column Y_j the same with exponent a.
inline BirationalCheck check_rectangle_refined(const Poset& P, int a, int b, const std::vector<RationalVector>& orbit,
                                               const BirationalParams& bp)
{
    auto check = [&](const std::vector<int>& elems, long weight, const std::string& what) -> BirationalCheck {
        Rational prod = 1;
        for (auto& f : orbit)
            for (int p : elems) prod *= birational_toggleability(P, f, p, bp).minus;
        Rational lhs = rpow(prod, a + b), rhs = rpow(bp.omega / bp.alpha, weight * static_cast<long long>(orbit.size()));
        if (lhs != rhs) return {false, what + " identity fails"};
        return {};
    };
    for (int i = 1; i <= a; ++i) {
        std::vector<int> X;
        for (int j = 1; j <= b; ++j) X.push_back(P.index_of(detail::coord(i, j)));
        if (auto r = check(X, b, "row " + std::to_string(i)); !r.ok) return r;
    }
    for (int j = 1; j <= b; ++j) {
        std::vector<int> Y;
        for (int i = 1; i <= a; ++i) Y.push_back(P.index_of(detail::coord(i, j)));
        if (auto r = check(Y, a, "column " + std::to_string(j)); !r.ok) return r;
    }
    return {};
}

struct BirationalHomomesyReport {
    OrderReport order;
    std::vector<Rational> orbit_products; // prod of ddeg^B over each seed orbit
    bool ok = true;
    std::string failure;
};

// Runs detect_order, then checks the orbit product and the lifted certificate at every point of each orbit.
inline BirationalHomomesyReport birational_homomesy_check(const Poset& P, const ToggleCertificate& cert, int trials,
                                                          std::size_t cap, std::uint64_t seed,
                                                          const BirationalParams& bp)
{
    if (!degree_bounded(P, 2)) throw std::invalid_argument("birational homomesy check needs up and down degree at most 2");
    BirationalHomomesyReport rep{detect_order(P, trials, cap, seed, bp), {}, true, ""};
    for (auto& o : rep.order.trials) {
        if (!o.period) {
            rep.ok = false;
            rep.failure = "no finite orbit within cap";
            return rep;
        }
        auto pts = orbit_points(P, o.seed, *o.period, bp);
        Rational prod = 1;
        for (auto& f : pts) prod *= birational_ddeg(P, f, bp);
        rep.orbit_products.push_back(prod);
        if (auto r = check_orbit_product(P, pts, cert.delta, bp); !r.ok) {
            rep.ok = false;
            rep.failure = r.failure;
            return rep;
        }
        for (auto& f : pts)
            if (auto r = check_lifted_certificate(P, f, cert, bp); !r.ok) {
                rep.ok = false;
                rep.failure = r.failure;
                return rep;
            }
    }
    return rep;
}

} // namespace posetdyn
