#pragma once

#include "posetdyn/arith.hpp"

#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

namespace posetdyn {

template <class C>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<C> c) : c_(std::move(c)) { trim(); }
    static Polynomial constant(C v) { return Polynomial(std::vector<C>{std::move(v)}); }
    static Polynomial monomial(C v, std::size_t d)
    {
        std::vector<C> c(d + 1, C(0));
        c[d] = std::move(v);
        return Polynomial(std::move(c));
    }

    const std::vector<C>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    C operator[](std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
    C leading() const { return c_.empty() ? C(0) : c_.back(); }

    template <class X>
    X eval(const X& x) const
    {
        X r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + X(*it);
        return r;
    }

    C sum_of_coeffs() const
    {
        C s(0);
        for (auto& v : c_) s += v;
        return s;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator*(const C& s, Polynomial a)
    {
        for (auto& v : a.c_) v *= s;
        a.trim();
        return a;
    }
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

    // quotient and remainder; the divisor's leading coefficient must divide exactly for integer C
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const
    {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<C> r = c_;
        if (r.size() < d.c_.size()) return {Polynomial(), *this};
        std::vector<C> q(r.size() - d.c_.size() + 1, C(0));
        for (std::size_t k = q.size(); k-- > 0;) {
            C lead = r[k + d.c_.size() - 1];
            if (lead == 0) continue;
            if constexpr (std::is_same_v<C, BigInt>) {
                if (lead % d.leading() != 0) throw std::domain_error("inexact integer polynomial division");
            }
            C t = lead / d.leading();
            q[k] = t;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= t * d.c_[j];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    // exact division; throws on nonzero remainder
    Polynomial exact_div(const Polynomial& d) const
    {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::domain_error("nonzero remainder in polynomial division");
        return q;
    }

    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

    // p(q) -> p(q^k)
    Polynomial substitute_power(std::size_t k) const
    {
        if (is_zero()) return {};
        std::vector<C> r((c_.size() - 1) * k + 1, C(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return Polynomial(std::move(r));
    }

    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> s;
        for (auto& v : c_) s.push_back(to_string(v));
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<C> c_;
};

using IntPolynomial = Polynomial<BigInt>;
using RationalPolynomial = Polynomial<Rational>;

inline IntPolynomial int_poly(std::initializer_list<long long> c)
{
    std::vector<BigInt> v;
    for (auto x : c) v.emplace_back(x);
    return IntPolynomial(std::move(v));
}

inline IntPolynomial parse_int_poly(const std::vector<std::string>& c)
{
    std::vector<BigInt> v;
    for (auto& s : c) v.push_back(parse_bigint(s));
    return IntPolynomial(std::move(v));
}

inline bool nonnegative(const IntPolynomial& p)
{
    for (auto& c : p.coeffs())
        if (c < 0) return false;
    return true;
}

inline std::string pretty(const IntPolynomial& p, const std::string& var = "q")
{
    if (p.is_zero()) return "0";
    std::string s;
    for (long d = p.degree(); d >= 0; --d) {
        BigInt c = p[d];
        if (c == 0) continue;
        if (!s.empty()) s += c < 0 ? "-" : "+";
        else if (c < 0) s += "-";
        BigInt a = abs(c);
        if (a != 1 || d == 0) s += a.str();
        if (d >= 1) s += var;
        if (d >= 2) s += "^" + std::to_string(d);
    }
    return s;
}

// Unique polynomial of degree < xs.size() through the points.
inline RationalPolynomial lagrange_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation size mismatch");
    RationalPolynomial result;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        RationalPolynomial basis = RationalPolynomial::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis *= RationalPolynomial(std::vector<Rational>{-xs[j], 1});
            denom *= xs[i] - xs[j];
        }
        result += Rational(ys[i] / denom) * basis;
    }
    return result;
}

} // namespace posetdyn
