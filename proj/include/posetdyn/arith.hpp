#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace posetdyn {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numer(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denom(const Rational& x) { return boost::multiprecision::denominator(x); }

inline std::string to_string(const BigInt& x) { return x.str(); }

// Reports use "num/den" for every rational, integers included.
inline std::string to_string(const Rational& x)
{
    return numer(x).str() + "/" + denom(x).str();
}

inline BigInt parse_bigint(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty integer");
    return BigInt(s);
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_bigint(s));
    BigInt d = parse_bigint(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(parse_bigint(s.substr(0, slash)), d);
}

inline Rational rpow(Rational base, long long e)
{
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        base = 1 / base;
        e = -e;
    }
    Rational r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline BigInt ipow(BigInt base, unsigned e)
{
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline BigInt factorial(unsigned n)
{
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / boost::multiprecision::gcd(a, b) * b);
}

inline std::size_t bit_size(const BigInt& x)
{
    return x == 0 ? 0 : boost::multiprecision::msb(abs(x)) + 1;
}

} // namespace posetdyn
