#pragma once

// Exact rational arithmetic.  Every radius, norm and valuation in this
// library is of the form p^(a/b); only the exponent a/b is ever stored or
// compared, always exactly, never as a float.  cpp_rational backs both the
// small exponent arithmetic (Rat) and coefficient-level rationals (BigRat,
// e.g. 1/40!); the two aliases just mark intent.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ltf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

/// The integer value of a rational known to be integral.
inline long long rat_to_ll(const Rat& r) {
    if (denominator(r) != 1) throw std::logic_error("rat_to_ll: not an integer");
    return numerator(r).convert_to<long long>();
}

inline std::string to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// ord_p of a nonzero integer.
inline long long int_valuation(BigInt n, long long p) {
    if (n == 0) throw std::invalid_argument("int_valuation: zero has infinite valuation");
    long long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

/// ord_p of an exact rational, or nullopt for zero.
inline std::optional<Rat> rat_valuation(const BigRat& x, long long p) {
    if (numerator(x) == 0) return std::nullopt;
    return Rat(int_valuation(numerator(x), p) - int_valuation(denominator(x), p));
}

/// ord_p(n!) by Legendre's formula.
inline long long factorial_valuation(long long n, long long p) {
    long long v = 0;
    for (BigInt q = p; q <= n; q *= p) v += n / q.convert_to<long long>();
    return v;
}

inline BigInt big_pow(BigInt base, unsigned long exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline BigInt factorial(long long n) {
    BigInt r = 1;
    for (long long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) { r *= (n - k + i); r /= i; }
    return r;
}

} // namespace ltf
