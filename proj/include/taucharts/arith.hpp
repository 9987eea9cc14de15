#pragma once

/*
 * Exact arithmetic primitives: arbitrary-precision rationals, Bernoulli
 * numbers, p-adic valuations, digit sums, the counting function h, the
 * correction term ell, floor-logarithms and Bezout coefficients.
 *
 * No floating point anywhere.  Quantities involving log_b(y) for
 * non-power y are handled either by exact power comparison (cmp_log) or
 * by rational bracketing (log_bracket).
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tau {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A prime number, verified at construction.
struct Prime {
    explicit Prime(long v);
    long value;
    bool operator==(const Prime& rhs) const { return value == rhs.value; }
};

namespace arith {

// B_m in the convention with B_2 = 1/6 (so |B_6|/12 = 1/504).
// m is the subscript itself: bernoulli(6) = B_6 = 1/42.
// Odd m > 1 is a domain error.
Rational bernoulli(long m);

// largest e with p^e | k; k = 0 is a domain error
long vp(const Prime& p, const Integer& k);

// sum of base-p digits of n >= 0
Integer digit_sum(const Prime& p, Integer n);

// |{s : 0 < s <= k, s = 0,1,2,4 mod 8}|
long stolz_h(long k);

// the correction term ell(k), with q = 2p-2:
//   p odd:  v_p(k+2) when k+2 = 0 mod q, else 0
//   p = 2:  v_2(k+1) for k odd, v_2(k+2) for k even
long ell(const Prime& p, long k);

// c*a + d*b = 1 for coprime a, b > 0, with c normalized into (-b/2, b/2]
std::pair<Integer, Integer> bezout(const Integer& a, const Integer& b);

// floor(log_base(x)) for x > 0, by exact integer comparison of powers
long floor_log(long base, const Rational& x);

// sign of log_base(y) - t, decided exactly via y^den(t) vs base^num(t)
int cmp_log(long base, const Rational& y, const Rational& t);

// rational bracket [lo, hi] with lo <= log_base(y) <= hi and
// hi - lo <= 2^-bits
struct Bracket {
    Rational lo, hi;
};
Bracket log_bracket(long base, const Rational& y, int bits);

// x rendered with exactly `places` decimals, round half up
std::string to_decimal(const Rational& x, int places);

// decimal rendering of x + coeff*log_base(y); refines the bracket until
// the rounding is unambiguous (y must not make the total a decimal tie)
std::string to_decimal_log(const Rational& x, const Rational& coeff, long base,
                           const Rational& y, int places);

// integer powers of rationals, exponent >= 0
Rational pow(const Rational& base, unsigned long e);
Integer ipow(const Integer& base, unsigned long e);

Rational floor_rat(const Rational& x);   // floor as a Rational
Integer floor_int(const Rational& x);

}  // namespace arith
}  // namespace tau
