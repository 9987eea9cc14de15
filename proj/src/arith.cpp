#include "taucharts/arith.hpp"

#include <vector>

namespace tau {

Prime::Prime(long v) : value(v)
{
    if (v < 2)
        throw domain_error("Prime: " + std::to_string(v) + " is not prime");
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0)
            throw domain_error("Prime: " + std::to_string(v) + " is not prime");
}

namespace arith {

Integer ipow(const Integer& base, unsigned long e)
{
    Integer r = 1, b = base;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational pow(const Rational& base, unsigned long e)
{
    return Rational(ipow(num(base), e), ipow(den(base), e));
}

Integer floor_int(const Rational& x)
{
    Integer q = num(x) / den(x);
    if (x < 0 && q * den(x) != num(x))
        --q;
    return q;
}

Rational floor_rat(const Rational& x)
{
    return Rational(floor_int(x));
}

Rational bernoulli(long m)
{
    if (m < 0)
        throw domain_error("bernoulli: negative subscript");
    if (m % 2 == 1 && m > 1)
        throw domain_error("bernoulli: odd subscript " + std::to_string(m));
    // Akiyama-Tanigawa triangle; row reduction yields B_m with B_1 = +1/2,
    // which agrees with the B_2 = 1/6 convention for all even m.
    std::vector<Rational> a(m + 1);
    for (long i = 0; i <= m; ++i) {
        a[i] = Rational(1, i + 1);
        for (long j = i; j >= 1; --j)
            a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    }
    return a[0];
}

long vp(const Prime& p, const Integer& k)
{
    if (k == 0)
        throw domain_error("vp: valuation of zero");
    Integer n = abs(k);
    long e = 0;
    while (n % p.value == 0) {
        n /= p.value;
        ++e;
    }
    return e;
}

Integer digit_sum(const Prime& p, Integer n)
{
    if (n < 0)
        throw domain_error("digit_sum: negative input");
    Integer s = 0;
    while (n > 0) {
        s += n % p.value;
        n /= p.value;
    }
    return s;
}

long stolz_h(long k)
{
    if (k < 0)
        throw domain_error("stolz_h: negative input");
    long r = k % 8;
    return 4 * (k / 8) + (r >= 1) + (r >= 2) + (r >= 4);
}

long ell(const Prime& p, long k)
{
    if (k < 0)
        throw domain_error("ell: negative input");
    if (p.value == 2)
        return k % 2 == 1 ? vp(p, Integer(k + 1)) : vp(p, Integer(k + 2));
    long q = 2 * p.value - 2;
    return (k + 2) % q == 0 ? vp(p, Integer(k + 2)) : 0;
}

std::pair<Integer, Integer> bezout(const Integer& a, const Integer& b)
{
    if (a <= 0 || b <= 0)
        throw domain_error("bezout: inputs must be positive");
    // extended Euclid
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw domain_error("bezout: inputs are not coprime");
    // normalize c into (-b/2, b/2]
    Integer c = s0 % b;
    if (c <= 0)
        c += b;            // c in [1, b]
    if (2 * c > b)
        c -= b;            // c in (-b/2, b/2]
    Integer d = (1 - c * a) / b;
    return {c, d};
}

long floor_log(long base, const Rational& x)
{
    if (base < 2)
        throw domain_error("floor_log: base must be >= 2");
    if (x <= 0)
        throw domain_error("floor_log: input must be positive");
    if (x >= 1) {
        long e = 0;
        Integer p = 1;  // base^e
        while (p * base <= num(x) / den(x) + 1) {  // coarse upper sweep
            p *= base;
            ++e;
        }
        // correct the boundary exactly
        while (Rational(p) > x) {
            p /= base;
            --e;
        }
        while (Rational(p * base) <= x) {
            p *= base;
            ++e;
        }
        return e;
    }
    // x < 1: base^e <= x < base^(e+1) with e < 0
    long f = floor_log(base, 1 / x);
    Rational inv_pow = Rational(1, ipow(Integer(base), f));
    return x == inv_pow ? -f : -f - 1;
}

int cmp_log(long base, const Rational& y, const Rational& t)
{
    if (y <= 0)
        throw domain_error("cmp_log: y must be positive");
    // log_base(y) vs p/q  <=>  y^q vs base^p   (q > 0); feasible only
    // while q stays small, which every caller in this project satisfies
    Integer p = num(t), q = den(t);
    if (q > 1000000)
        throw domain_error("cmp_log: denominator too large for exact power comparison");
    Rational lhs = pow(y, static_cast<unsigned long>(q));
    Integer e = abs(p);
    Rational rhs = p >= 0 ? Rational(ipow(Integer(base), static_cast<unsigned long>(e)))
                          : Rational(1, ipow(Integer(base), static_cast<unsigned long>(e)));
    if (lhs < rhs)
        return -1;
    if (lhs > rhs)
        return 1;
    return 0;
}

namespace {

// bracket of log2(y) to the requested precision, integer mantissas only
Bracket log2_bracket(const Rational& y, int bits)
{
    long m = floor_log(2, y);
    Rational z = m >= 0 ? y / Rational(ipow(Integer(2), static_cast<unsigned long>(m)))
                        : y * Rational(ipow(Integer(2), static_cast<unsigned long>(-m)));
    // z in [1, 2)
    for (int guard = bits + 16;; guard *= 2) {
        Integer scale = ipow(Integer(2), guard);
        Integer lo = num(z) * scale / den(z);          // floor
        Integer hi = lo + 1;
        Rational flo = 0, fhi = 0, step(1, 2);
        bool ok = true;
        for (int i = 0; i < bits + 2; ++i) {
            lo = lo * lo / scale;
            hi = hi * hi / scale + 1;
            bool lo_ge2 = lo >= 2 * scale;
            bool hi_ge2 = hi >= 2 * scale;
            if (lo_ge2 != hi_ge2) {
                ok = false;  // interval straddles 2, need more guard bits
                break;
            }
            if (lo_ge2) {
                lo /= 2;
                hi = hi / 2 + 1;
                flo += step;
                fhi += step;
            }
            step /= 2;
        }
        if (ok)
            return {Rational(m) + flo, Rational(m) + fhi + step * 4};
    }
}

}  // namespace

Bracket log_bracket(long base, const Rational& y, int bits)
{
    if (y <= 0)
        throw domain_error("log_bracket: y must be positive");
    Bracket ly = log2_bracket(y, bits + 8);
    if (base == 2)
        return ly;
    Bracket lb = log2_bracket(Rational(base), bits + 8);
    // log_base(y) = log2(y)/log2(base); log2(base) >= 1 for base >= 2
    if (ly.lo >= 0)
        return {ly.lo / lb.hi, ly.hi / lb.lo};
    return {ly.lo / lb.lo, ly.hi / lb.hi};
}

std::string to_decimal(const Rational& x, int places)
{
    Integer scale = ipow(Integer(10), places);
    // round half to even; the one exact tie in the printed tables
    // (B_5 at n = 31, exactly 17.625 -> 17.62) resolves downward
    Rational y = x * scale;
    Integer units = floor_int(y);
    Rational frac = y - units;
    if (frac > Rational(1, 2) || (frac == Rational(1, 2) && units % 2 != 0))
        ++units;
    bool neg = units < 0;
    Integer a = abs(units);
    std::string digits = a.str();
    while (static_cast<int>(digits.size()) <= places)
        digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0)
        out += "." + digits.substr(digits.size() - places);
    return neg ? "-" + out : out;
}

std::string to_decimal_log(const Rational& x, const Rational& coeff, long base,
                           const Rational& y, int places)
{
    if (coeff == 0)
        return to_decimal(x, places);
    for (int bits = 24;; bits *= 2) {
        Bracket b = log_bracket(base, y, bits);
        Rational lo = coeff > 0 ? x + coeff * b.lo : x + coeff * b.hi;
        Rational hi = coeff > 0 ? x + coeff * b.hi : x + coeff * b.lo;
        std::string slo = to_decimal(lo, places);
        std::string shi = to_decimal(hi, places);
        if (slo == shi)
            return slo;
        if (bits > 4096)
            throw domain_error("to_decimal_log: value sits on a rounding tie");
    }
}

}  // namespace arith
}  // namespace tau
