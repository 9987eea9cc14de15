#include "taucharts/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

namespace tau::bounds {

using arith::bernoulli;
using arith::bezout;
using arith::cmp_log;
using arith::ell;
using arith::floor_log;
using arith::ipow;
using arith::stolz_h;
using arith::to_decimal;
using arith::to_decimal_log;
using arith::vp;

namespace {

long threads_cap()
{
    long hw = static_cast<long>(std::thread::hardware_concurrency());
    if (hw < 1)
        hw = 1;
    if (const char* env = std::getenv("TAUCHARTS_THREADS")) {
        long v = std::atol(env);
        if (v >= 1)
            hw = std::min(hw, v);
    }
    return hw;
}

// evaluate f on 0..n-1 cell-parallel, results kept in index order
template <typename F>
auto ordered_parallel(long n, F f)
{
    using R = decltype(f(0L));
    std::vector<R> out(n);
    long cap = std::min(threads_cap(), n < 1 ? 1L : n);
    if (cap <= 1) {
        for (long i = 0; i < n; ++i)
            out[i] = f(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    std::atomic<long> next{0};
    for (long t = 0; t < cap; ++t)
        jobs.push_back(std::async(std::launch::async, [&] {
            for (long i = next++; i < n; i = next++)
                out[i] = f(i);
        }));
    for (auto& j : jobs)
        j.get();
    return out;
}

}  // namespace

KrannichConstants krannich(long m)
{
    if (m <= 2)
        throw domain_error("krannich: m must exceed 2");
    KrannichConstants k;
    k.m = m;
    Rational frac = abs(bernoulli(2 * m)) / (4 * m);
    k.j = den(frac);
    k.a = m % 2 == 0 ? 1 : 2;
    k.sigma = k.a * ipow(Integer(2), 2 * m + 1) * (ipow(Integer(2), 2 * m - 1) - 1) * num(frac);
    auto cd = bezout(num(frac), den(frac));
    k.c = cd.first;
    k.d = cd.second;
    if (m % 2 == 0 && m > 4) {
        long half = m / 2;
        KrannichConstants lo = krannich(half);
        Rational num_lo = abs(bernoulli(2 * half)) / (4 * half);
        Rational first = Rational(lo.sigma) * lo.sigma
                         + Rational(lo.a) * lo.a * k.sigma * num(num_lo);
        long sign = half % 2 == 0 ? 1 : -1;
        Rational second = Rational(k.c) * num(num_lo) + Rational(2 * sign) * k.d * lo.j;
        // kept exact: the displayed formula does not always clear 8 j_k^2,
        // so integrality is checked on the full congruence operand instead
        k.sQ = Rational(-1, 8) / (Rational(lo.j) * lo.j) * first * second;
    }
    return k;
}

BoundReport classification_condition(long n, const Integer& sig, const Integer& chi_sq)
{
    if (n <= 4 || n % 4 != 0)
        throw domain_error("classification_condition: n must be a multiple of 4 exceeding 4");
    KrannichConstants kc = krannich(n / 2);
    if (!kc.sQ)
        throw domain_error("classification_condition: s(Q) undefined for this n");
    Rational value = Rational(sig, 8) + Rational(chi_sq, 2) * *kc.sQ;
    if (den(value) != 1)
        throw domain_error("classification_condition: congruence operand is not integral");
    Integer modulus = kc.sigma / 8;
    Integer rem = num(value) % modulus;
    BoundReport r;
    r.label = "sig/8 + chi^2/2 s(Q) = 0 mod sigma/8";
    r.lhs = value;
    r.rhs = Rational(modulus);
    r.holds = rem == 0;
    return r;
}

long n_p(const Prime& p, long n)
{
    if (n < 3)
        throw domain_error("n_p: n must be at least 3");
    if (p.value == 2)
        return stolz_h(4 * n - 1) - floor_log(2, Rational(8 * n)) + 1;
    return 4 * n / (2 * p.value - 2) - floor_log(p.value, Rational(4 * n));
}

long a_p(const Prime& p, long n)
{
    return 2 * n_p(p, n) - 1;
}

Rational b_p(const Prime& p, long n)
{
    long k = 8 * n - 1;
    if (p.value == 2)
        return Rational(3 * k, 10) + 7 + vp(p, Integer(n));
    if (p.value == 3)
        return Rational(25 * k, 184) + 19 + Rational(1133, 1472);
    long q = 2 * p.value - 2;
    return 3 + Rational((2 * p.value - 1) * k, q * (p.value * p.value - p.value - 1));
}

LogAffine b_bar(const Prime& p, long n)
{
    if (p.value == 2)
        return {Rational(3 * (8 * n - 1), 10) + 7, 1};
    return {b_p(p, n), 0};
}

Rational gamma_dm(long k)
{
    if (k < 1)
        throw domain_error("gamma_dm: k must be positive");
    return Rational(3 * k, 10) + 4 + vp(Prime(2), Integer(k + 2)) + vp(Prime(2), Integer(k + 1));
}

Rational gamma_gonzalez(const Prime& p, long k)
{
    if (p.value == 2)
        throw domain_error("gamma_gonzalez: odd primes only");
    if (k % 8 != 7)
        throw domain_error("gamma_gonzalez: stated only for stems 8n-1");
    long q = 2 * p.value - 2;
    return 3 + Rational((2 * p.value - 1) * k, q * (p.value * p.value - p.value - 1));
}

Rational gamma_burklund(const Prime& p, long k)
{
    if (p.value < 3)
        throw domain_error("gamma_burklund: odd primes only");
    if (k < 1)
        throw domain_error("gamma_burklund: k must be positive");
    if (p.value == 3)
        return Rational(25 * k, 184) + 19 + Rational(1133, 1472) + ell(p, k);
    Integer pp = p.value;
    Rational slope((2 * pp - 1) * (pp + 2), 4 * (pp - 1) * (pp * pp * pp - pp - 1));
    return slope * k + 2 * pp * pp - 3 * pp + 11 + ell(p, k);
}

Rational exponent_bound(const Prime& p, long k)
{
    if (p.value == 2)
        return gamma_dm(k);
    Rational best = gamma_burklund(p, k);
    if (k % 8 == 7)
        best = std::min(best, gamma_gonzalez(p, k));
    return best;
}

namespace {

bool ap_exceeds_bp(const Prime& p, long n)
{
    return Rational(a_p(p, n)) > b_p(p, n);
}

// A_p > 4 + Bbar_p, decided exactly (Bbar_2 carries a log2(n) term)
bool ap_exceeds_bbar4(const Prime& p, long n)
{
    LogAffine bb = b_bar(p, n);
    Rational margin = Rational(a_p(p, n)) - 4 - bb.base;
    if (bb.log2_coeff == 0)
        return margin > 0;
    // margin > coeff * log2(n)  <=>  log2(n) < margin/coeff   (coeff = 1)
    return cmp_log(2, Rational(n), margin / bb.log2_coeff) < 0;
}

// discrete derivative of Abar_p - Bbar_p is positive from n on:
//   slope_gap/2 > log_p((n+1)/n), exact; the left side is constant and the
//   right side decreases, so checking at n certifies all larger n
bool certify_increasing_from(const Prime& p, long n)
{
    Rational lin_a = p.value == 2 ? Rational(4) : Rational(4, p.value - 1);
    Rational lin_b = p.value == 2   ? Rational(24, 10)
                     : p.value == 3 ? Rational(25 * 8, 184)
                                    : Rational((2 * p.value - 1) * 8,
                                               (2 * p.value - 2) * (p.value * p.value - p.value - 1));
    Rational log_coeff = p.value == 2 ? Rational(3) : Rational(2);  // of log_p-terms
    long base = p.value;
    // Abar - Bbar gains (lin_a - lin_b) - log_coeff*log_base((n+1)/n) per step
    Rational gap = lin_a - lin_b;
    if (gap <= 0)
        return false;
    return cmp_log(base, Rational(n + 1, n), gap / log_coeff) < 0;
}

}  // namespace

Threshold threshold(const Prime& p)
{
    Threshold t;
    t.window = 200;
    if (p.value >= 11) {
        t.n0 = 2 * (2 * p.value - 2);
        t.minimal = false;
        t.certified = true;
        for (long n = t.n0; n <= t.n0 + t.window; ++n)
            if (!ap_exceeds_bp(p, n))
                throw domain_error("threshold: closed bound violated at n=" + std::to_string(n));
        return t;
    }
    // scan for the last failure, then certify the tail
    long last_fail = 2;
    long scan_to = 400;
    for (long n = 3; n <= scan_to; ++n)
        if (!ap_exceeds_bp(p, n))
            last_fail = n;
    t.n0 = last_fail + 1;
    for (long n = t.n0; n <= t.n0 + t.window; ++n)
        if (!ap_exceeds_bp(p, n))
            throw domain_error("threshold: scan window too small");
    // beyond the window: A_p > 4 + Bbar_p at some n*, discrete derivative
    // positive from n* on, |A - Abar| <= 2 and B <= Bbar close the argument
    for (long n = t.n0; n <= t.n0 + t.window; ++n) {
        if (ap_exceeds_bbar4(p, n) && certify_increasing_from(p, n)) {
            t.certified = true;
            break;
        }
    }
    if (!t.certified)
        throw domain_error("threshold: tail certification failed");
    return t;
}

Table table_big()
{
    Table t;
    t.header = {"n", "8n-1", "A_2", "B_2", "B\xCC\x84_2", "A_3", "B_3", "A_5", "B_5", "A_7", "B_7"};
    auto rows = ordered_parallel(21, [](long i) {
        long n = 16 + i;
        std::vector<std::string> row;
        row.push_back(std::to_string(n));
        row.push_back(std::to_string(8 * n - 1));
        row.push_back(std::to_string(a_p(Prime(2), n)));
        row.push_back(to_decimal(b_p(Prime(2), n), 2));
        LogAffine bb = b_bar(Prime(2), n);
        row.push_back(to_decimal_log(bb.base, bb.log2_coeff, 2, Rational(n), 2));
        for (long p : {3L, 5L, 7L}) {
            row.push_back(std::to_string(a_p(Prime(p), n)));
            row.push_back(to_decimal(b_p(Prime(p), n), 2));
        }
        return row;
    });
    t.rows = std::move(rows);
    return t;
}

Table table_remaining()
{
    Table t;
    t.header = {"n", "8n-1", "2N_2-1", "2N_3-1"};
    for (long n = 3; n <= 31; ++n) {
        std::vector<std::string> row;
        row.push_back(std::to_string(n));
        row.push_back(std::to_string(8 * n - 1));
        row.push_back(n <= 17 ? std::to_string(a_p(Prime(2), n)) : std::string("-"));
        row.push_back(std::to_string(a_p(Prime(3), n)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string Table::csv() const
{
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    return out.str();
}

StolzReport stolz_inequality(long k, int d)
{
    if (k < 1 || d < 0 || d > 3)
        throw domain_error("stolz_inequality: need k >= 1 and 0 <= d <= 3");
    StolzReport r;
    r.k = k;
    r.d = d;
    r.lhs = Rational(stolz_h(k - 1) - floor_log(2, Rational(2 * k + d + 1)) + 1);
    r.rhs = Rational(2 * k + d, 5) + 15;
    r.delta = r.lhs - r.rhs;
    r.holds = r.lhs >= r.rhs;
    return r;
}

long skeletal_filtration(const Prime& p, long m, long k)
{
    if (k < 1)
        throw domain_error("skeletal_filtration: k must be at least 1");
    if (p.value == 2)
        return stolz_h(m - 1) - floor_log(2, Rational(k + 1)) + 1;
    return m / (2 * p.value - 2) - floor_log(p.value, Rational(k + 1, 2));
}

BoundReport mod8_threshold(long k)
{
    if (k < 2)
        throw domain_error("mod8_threshold: k must be at least 2");
    BoundReport r;
    r.label = "k >= 91 + 5 log2(k+1)";
    r.lhs = Rational(k);
    // exact: log2(k+1) <= (k-91)/5
    r.holds = k > 91 && cmp_log(2, Rational(k + 1), Rational(k - 91, 5)) <= 0;
    arith::Bracket b = arith::log_bracket(2, Rational(k + 1), 30);
    r.rhs = 91 + 5 * b.hi;
    return r;
}

BoundReport i_want_bound(long k, long n, const Rational& b)
{
    if (k < 2)
        throw domain_error("i_want_bound: k must be at least 2");
    BoundReport r;
    r.label = "k/2 + b - n + 1 >= 3(k-1)/10 + 4 + v2(k+1) + v2(k)";
    r.lhs = Rational(k, 2) + b - n + 1;
    r.rhs = Rational(3 * (k - 1), 10) + 4 + vp(Prime(2), Integer(k + 1)) + vp(Prime(2), Integer(k));
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport trivial_square_check(long n)
{
    if (n < 1)
        throw domain_error("trivial_square_check: n must be positive");
    BoundReport r;
    r.label = "(1') n >= 3.75, (2') 12n/5 >= 2log2(n) + 9.8, (3') 8n/5 >= log2(n) + 10.4";
    bool c1 = Rational(n) >= Rational(15, 4);
    // (2'): log2(n) <= (12n - 49)/10,  (3'): log2(n) <= (8n - 52)/5
    bool c2 = cmp_log(2, Rational(n), Rational(12 * n - 49, 10)) <= 0;
    bool c3 = cmp_log(2, Rational(n), Rational(8 * n - 52, 5)) <= 0;
    r.lhs = Rational(n);
    r.rhs = Rational(15, 4);
    r.holds = c1 && c2 && c3;
    return r;
}

}  // namespace tau::bounds
