#pragma once

/*
 * Closed-form constants, bounds, inequalities and tables: the surgery
 * constants sigma_m/s(Q), the filtration numbers N_p/A_p/B_p with their
 * thresholds, the two tables they populate, the mod-8 counting
 * inequalities, and the Gamma filtration bounds of Davis-Mahowald,
 * Gonzalez and the BP-descent route.
 */

#include "taucharts/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tau::bounds {

struct BoundReport {
    std::string label;
    Rational lhs, rhs;  // for comparisons against irrational values rhs is a
                        // display bracket; `holds` is always decided exactly
    bool holds = false;
};

struct KrannichConstants {
    long m = 0;
    Integer j, a, sigma, c, d;
    std::optional<Rational> sQ;  // present only for even m > 4
};

// the constants j_m, a_m, sigma_m, (c_m, d_m) and, for m = 2k > 4, s(Q)_m
KrannichConstants krannich(long m);

// sig/8 + (chi^2/2) s(Q)_{n/2} = 0 mod sigma_{n/2}/8
BoundReport classification_condition(long n, const Integer& sig, const Integer& chi_sq);

// N_2 = h(4n-1) - floor(log2(8n)) + 1,  N_p = floor(4n/(2p-2)) - floor(log_p(4n))
long n_p(const Prime& p, long n);

// A_p = 2 N_p - 1
long a_p(const Prime& p, long n);

// the three-case B_p
Rational b_p(const Prime& p, long n);

// auxiliary line used in the threshold certification, as (rational part,
// coefficient of log_2(n)); for odd p the log coefficient is 0
struct LogAffine {
    Rational base;
    Rational log2_coeff;
};
LogAffine b_bar(const Prime& p, long n);

// Gamma bounds
Rational gamma_dm(long k);                        // 3k/10 + 4 + v2(k+2) + v2(k+1)
Rational gamma_gonzalez(const Prime& p, long k);  // k = 7 mod 8 only
Rational gamma_burklund(const Prime& p, long k);  // odd p; includes ell(k)

// best available Gamma bound for (p, k)
Rational exponent_bound(const Prime& p, long k);

struct Threshold {
    long n0 = 0;
    bool minimal = true;   // false for p >= 11: sufficient bound, not a minimum
    long window = 0;       // values n0..n0+window checked exactly
    bool certified = false;  // tail beyond the window certified monotonically
};
// minimal n with A_p > B_p stably (p in {2,3,5,7}); n >= 2(2p-2) for p >= 11
Threshold threshold(const Prime& p);

// tables; every cell kept exact, decimals rendered on output
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string csv() const;
};
Table table_big();        // rows n = 16..36
Table table_remaining();  // 2N_2-1 (n = 3..17) and 2N_3-1 (n = 3..31)

struct StolzReport {
    long k = 0;
    int d = 0;
    Rational lhs, rhs, delta;
    bool holds = false;
};
// h(k-1) - floor(log2(2k+d+1)) + 1 >= (2k+d)/5 + 15
StolzReport stolz_inequality(long k, int d);

// Adams filtration of the skeletal J map; for odd p pass the 4m degree
long skeletal_filtration(const Prime& p, long m, long k);

// k >= 91 + 5 log2(k+1), decided exactly
BoundReport mod8_threshold(long k);

// k/2 + b - n + 1 >= 3(k-1)/10 + 4 + v2(k+1) + v2(k)
BoundReport i_want_bound(long k, long n, const Rational& b);

// conditions (1') n >= 3.75, (2') 12n/5 >= 2 log2(n) + 9.8,
// (3') 8n/5 >= log2(n) + 10.4; holds when all three hold
BoundReport trivial_square_check(long n);

}  // namespace tau::bounds
