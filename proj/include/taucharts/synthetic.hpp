#pragma once

/*
 * The chart-to-synthetic dictionary and the vanishing-line parameter
 * calculus: graded F_p[tau]-module summands read off a finite Adams
 * chart, Ctau^r lifts with their Bockstein values, finite-page line
 * parameters with suspension/cofiber composition, the Adams-Novikov
 * line at odd primes, and v_1-banded lines with the Moore-spectrum
 * folding pipeline.
 */

#include "taucharts/chart.hpp"

#include <set>
#include <string>
#include <vector>

namespace tau::synth {

struct TauSummand {
    std::string origin;  // lead E2 class of the generator
    long stem = 0;
    long weight = 0;     // w = stem + filtration of the generator
    long torsion = 0;    // 0 = free, t > 0 = F_p[tau]/tau^t
    bool free() const { return torsion == 0; }
};

struct TauChart {
    chart::Chart underlying;
    std::vector<TauSummand> summands;
    // associated graded of the Adams filtration: (stem, filt) -> dim
    std::map<std::pair<long, long>, long> filtration;
    chart::EinfView einf;
};

// survivors become free summands, targets of a d_{t+1} become tau^t-torsion
// summands, sources contribute nothing
TauChart tau_modules(const chart::Chart& c);

// bidegrees (k, w) with a torsion element, including the tau-multiple
// range [w - t + 1, w] under each tau^t generator
std::set<std::pair<long, long>> torsion_bidegrees(const TauChart& tc);

std::string render_tau_text(const TauChart& tc);  // chart format + tau lines

struct LiftReport {
    bool lifts = false;       // d_2..d_r vanish on x
    int blocked_at = 0;       // page of the first nonzero differential when !lifts
    std::vector<chart::Term> bockstein;  // -d_{r+1}(x) when it lifts
};
LiftReport ctau_lift(const chart::Chart& c, const std::string& id, int r);

// finite-page vanishing line: E_{r+2} = 0 (equivalently all synthetic
// classes tau^r-torsion) strictly above s = m k + c
struct LineParams {
    Rational slope;
    Rational intercept;
    long torsion = 0;
    bool operator==(const LineParams&) const = default;
};

// true iff E_{r+2} vanishes above the line within the declared region;
// throws "undecidable in region" when the region cannot certify it
bool vl_check(const chart::Chart& c, const LineParams& line);

LineParams shift_line(const LineParams& line, long a, long b);  // Sigma^{a,a}, Sigma^{0,b}
LineParams cofiber_line(const LineParams& a, const LineParams& c);
LineParams cofiber_line_spectra(const LineParams& a, const LineParams& c);

// line for X with self map b of bidegree (u, u+v), b^N tau^M = 0, given
// the line of the desuspended cofiber of b
LineParams self_map_line(const LineParams& cof_line, long u, long v, long N, long M);

// the odd-primary Adams-Novikov line via the beta_1 cofiber route
LineParams an_line(const Prime& p);
// the closed-form statement of the same line
LineParams an_line_closed_form(const Prime& p);

// v_1-banded vanishing line with parameters (b <= d, v, m, c, r)
struct BandedParams {
    long prime = 2;
    Rational b, d;   // band intercepts, b <= d
    Rational v;      // range of validity
    Rational slope;  // m < 1/(2p-2)
    Rational c;      // line intercept
    long torsion = 0;
    Rational lambda() const { return Rational(1, 2 * prime - 2); }
    bool operator==(const BandedParams&) const = default;
};

BandedParams make_banded(long prime, const Rational& b, const Rational& d, const Rational& v,
                         const Rational& slope, const Rational& c, long torsion);

BandedParams shift_banded(const BandedParams& params, long a, long b);
BandedParams banded_cofiber(const BandedParams& A, const BandedParams& C);

// key=value text blocks
std::string to_text(const LineParams& line);
std::string to_text(const BandedParams& params);

struct BandedRow {
    std::string name;
    BandedParams params;
};
// the six Moore-spectrum rows derived from the Y parameters
// (-3/2 <= 0, 15, 1/5, 13/5, 1) by suspension, cofibering and splitting
std::vector<BandedRow> fold_moore();

struct BandedCheck {
    bool cond1 = false, cond2 = false, cond3 = false, cond4 = false;
    bool pass() const { return cond1 && cond2 && cond3 && cond4; }
};
// (1'),(2'),(4') from the chart; (3') against the designated band classes
BandedCheck banded_check(const TauChart& tc, const BandedParams& params,
                         const std::set<std::pair<long, long>>& band_oracle);

// dim of the tri-graded nu-Adams page E_r^{s,k,w}, reconstructed from the
// chart as Z_{r-1}/B_{min(s-w+1, r-1)}; 0 for w > s
long synth_page_dim(const chart::Chart& c, int r, long s, long k, long w);

}  // namespace tau::synth
