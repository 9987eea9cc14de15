#include "taucharts/synthetic.hpp"

#include <algorithm>
#include <sstream>

namespace tau::synth {

using chart::Chart;
using chart::EinfView;
using chart::FpVec;
using chart::PageView;

TauChart tau_modules(const Chart& c)
{
    TauChart tc;
    tc.underlying = c;
    tc.einf = chart::einf(c);

    // free summands from the E_infinity survivors
    for (const auto& bd : tc.einf.page.bidegrees) {
        auto reps = bd.quotient_basis();
        for (const auto& rep : reps) {
            size_t lead = 0;
            while (lead < rep.size() && rep[lead] == 0)
                ++lead;
            TauSummand s;
            s.origin = bd.basis[lead];
            s.stem = bd.stem;
            s.weight = bd.stem + bd.filt;
            s.torsion = 0;
            tc.summands.push_back(std::move(s));
        }
        if (bd.dim() > 0)
            tc.filtration[{bd.stem, bd.filt}] = bd.dim();
    }
    // a target of a d_{t+1} contributes one tau^t summand at its bidegree
    for (const auto& d : c.diffs) {
        const auto& src = c.classes[c.class_index(d.src)];
        TauSummand s;
        s.origin = d.tgt.front().id;
        s.stem = src.stem - 1;
        s.weight = s.stem + src.filt + d.page;
        s.torsion = d.page - 1;
        tc.summands.push_back(std::move(s));
    }
    std::sort(tc.summands.begin(), tc.summands.end(), [](const TauSummand& a, const TauSummand& b) {
        return std::tie(a.stem, a.weight, a.torsion, a.origin) <
               std::tie(b.stem, b.weight, b.torsion, b.origin);
    });
    return tc;
}

std::set<std::pair<long, long>> torsion_bidegrees(const TauChart& tc)
{
    std::set<std::pair<long, long>> out;
    for (const auto& s : tc.summands)
        for (long j = 0; j < s.torsion; ++j)
            out.insert({s.stem, s.weight - j});
    return out;
}

std::string render_tau_text(const TauChart& tc)
{
    std::ostringstream out;
    out << chart::render_text(tc.underlying);
    for (const auto& s : tc.summands) {
        out << "tau " << s.origin << " order=";
        if (s.free())
            out << "free";
        else
            out << s.torsion;
        out << "\n";
    }
    return out.str();
}

LiftReport ctau_lift(const Chart& c, const std::string& id, int r)
{
    if (c.class_index(id) < 0)
        throw domain_error("ctau_lift: unknown class '" + id + "'");
    if (r < 1)
        throw domain_error("ctau_lift: r must be at least 1");
    LiftReport rep;
    const chart::Differential* d = nullptr;
    for (const auto& diff : c.diffs)
        if (diff.src == id)
            d = &diff;
    if (d && d->page <= r) {
        rep.lifts = false;
        rep.blocked_at = d->page;
        return rep;
    }
    rep.lifts = true;
    if (d && d->page == r + 1) {
        rep.bockstein = d->tgt;
        for (auto& t : rep.bockstein)
            t.coeff = static_cast<int>((c.prime - t.coeff) % c.prime);
    }
    return rep;
}

bool vl_check(const Chart& c, const LineParams& line)
{
    PageView pv = chart::pages(c, static_cast<int>(line.torsion) + 2);
    bool boundary_violation = false;
    for (const auto& bd : pv.bidegrees) {
        if (Rational(bd.filt) <= line.slope * bd.stem + line.intercept)
            continue;
        if (bd.dim() == 0)
            continue;
        if (bd.stem == c.region.stem_hi) {
            boundary_violation = true;  // could be killed from outside the region
            continue;
        }
        return false;
    }
    if (boundary_violation)
        throw domain_error("vl_check: undecidable in region (violations only at the stem boundary)");
    return true;
}

LineParams shift_line(const LineParams& line, long a, long b)
{
    LineParams out = line;
    out.intercept = line.intercept - line.slope * a + b;
    return out;
}

LineParams cofiber_line(const LineParams& a, const LineParams& c)
{
    if (a.slope != c.slope)
        throw domain_error("cofiber_line: slope mismatch");
    return {a.slope, std::max(Rational(a.intercept + c.torsion), c.intercept),
            a.torsion + c.torsion};
}

LineParams cofiber_line_spectra(const LineParams& a, const LineParams& c)
{
    if (a.slope != c.slope)
        throw domain_error("cofiber_line_spectra: slope mismatch");
    return {a.slope, Rational(std::max(Rational(a.intercept + c.torsion), c.intercept) + 1),
            a.torsion + c.torsion + 1};
}

LineParams self_map_line(const LineParams& cof_line, long u, long v, long N, long M)
{
    if (u < 1 || N < 1 || M < 1)
        throw domain_error("self_map_line: u, N, M must be positive");
    if (Rational(v, u) < cof_line.slope)
        throw domain_error("self_map_line: v/u must be at least the slope");
    Rational gain = std::min(Rational(N) * (Rational(v) - cof_line.slope * u),
                             Rational(M) + cof_line.slope + 1);
    return {cof_line.slope, cof_line.intercept + gain, M};
}

LineParams an_line(const Prime& p)
{
    if (p.value < 3)
        throw domain_error("an_line: odd primes only");
    Integer pp = p.value;
    Rational D = Rational(pp * pp * pp - pp - 1);
    Rational m = 1 / D;
    Rational c_beta = 8 - (4 * Rational(pp) * pp - 11) / D;
    long u = static_cast<long>(2 * p.value * p.value - 2 * p.value - 2);
    long v = 2;
    LineParams cof{m, c_beta, 0};
    cof = shift_line(cof, -u, -v);
    long N, M;
    if (p.value == 3) {
        N = 6;
        M = 8;
    }
    else if (p.value == 5) {
        N = 18;
        M = 32;
    }
    else {
        N = p.value * p.value - p.value + 1;
        M = 2 * p.value * p.value - 4 * p.value + 2;
    }
    return self_map_line(cof, u, v, N, M);
}

LineParams an_line_closed_form(const Prime& p)
{
    if (p.value < 3)
        throw domain_error("an_line_closed_form: odd primes only");
    Integer pp = p.value;
    Rational D = Rational(pp * pp * pp - pp - 1);
    Rational c = 2 * Rational(pp) * pp - 4 * pp + 9 - (2 * Rational(pp) * pp + 2 * pp - 10) / D;
    return {1 / D, c, 2 * p.value * p.value - 4 * p.value + 2};
}

BandedParams make_banded(long prime, const Rational& b, const Rational& d, const Rational& v,
                         const Rational& slope, const Rational& c, long torsion)
{
    BandedParams out;
    out.prime = Prime(prime).value;
    out.b = b;
    out.d = d;
    out.v = v;
    out.slope = slope;
    out.c = c;
    out.torsion = torsion;
    if (b > d)
        throw domain_error("make_banded: band intercepts must satisfy b <= d");
    if (slope >= out.lambda())
        throw domain_error("make_banded: slope must be below 1/(2p-2)");
    return out;
}

BandedParams shift_banded(const BandedParams& params, long a, long b)
{
    BandedParams out = params;
    out.b = params.b - params.lambda() * a + b;
    out.d = params.d - params.lambda() * a + b;
    out.v = params.v + a;
    out.c = params.c - params.slope * a + b;
    return out;
}

BandedParams banded_cofiber(const BandedParams& A, const BandedParams& C)
{
    if (A.prime != C.prime)
        throw domain_error("banded_cofiber: prime mismatch");
    if (A.slope != C.slope)
        throw domain_error("banded_cofiber: slope mismatch");
    Rational lambda = A.lambda();
    BandedParams B;
    B.prime = A.prime;
    B.slope = A.slope;
    B.b = std::min(A.b, Rational(C.b - A.torsion));
    B.d = std::max(A.d, C.d);
    B.c = std::max(Rational(A.c + C.torsion), C.c);
    Rational cap =
        std::max(A.d, std::min(Rational(A.d + C.torsion), C.d)) - C.b - lambda;
    B.torsion = A.torsion +
                std::max(C.torsion, static_cast<long>(arith::floor_int(cap)));
    B.v = std::max({Rational(A.v + 1), C.v, Rational((B.c - B.b) / (lambda - B.slope))});
    return B;
}

std::string to_text(const LineParams& line)
{
    std::ostringstream out;
    out << "slope=" << line.slope << " intercept=" << line.intercept << " torsion="
        << line.torsion;
    return out.str();
}

std::string to_text(const BandedParams& p)
{
    std::ostringstream out;
    out << "p=" << p.prime << " b=" << p.b << " d=" << p.d << " v=" << p.v << " m=" << p.slope
        << " c=" << p.c << " r=" << p.torsion;
    return out.str();
}

std::vector<BandedRow> fold_moore()
{
    std::vector<BandedRow> rows;
    BandedParams y = make_banded(2, Rational(-3, 2), 0, 15, Rational(1, 5), Rational(13, 5), 1);
    rows.push_back({"C(2~)xC(eta~)", y});
    BandedParams eta2 = banded_cofiber(shift_banded(y, 1, 1), y);
    rows.push_back({"C(2~)xC(eta~^2)", eta2});
    BandedParams eta3 = banded_cofiber(shift_banded(eta2, 1, 1), y);
    rows.push_back({"C(2~)xC(eta~^3)", eta3});
    // C(2~) splits off eta3 up to a Sigma^{4,6}; the desuspended summand
    // carries the sharper range
    BandedParams c2 = shift_banded(eta3, -4, -2);
    rows.push_back({"C(2~)", c2});
    BandedParams c4 = banded_cofiber(shift_banded(c2, 0, 1), c2);
    rows.push_back({"C(4~)", c4});
    BandedParams c8 = banded_cofiber(shift_banded(c4, 0, 1), c2);
    rows.push_back({"C(8~)", c8});
    return rows;
}

BandedCheck banded_check(const TauChart& tc, const BandedParams& params,
                         const std::set<std::pair<long, long>>& band_oracle)
{
    const Chart& c = tc.underlying;
    if (c.prime != params.prime)
        throw domain_error("banded_check: prime mismatch");
    Rational lambda = params.lambda();
    Integer v_ceil = -arith::floor_int(-params.v);  // ceil
    if (v_ceil > c.region.stem_hi)
        throw domain_error("banded_check: undecidable in region (range of validity exceeds it)");
    long k_from = std::max(c.region.stem_lo, static_cast<long>(v_ceil));

    PageView pr2 = chart::pages(c, static_cast<int>(params.torsion) + 2);
    const PageView& pinf = tc.einf.page;

    BandedCheck out;
    out.cond1 = out.cond2 = out.cond4 = true;
    // (4') E_2 = 0 above s = lambda k + d, over the whole region
    for (const auto& cl : c.classes)
        if (Rational(cl.filt) > lambda * cl.stem + params.d)
            out.cond4 = false;
    // (1') E_{r+2} = E_inf for s >= mk + c, k >= v
    // (2') E_{r+2} = 0 for mk + c <= s < lambda k + b, k >= v
    for (const auto& bd : pr2.bidegrees) {
        if (bd.stem < k_from)
            continue;
        Rational s(bd.filt);
        if (s < params.slope * bd.stem + params.c)
            continue;
        if (bd.dim() != pinf.dim(bd.stem, bd.filt))
            out.cond1 = false;
        if (s < lambda * bd.stem + params.b && bd.dim() != 0)
            out.cond2 = false;
    }
    // (3') survivors on or above s = lambda k + b for k >= v match the
    // designated band classes
    std::set<std::pair<long, long>> found, expected;
    for (const auto& bd : pinf.bidegrees)
        if (bd.stem >= k_from && Rational(bd.filt) >= lambda * bd.stem + params.b && bd.dim() > 0)
            found.insert({bd.stem, bd.filt});
    for (const auto& e : band_oracle)
        if (e.first >= k_from && e.first <= c.region.stem_hi)
            expected.insert(e);
    out.cond3 = found == expected;
    return out;
}

long synth_page_dim(const chart::Chart& c, int r, long s, long k, long w)
{
    if (r < 2)
        throw domain_error("synth_page_dim: r must be at least 2");
    if (w > s)
        return 0;
    long j = std::min(s - w + 1, static_cast<long>(r - 1));
    PageView zr = chart::pages(c, r);
    PageView bj = chart::pages(c, static_cast<int>(j) + 1);
    const auto* bz = zr.find(k, s);
    const auto* bb = bj.find(k, s);
    long dz = bz ? bz->cycles.dim() : 0;
    long db = bb ? bb->boundaries.dim() : 0;
    return dz - db;
}

}  // namespace tau::synth
