#include "taucharts/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace tau::resolution {

using arith::ell;
using arith::floor_int;
using arith::vp;

long FormalTerm::min_lo() const
{
    if (zero())
        throw domain_error("min_lo of a zero term");
    long v = slices.front().lo;
    for (const auto& s : slices)
        v = std::min(v, s.lo);
    return v;
}

long FormalTerm::max_hi() const
{
    if (zero())
        throw domain_error("max_hi of a zero term");
    long v = slices.front().hi;
    for (const auto& s : slices)
        v = std::max(v, s.hi);
    return v;
}

const FormalTerm& FormalResolution::term(long j) const
{
    if (j < 0 || j >= length())
        throw domain_error("term index out of range");
    return terms[j];
}

FormalResolution module(const std::string& label, long lo, long hi)
{
    if (lo > hi)
        throw domain_error("module: empty support");
    FormalResolution r;
    r.object = label;
    r.terms.push_back(FormalTerm{{Slice{label, lo, hi}}});
    r.support[label] = {lo, hi};
    return r;
}

namespace {

long parse_long(const std::string& s)
{
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (...) {
        throw domain_error("parse: bad integer '" + s + "'");
    }
}

void sort_slices(FormalTerm& t)
{
    std::sort(t.slices.begin(), t.slices.end(), [](const Slice& a, const Slice& b) {
        return std::tie(a.lo, a.hi, a.label) < std::tie(b.lo, b.hi, b.label);
    });
}

std::string render_term(const FormalTerm& t)
{
    if (t.zero())
        return "0";
    std::ostringstream out;
    for (size_t i = 0; i < t.slices.size(); ++i) {
        if (i)
            out << "+";
        out << t.slices[i].label << "[" << t.slices[i].lo << "," << t.slices[i].hi << "]";
    }
    return out.str();
}

}  // namespace

std::string render(const FormalResolution& r)
{
    std::ostringstream out;
    out << "[ ";
    for (long j = r.length() - 1; j >= 0; --j) {
        out << render_term(r.terms[j]);
        out << (j > 0 ? " ; " : " ");
    }
    out << "| " << r.object << " ]";
    return out.str();
}

FormalResolution parse(const std::string& text)
{
    FormalResolution r;
    size_t open = text.find('['), bar = text.rfind('|'), close = text.rfind(']');
    if (open == std::string::npos || bar == std::string::npos || close == std::string::npos ||
        !(open < bar && bar < close))
        throw domain_error("parse: expected [ terms | object ]");
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    r.object = strip(text.substr(bar + 1, close - bar - 1));
    if (r.object.empty())
        throw domain_error("parse: empty object label");
    std::string body = text.substr(open + 1, bar - open - 1);
    std::vector<FormalTerm> display;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t sep = body.find(';', pos);
        std::string piece = strip(body.substr(pos, sep == std::string::npos ? sep : sep - pos));
        pos = sep == std::string::npos ? body.size() + 1 : sep + 1;
        FormalTerm t;
        if (!piece.empty() && piece != "0") {
            size_t p2 = 0;
            while (p2 < piece.size()) {
                size_t plus = piece.find('+', p2);
                std::string sl = strip(piece.substr(p2, plus == std::string::npos ? plus : plus - p2));
                p2 = plus == std::string::npos ? piece.size() : plus + 1;
                size_t lb = sl.find('['), comma = sl.find(','), rb = sl.find(']');
                if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos)
                    throw domain_error("parse: bad slice '" + sl + "'");
                Slice s;
                s.label = sl.substr(0, lb);
                if (comma < lb || rb < comma)
                    throw domain_error("parse: bad slice '" + sl + "'");
                s.lo = parse_long(sl.substr(lb + 1, comma - lb - 1));
                s.hi = parse_long(sl.substr(comma + 1, rb - comma - 1));
                if (s.label.empty() || s.lo > s.hi)
                    throw domain_error("parse: bad slice '" + sl + "'");
                t.slices.push_back(std::move(s));
            }
            sort_slices(t);
        }
        display.push_back(std::move(t));
    }
    r.terms.assign(display.rbegin(), display.rend());
    for (const auto& t : r.terms)
        for (const auto& s : t.slices) {
            auto it = r.support.find(s.label);
            if (it == r.support.end())
                r.support[s.label] = {s.lo, s.hi};
            else
                it->second = {std::min(it->second.first, s.lo), std::max(it->second.second, s.hi)};
        }
    return r;
}

std::pair<FormalResolution, FormalResolution> compress(const FormalResolution& r, long j, long a,
                                                       const std::string& g_name)
{
    if (a < 0 || j - a < 0 || j >= r.length())
        throw domain_error("compress: index out of range");
    FormalTerm g;
    FormalResolution aux;
    aux.object = g_name;
    aux.support = r.support;
    for (long i = j - a; i <= j; ++i) {
        aux.terms.push_back(r.terms[i]);
        for (const auto& s : r.terms[i].slices)
            g.slices.push_back(s);
    }
    sort_slices(g);
    FormalResolution main;
    main.object = r.object;
    main.support = r.support;
    for (long i = 0; i < j - a; ++i)
        main.terms.push_back(r.terms[i]);
    main.terms.push_back(std::move(g));
    for (long i = j + 1; i < r.length(); ++i)
        main.terms.push_back(r.terms[i]);
    return {std::move(main), std::move(aux)};
}

FormalResolution split(const FormalResolution& r, long j)
{
    if (j < 1 || j >= r.length())
        throw domain_error("split: index out of range");
    const FormalTerm& upper = r.terms[j];      // must be coconnective
    const FormalTerm& lower = r.terms[j - 1];  // must be connective
    if (!upper.zero() && !lower.zero() && upper.max_hi() > lower.min_lo() - 2)
        throw domain_error("split: need max degree " + std::to_string(upper.max_hi()) +
                           " of F_" + std::to_string(j) + " at most min degree " +
                           std::to_string(lower.min_lo()) + " of F_" + std::to_string(j - 1) +
                           " minus 2");
    FormalResolution out;
    out.object = r.object;
    out.support = r.support;
    for (long i = 0; i < j - 1; ++i)
        out.terms.push_back(r.terms[i]);
    FormalTerm merged;
    merged.slices = lower.slices;
    merged.slices.insert(merged.slices.end(), upper.slices.begin(), upper.slices.end());
    sort_slices(merged);
    out.terms.push_back(std::move(merged));
    for (long i = j + 1; i < r.length(); ++i)
        out.terms.push_back(r.terms[i]);
    return out;
}

std::pair<FormalResolution, CofiberRecord> slice_off(const FormalResolution& r)
{
    if (r.length() < 2)
        throw domain_error("slice_off: need length at least 2");
    FormalResolution out;
    out.object = r.object + "_1";
    out.support = r.support;
    out.terms.assign(r.terms.begin() + 1, r.terms.end());
    CofiberRecord rec{out.object, r.object, render_term(r.terms[0])};
    return {std::move(out), rec};
}

FormalResolution insert(const FormalResolution& r, long j, const FormalResolution& aux)
{
    if (j < 0 || j >= r.length())
        throw domain_error("insert: index out of range");
    // the auxiliary must resolve exactly the formal cells of F_j
    FormalTerm all;
    for (const auto& t : aux.terms)
        for (const auto& s : t.slices)
            all.slices.push_back(s);
    sort_slices(all);
    FormalTerm fj = r.terms[j];
    sort_slices(fj);
    if (!(all == fj))
        throw domain_error("insert: auxiliary does not resolve F_" + std::to_string(j));
    FormalResolution out;
    out.object = r.object;
    out.support = r.support;
    for (long i = 0; i < j; ++i)
        out.terms.push_back(r.terms[i]);
    for (const auto& t : aux.terms)
        out.terms.push_back(t);
    for (long i = j + 1; i < r.length(); ++i)
        out.terms.push_back(r.terms[i]);
    return out;
}

FormalResolution swap(const FormalResolution& r, long j)
{
    if (j < 0 || j >= r.length())
        throw domain_error("swap: index out of range");
    if (r.terms[j].slices.size() != 2)
        throw domain_error("swap: F_" + std::to_string(j) + " is not a two-slice direct sum");
    FormalResolution out;
    out.object = r.object;
    out.support = r.support;
    for (long i = 0; i < j; ++i)
        out.terms.push_back(r.terms[i]);
    out.terms.push_back(FormalTerm{{r.terms[j].slices[1]}});  // lower index
    out.terms.push_back(FormalTerm{{r.terms[j].slices[0]}});  // upper index
    for (long i = j + 1; i < r.length(); ++i)
        out.terms.push_back(r.terms[i]);
    return out;
}

FormalResolution append(const FormalResolution& r, const FormalTerm& a,
                        const std::string& new_object)
{
    FormalResolution out;
    out.object = new_object;
    out.support = r.support;
    out.terms.push_back(a);
    out.terms.insert(out.terms.end(), r.terms.begin(), r.terms.end());
    for (const auto& s : a.slices) {
        auto it = out.support.find(s.label);
        if (it == out.support.end())
            out.support[s.label] = {s.lo, s.hi};
        else
            it->second = {std::min(it->second.first, s.lo), std::max(it->second.second, s.hi)};
    }
    return out;
}

FormalResolution postnikov_rewrite(const FormalResolution& r, long m)
{
    if (m < 2)
        throw domain_error("postnikov_rewrite: m must be at least 2");
    long n = r.length() - 1;
    long k_max = 0;
    for (const auto& t : r.terms)
        for (const auto& s : t.slices) {
            if (s.lo < 0)
                throw domain_error("postnikov_rewrite: terms must be connective");
            k_max = std::max(k_max, s.hi);
        }
    FormalResolution out;
    out.object = r.object;
    out.support = r.support;
    long bound = length_count(n, k_max, m) + 1;
    for (long j = 0; j <= bound; ++j) {
        FormalTerm term;
        for (long i = 0; i <= std::min(j, n); ++i) {
            long lo = (j - i) * m - i;
            long hi = (j - i + 1) * m - i - 1;  // [a, b) stored closed
            for (const auto& s : r.terms[i].slices) {
                Slice clip{s.label, std::max(lo, s.lo), std::min(hi, s.hi)};
                if (clip.lo <= clip.hi)
                    term.slices.push_back(std::move(clip));
            }
        }
        sort_slices(term);
        out.terms.push_back(std::move(term));
    }
    while (!out.terms.empty() && out.terms.back().zero())
        out.terms.pop_back();
    return out;
}

long length_count(long n, long k, long m)
{
    if (n < 0 || k < 0 || m < 1)
        throw domain_error("length_count: need N >= 0, K >= 0, m >= 1");
    return 1 + n + (k + n) / m;
}

long f_comparison(long fa_k, long k, long m)
{
    if (fa_k < 1 || m < 1)
        throw domain_error("f_comparison: need fA >= 1 and m >= 1");
    return fa_k + (k + fa_k - 1) / m;
}

Rational f_bp(const Prime& p, long k)
{
    if (p.value < 3)
        throw domain_error("f_bp: odd primes only");
    Integer pp = p.value;
    Rational D(pp * pp * pp - pp - 1);
    return Rational(k) / D + 2 * Rational(pp) * pp - 4 * pp + 10 -
           (2 * Rational(pp) * pp + 2 * pp - 9) / D;
}

Rational f_bp1_intermediate(const Prime& p, long k)
{
    if (p.value < 3)
        throw domain_error("f_bp1_intermediate: odd primes only");
    // the displayed intermediate: the raw composition
    //   k/|v_2| + (1 + 1/|v_2|) f_BP(k) - 1/|v_2|
    // relaxed by exactly 1/|v_2| into the quotable constant
    Integer pp = p.value;
    Rational D(pp * pp * pp - pp - 1);
    return Rational(pp + 2) / (2 * D) * k + 2 * Rational(pp) * pp - 4 * pp + 11 -
           Rational(2 * pp - 6, pp * pp - 1) -
           (2 * Rational(pp) * pp + 2 * pp - 9) * (2 * Rational(pp) * pp - 1) /
               ((2 * Rational(pp) * pp - 2) * D);
}

Rational f_bp1_bound(const Prime& p, long k)
{
    if (p.value < 3)
        throw domain_error("f_bp1_bound: odd primes only");
    Integer pp = p.value;
    return Rational(pp + 2, 2 * (pp * pp * pp - pp - 1)) * k + 2 * Rational(pp) * pp - 4 * pp + 11;
}

long gamma_steps_dm(long k, const Rational& g_bo)
{
    if (k < 1 || g_bo < 0)
        throw domain_error("gamma_steps_dm: bad input");
    long n_level = static_cast<long>(floor_int(g_bo)) + 1;
    Prime two(2);
    long total = 0;
    for (long s = 0; s < n_level; ++s) {
        if (s == 0)
            total += 1;
        else if (s == 1)
            total += std::max(1L, vp(two, Integer(k + 1)) - 1);
        else if (s == 2)
            total += vp(two, Integer(k + 2)) + 1;
        else {
            long r = (k + s) % 8;
            total += (r == 0 || r == 1 || r == 2 || r == 4) ? 2 : 1;
        }
    }
    return total;
}

long gamma_steps_gonzalez(const Prime& p, long k, const Rational& g_bp1)
{
    if (p.value < 3)
        throw domain_error("gamma_steps_gonzalez: odd primes only");
    if (k < 1 || g_bp1 < 0)
        throw domain_error("gamma_steps_gonzalez: bad input");
    long q = 2 * p.value - 2;
    long n_level = static_cast<long>(floor_int(g_bp1)) + 1;
    long total = 0;
    for (long s = 0; s < n_level; ++s) {
        if (s <= 1)
            total += 1;
        else if (s == 2)
            total += 1 + ell(p, k);
        else
            total += (k + s) % q == 0 ? 2 : 1;
    }
    return total;
}

Rational gamma_pipeline(const Prime& p, long k, GammaMethod method, const Rational& input)
{
    if (k < 1)
        throw domain_error("gamma_pipeline: k must be positive");
    long q = 2 * p.value - 2;
    switch (method) {
    case GammaMethod::DmSteps: {
        if (p.value != 2)
            throw domain_error("gamma_pipeline: dm-steps is a p = 2 method");
        return Rational(gamma_steps_dm(k, input));
    }
    case GammaMethod::GonzalezSteps: {
        Rational g = input > 0 ? input : f_bp1_intermediate(p, k + 1) - 1;
        return Rational(gamma_steps_gonzalez(p, k, g));
    }
    case GammaMethod::ClosedForm: {
        if (p.value == 2) {
            if (input <= 0)
                throw domain_error("gamma_pipeline: p = 2 closed form needs an f_BP(k+1) input");
            return Rational(k, 4) + Rational(7, 4) * input + ell(p, k);
        }
        // Gamma(k) <= (q+1)/q (f_{BP<1>}(k+1) - 1) + 1 - 2/q + ell(k),
        // with the exact intermediate f_{BP<1>} bound
        Rational f1 = f_bp1_intermediate(p, k + 1);
        return Rational(q + 1, q) * (f1 - 1) + 1 - Rational(2, q) + ell(p, k);
    }
    }
    throw domain_error("gamma_pipeline: unknown method");
}

}  // namespace tau::resolution
