#pragma once

/*
 * Formal finite resolutions by interval-truncated modules: the rewrite
 * constructions (compression, splitting, slicing, insertion, swapping,
 * appending), the Postnikov-block rewrite with its length formula, the
 * ring-comparison bound, and the descent pipelines assembling Gamma(k)
 * filtration bounds.
 *
 * Terms are purely formal: lists of (label, closed interval) slices.
 * Serialized in bracket notation, e.g.
 *   [ C[5,10] ; C[0,4]+D[6,10] ; D[0,5] | X ]
 * with the leftmost entry the top term F_N.
 */

#include "taucharts/arith.hpp"

#include <map>
#include <string>
#include <vector>

namespace tau::resolution {

struct Slice {
    std::string label;
    long lo = 0, hi = 0;  // closed interval, lo <= hi
    bool operator==(const Slice&) const = default;
};

struct FormalTerm {
    std::vector<Slice> slices;  // empty = zero term
    bool zero() const { return slices.empty(); }
    long min_lo() const;  // connectivity; throws on zero terms
    long max_hi() const;  // coconnectivity
    bool operator==(const FormalTerm&) const = default;
};

struct FormalResolution {
    std::string object;
    std::vector<FormalTerm> terms;  // terms[j] = F_j; F_0 is the last listed
    std::map<std::string, std::pair<long, long>> support;  // declared per label

    long length() const { return static_cast<long>(terms.size()); }
    const FormalTerm& term(long j) const;
};

// single full-support module as a length-1 resolution [F; F]
FormalResolution module(const std::string& label, long lo, long hi);

std::string render(const FormalResolution& r);
FormalResolution parse(const std::string& text);

struct CofiberRecord {
    std::string sub, total, quotient;  // X1 -> X -> F_0
};

// [.., F_{j+1}, G, F_{j-a-1}, ..; X] plus the auxiliary [F_j, .., F_{j-a}; G]
std::pair<FormalResolution, FormalResolution> compress(const FormalResolution& r, long j, long a,
                                                       const std::string& g_name = "G");
// merge F_j and F_{j-1} when max_hi(F_j) <= min_lo(F_{j-1}) - 2
FormalResolution split(const FormalResolution& r, long j);
std::pair<FormalResolution, CofiberRecord> slice_off(const FormalResolution& r);
FormalResolution insert(const FormalResolution& r, long j, const FormalResolution& aux);
// replace the two-slice F_j by its two slices (first slice on the left)
FormalResolution swap(const FormalResolution& r, long j);
FormalResolution append(const FormalResolution& r, const FormalTerm& a,
                        const std::string& new_object);

// term j = sum over i of F_i clipped to [(j-i)m-i, (j-i+1)m-i); empty
// trailing terms dropped
FormalResolution postnikov_rewrite(const FormalResolution& r, long m);

// 1 + N + floor((K + N)/m)
long length_count(long n, long k, long m);

// f_B(k) <= f_A(k) + floor((k + f_A(k) - 1)/m) when A -> B is an
// equivalence below degree m
long f_comparison(long fa_k, long k, long m);

// closed-form bound on f_{BP<1>} at an odd prime: (p+2)/(2(p^3-p-1)) k + 2p^2-4p+11
Rational f_bp1_bound(const Prime& p, long k);
// the same bound with its exact sub-unit correction terms kept
Rational f_bp1_intermediate(const Prime& p, long k);
// f_BP bound from the Adams-Novikov line
Rational f_bp(const Prime& p, long k);

enum class GammaMethod { DmSteps, GonzalezSteps, ClosedForm };

// Gamma(k) bound. ClosedForm assembles the descent chain exactly; for
// p = 2 it needs an f_BP(k+1) value supplied by the caller. The step
// methods walk the printed epsilon/delta tower tables given a g_R bound.
Rational gamma_pipeline(const Prime& p, long k, GammaMethod method,
                        const Rational& input = Rational(0));

// exact tower walks: the Gamma bound given g_bo(k) (p = 2) resp.
// g_{BP<1>}(k) (odd p)
long gamma_steps_dm(long k, const Rational& g_bo);
long gamma_steps_gonzalez(const Prime& p, long k, const Rational& g_bp1);

}  // namespace tau::resolution
