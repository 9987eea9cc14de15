#pragma once

/*
 * Finite Adams E2 charts over F_p with explicit differentials: data
 * model, line-oriented parser/serializer, validator and the page engine
 * computing E_r = Z_{r-1}/B_{r-1} per bidegree by exact row reduction.
 *
 * Chart file format (UTF-8, '#' comments):
 *   prime: <p>
 *   region: stems <a>..<b> filts <c>..<d>
 *   vanishing: slope <m> intercept <c>          (optional, rationals)
 *   class <id> stem=<k> filt=<s> [label="..."]
 *   diff r=<r> src=<id> tgt=<c1>*<id1>[+<c2>*<id2>...]   (*<ci> omitted when 1)
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taucharts/arith.hpp"

namespace tau::chart {

struct ChartClass {
    std::string id;
    long stem = 0;
    long filt = 0;
    std::string label;  // optional
};

// one term of an F_p-linear combination of E2 basis classes
struct Term {
    int coeff = 1;  // 1..p-1
    std::string id;
};

struct Differential {
    int page = 2;
    std::string src;
    std::vector<Term> tgt;
};

struct VanishingHint {
    Rational slope;
    Rational intercept;  // E2 = 0 for s > slope*k + intercept
};

struct Region {
    long stem_lo = 0, stem_hi = 0;
    long filt_lo = 0, filt_hi = 0;
    bool contains(long k, long s) const
    {
        return k >= stem_lo && k <= stem_hi && s >= filt_lo && s <= filt_hi;
    }
};

struct Chart {
    long prime = 2;
    Region region;
    std::optional<VanishingHint> vanishing;
    std::vector<ChartClass> classes;
    std::vector<Differential> diffs;

    long class_index(const std::string& id) const;  // -1 when missing
    int max_page() const;                           // 2 when no differentials
};

struct parse_error : std::runtime_error {
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line)
    {
    }
    int line;
};

Chart parse_chart(const std::string& text);
Chart load_chart(const std::string& path);
std::string render_text(const Chart& chart);  // canonical serialization

// F_p vector indexed by the classes of one bidegree
using FpVec = std::vector<int>;

// a subspace in row echelon form
struct Subspace {
    long prime = 2;
    long dim_ambient = 0;
    std::vector<FpVec> rows;  // reduced echelon basis
    long dim() const { return static_cast<long>(rows.size()); }
    bool contains(FpVec v) const;
    FpVec reduce(FpVec v) const;  // residue after reducing against the rows
    void insert(FpVec v);         // add v (no-op if dependent)
};

// one E2 class with its fate under the differentials
enum class Fate : std::uint8_t { Survives, DiesAsSource, DiesAsTarget };
struct ClassFate {
    Fate fate = Fate::Survives;
    int page = 0;  // page of the killing differential; 0 for survivors
};

struct PageView {
    int page = 2;
    // per bidegree: ambient class ids (declaration order), Z_{r-1} and
    // B_{r-1} in those coordinates
    struct Bidegree {
        long stem = 0, filt = 0;
        std::vector<std::string> basis;  // E2 class ids
        Subspace cycles, boundaries;     // Z_{r-1}, B_{r-1}
        long dim() const { return cycles.dim() - boundaries.dim(); }
        // representatives of a basis of Z/B, in E2 coordinates
        std::vector<FpVec> quotient_basis() const;
    };
    std::vector<Bidegree> bidegrees;  // only the nonempty E2 bidegrees
    const Bidegree* find(long stem, long filt) const;
    long dim(long stem, long filt) const;
    long total_dim() const;
};

struct EinfView {
    PageView page;                          // E_R for R = 1 + max page
    std::map<std::string, ClassFate> fate;  // per E2 class
    long survivors(long stem) const;
};

// E_r as Z_{r-1}/B_{r-1}; throws on inconsistent charts naming the page
// and the dead class
PageView pages(const Chart& chart, int r);
EinfView einf(const Chart& chart);

}  // namespace tau::chart
