#include "taucharts/verify.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "taucharts/bounds.hpp"
#include "taucharts/resolution.hpp"
#include "taucharts/synthetic.hpp"

namespace tau::verify {

using arith::to_decimal;

std::string default_data_dir()
{
#ifdef TAUCHARTS_DATA_DIR
    return TAUCHARTS_DATA_DIR;
#else
    return "data";
#endif
}

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw domain_error("cannot write " + path);
    out << content;
}

std::string rat_str(const Rational& q)
{
    std::ostringstream out;
    out << q;
    return out.str();
}

SuiteResult golden_diff(const std::string& name, const std::string& generated,
                        const std::string& golden_path, bool bless, std::string detail = "")
{
    if (bless) {
        write_file(golden_path, generated);
        return {name, true, "blessed " + golden_path};
    }
    std::string want = read_file(golden_path);
    if (want == generated)
        return {name, true, detail.empty() ? "matches " + golden_path : detail};
    return {name, false, "mismatch against " + golden_path};
}

}  // namespace

std::string table1_csv()
{
    return bounds::table_big().csv();
}

std::string table2_csv()
{
    return bounds::table_remaining().csv();
}

std::string stolz_csv()
{
    std::ostringstream out;
    out << "k,delta\n";
    for (long k = 233; k <= 245; ++k)
        out << k << "," << to_decimal(bounds::stolz_inequality(k, 3).delta, 1) << "\n";
    return out.str();
}

std::string thresholds_csv()
{
    std::ostringstream out;
    out << "p,n0,kind\n";
    for (long p : {2L, 3L, 5L, 7L}) {
        auto t = bounds::threshold(Prime(p));
        out << p << "," << t.n0 << "," << (t.minimal ? "minimum" : "bound") << "\n";
    }
    for (long p : {11L, 13L}) {
        auto t = bounds::threshold(Prime(p));
        out << p << "," << t.n0 << "," << (t.minimal ? "minimum" : "bound") << "\n";
    }
    return out.str();
}

std::string banded_csv()
{
    std::ostringstream out;
    out << "X,b,d,v,m,c,r\n";
    for (const auto& row : synth::fold_moore())
        out << row.name << "," << rat_str(row.params.b) << "," << rat_str(row.params.d) << ","
            << rat_str(row.params.v) << "," << rat_str(row.params.slope) << ","
            << rat_str(row.params.c) << "," << row.params.torsion << "\n";
    return out.str();
}

std::string an_vl_csv()
{
    std::ostringstream out;
    out << "p,m,c,r\n";
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        auto line = synth::an_line(Prime(p));
        out << p << "," << rat_str(line.slope) << "," << rat_str(line.intercept) << ","
            << line.torsion << "\n";
    }
    return out.str();
}

std::string toda_txt(const std::string& chart_path)
{
    auto tc = synth::tau_modules(chart::load_chart(chart_path));
    std::ostringstream out;
    for (const auto& s : tc.summands)
        if (!s.free())
            out << "torsion stem=" << s.stem << " w=" << s.weight << " order=" << s.torsion
                << " origin=" << s.origin << "\n";
    out << "bidegrees";
    for (const auto& [k, w] : synth::torsion_bidegrees(tc))
        out << " (" << k << "," << w << ")";
    out << "\n";
    return out.str();
}

std::string gamma_csv()
{
    std::ostringstream out;
    out << "k,gamma3\n";
    for (long k = 100; k <= 300; k += 25)
        out << k << "," << rat_str(bounds::gamma_burklund(Prime(3), k)) << "\n";
    return out.str();
}

namespace {

SuiteResult suite_table1(const std::string& dir, bool bless)
{
    return golden_diff("table1", table1_csv(), dir + "/golden/table1.csv", bless,
                       "21 rows regenerated");
}

SuiteResult suite_table2(const std::string& dir, bool bless)
{
    return golden_diff("table2", table2_csv(), dir + "/golden/table2.csv", bless,
                       "n=3..31 regenerated");
}

SuiteResult suite_stolz(const std::string& dir, bool bless)
{
    for (long k = 233; k <= 1000; ++k)
        for (int d = 0; d <= 3; ++d)
            if (!bounds::stolz_inequality(k, d).holds)
                return {"stolz", false, "inequality fails at k=" + std::to_string(k)};
    return golden_diff("stolz", stolz_csv(), dir + "/golden/stolz.csv", bless,
                       "certified for 233 <= k <= 1000, d <= 3");
}

SuiteResult suite_thresholds(const std::string& dir, bool bless)
{
    long want[4][2] = {{2, 17}, {3, 32}, {5, 16}, {7, 21}};
    for (auto [p, n0] : want) {
        auto t = bounds::threshold(Prime(p));
        if (t.n0 != n0 || !t.certified)
            return {"thresholds", false, "threshold(" + std::to_string(p) + ") != " +
                    std::to_string(n0)};
    }
    return golden_diff("thresholds", thresholds_csv(), dir + "/golden/thresholds.csv", bless,
                       "17/32/16/21 with certified tails");
}

SuiteResult suite_banded(const std::string& dir, bool bless)
{
    auto rows = synth::fold_moore();
    auto expect = [&](size_t i, const Rational& b, const Rational& d, const Rational& v,
                      const Rational& c, long r) {
        const auto& p = rows[i].params;
        return p.b == b && p.d == d && p.v == v && p.slope == Rational(1, 5) && p.c == c &&
               p.torsion == r;
    };
    bool ok = rows.size() == 6 &&
              expect(0, Rational(-3, 2), 0, 15, Rational(13, 5), 1) &&
              expect(1, Rational(-5, 2), Rational(1, 2), 23, Rational(22, 5), 2) &&
              expect(2, Rational(-7, 2), 1, Rational(97, 3), Rational(31, 5), 4) &&
              expect(3, Rational(-7, 2), 1, Rational(85, 3), 5, 4) &&
              expect(4, Rational(-15, 2), 2, Rational(175, 3), 10, 9) &&
              expect(5, Rational(-25, 2), 3, Rational(275, 3), 15, 15);
    if (!ok)
        return {"banded", false, "fold_moore drifted from the published parameters"};
    return golden_diff("banded", banded_csv(), dir + "/golden/banded.csv", bless,
                       "all 30 entries exact");
}

SuiteResult suite_an_vl(const std::string& dir, bool bless)
{
    auto l3 = synth::an_line(Prime(3));
    if (l3.slope != Rational(1, 23) || l3.intercept != Rational(331, 23) || l3.torsion != 8)
        return {"an-vl", false, "an_line(3) != (1/23, 14+9/23, 8)"};
    for (long p : {3L, 7L, 11L, 13L}) {
        if (!(synth::an_line(Prime(p)) == synth::an_line_closed_form(Prime(p))))
            return {"an-vl", false, "route disagreement at p=" + std::to_string(p)};
    }
    auto l5 = synth::an_line(Prime(5));
    auto c5 = synth::an_line_closed_form(Prime(5));
    if (!(l5.intercept < c5.intercept && l5.torsion == c5.torsion && l5.slope == c5.slope))
        return {"an-vl", false, "p=5 route must sharpen the closed form"};
    return golden_diff("an-vl", an_vl_csv(), dir + "/golden/an_vl.csv", bless,
                       "both routes agree for p <= 13");
}

SuiteResult suite_toda(const std::string& dir, bool bless)
{
    std::string path = dir + "/sphere19.chart";
    auto tc = synth::tau_modules(chart::load_chart(path));
    std::set<std::pair<long, long>> want = {{14, 17}, {14, 18}, {14, 19}, {14, 20},
                                            {16, 22}, {17, 23}, {17, 24}};
    if (synth::torsion_bidegrees(tc) != want)
        return {"toda", false, "torsion bidegrees drifted"};
    for (const auto& s : tc.summands)
        if (!s.free() && s.stem <= 13)
            return {"toda", false, "torsion below stem 14"};
    return golden_diff("toda", toda_txt(path), dir + "/golden/toda.txt", bless,
                       "seven torsion bidegrees");
}

SuiteResult suite_gamma(const std::string& dir, bool bless)
{
    Prime three(3);
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<long> stems(1, 100000);
    for (int i = 0; i < 10000; ++i) {
        long k = stems(rng);
        if (bounds::gamma_burklund(three, k) !=
            resolution::gamma_pipeline(three, k, resolution::GammaMethod::ClosedForm))
            return {"gamma", false, "route mismatch at k=" + std::to_string(k)};
    }
    return golden_diff("gamma", gamma_csv(), dir + "/golden/gamma.csv", bless,
                       "two routes agree on 10^4 stems");
}

}  // namespace

std::vector<SuiteResult> run_suites(const std::string& which, const std::string& data_dir,
                                    bool bless)
{
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& name) { return which == "all" || which == name; };
    if (want("table1"))
        out.push_back(suite_table1(data_dir, bless));
    if (want("table2"))
        out.push_back(suite_table2(data_dir, bless));
    if (want("stolz"))
        out.push_back(suite_stolz(data_dir, bless));
    if (want("thresholds"))
        out.push_back(suite_thresholds(data_dir, bless));
    if (want("banded"))
        out.push_back(suite_banded(data_dir, bless));
    if (want("an-vl"))
        out.push_back(suite_an_vl(data_dir, bless));
    if (want("toda"))
        out.push_back(suite_toda(data_dir, bless));
    if (want("gamma"))
        out.push_back(suite_gamma(data_dir, bless));
    if (out.empty())
        throw domain_error("unknown verify suite '" + which + "'");
    return out;
}

}  // namespace tau::verify
