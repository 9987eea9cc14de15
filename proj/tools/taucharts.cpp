// Command-line front end: verification suites, bound evaluation, chart
// computation, the Moore-spectrum fold, resolution rewrites and SVG
// rendering. Exit codes: 0 success/verified, 1 verification failure,
// 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "taucharts/bounds.hpp"
#include "taucharts/resolution.hpp"
#include "taucharts/svg.hpp"
#include "taucharts/synthetic.hpp"
#include "taucharts/verify.hpp"

namespace {

using namespace tau;

std::string fmt(const Rational& q, int decimals)
{
    if (decimals < 0) {
        std::ostringstream out;
        out << q;
        return out.str();
    }
    return arith::to_decimal(q, decimals);
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw domain_error("cannot write " + out_path);
    out << text;
}

int cmd_verify(const std::string& suite, const std::string& data_dir, bool bless)
{
    auto results = verify::run_suites(suite, data_dir, bless);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_bounds(long p, long n, long stem, int decimals)
{
    Prime prime(p);
    if (n > 0) {
        std::cout << "N_" << p << " = " << bounds::n_p(prime, n) << "\n";
        std::cout << "A_" << p << " = " << bounds::a_p(prime, n) << "\n";
        std::cout << "B_" << p << " = " << fmt(bounds::b_p(prime, n), decimals) << "\n";
        return 0;
    }
    if (p == 2) {
        std::cout << "gamma_dm = " << fmt(bounds::gamma_dm(stem), decimals) << "\n";
    }
    else {
        std::cout << "gamma_burklund = " << fmt(bounds::gamma_burklund(prime, stem), decimals)
                  << "\n";
        if (stem % 8 == 7)
            std::cout << "gamma_gonzalez = " << fmt(bounds::gamma_gonzalez(prime, stem), decimals)
                      << "\n";
    }
    std::cout << "exponent_bound = " << fmt(bounds::exponent_bound(prime, stem), decimals) << "\n";
    return 0;
}

int cmd_gamma(long p, long stem, const std::string& method, int decimals)
{
    Prime prime(p);
    Rational value;
    if (method == "dm")
        value = bounds::gamma_dm(stem);
    else if (method == "gonzalez")
        value = bounds::gamma_gonzalez(prime, stem);
    else if (method == "burklund")
        value = bounds::gamma_burklund(prime, stem);
    else if (method == "descent")
        value = resolution::gamma_pipeline(prime, stem, resolution::GammaMethod::ClosedForm);
    else
        throw CLI::ValidationError("--method", "expected dm|gonzalez|burklund|descent");
    std::cout << fmt(value, decimals) << "\n";
    return 0;
}

int cmd_classify(long n, long sig, long chi_sq)
{
    auto report = bounds::classification_condition(n, Integer(sig), Integer(chi_sq));
    std::cout << (report.holds ? "condition holds" : "condition fails") << " (modulus sigma/8 = "
              << report.rhs << ")\n";
    return report.holds ? 0 : 1;
}

int cmd_chart(const std::string& verb, const std::string& input, int page,
              const std::string& svg_path, const std::string& out_path)
{
    chart::Chart c = chart::load_chart(input);
    if (verb == "pages") {
        auto pv = chart::pages(c, page);
        std::ostringstream out;
        for (const auto& b : pv.bidegrees)
            if (b.dim() > 0)
                out << "E_" << page << "(" << b.stem << "," << b.filt << ") dim " << b.dim()
                    << "\n";
        emit(out.str(), out_path);
        return 0;
    }
    if (verb == "einf") {
        auto v = chart::einf(c);
        std::ostringstream out;
        for (const auto& b : v.page.bidegrees)
            if (b.dim() > 0)
                out << "Einf(" << b.stem << "," << b.filt << ") dim " << b.dim() << "\n";
        emit(out.str(), out_path);
        return 0;
    }
    if (verb == "synthetic") {
        auto tc = synth::tau_modules(c);
        emit(synth::render_tau_text(tc), out_path);
        if (!svg_path.empty())
            emit(svg::render_tau(tc), svg_path);
        return 0;
    }
    if (verb == "render") {
        emit(svg::render_chart(c), svg_path.empty() ? out_path : svg_path);
        return 0;
    }
    throw CLI::ValidationError("chart", "expected pages|einf|synthetic|render");
}

int cmd_resolution(const std::string& verb, const std::string& input, long m,
                   const std::string& out_path)
{
    if (verb == "demo") {
        auto x = resolution::parse("[ C[0,10] ; D[0,10] | X ]");
        auto rw = resolution::postnikov_rewrite(x, 6);
        std::ostringstream out;
        out << resolution::render(rw) << "\n"
            << "length " << rw.length() << " = length_count(1,10,6) = "
            << resolution::length_count(1, 10, 6) << "\n";
        emit(out.str(), out_path);
        return 0;
    }
    if (verb == "rewrite") {
        auto r = resolution::parse(input);
        auto rw = resolution::postnikov_rewrite(r, m);
        emit(resolution::render(rw) + "\n", out_path);
        return 0;
    }
    throw CLI::ValidationError("resolution", "expected rewrite|demo");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"taucharts: Adams charts, synthetic torsion data and exact bound tables"};
    app.require_subcommand(1);
    std::cerr << "taucharts 1.0\n";

    std::string data_dir = verify::default_data_dir();
    int decimals = -1;
    app.add_option("--data", data_dir, "data directory (charts and goldens)");
    app.add_option("--decimals", decimals, "render rationals with N decimals");

    auto* v = app.add_subcommand("verify", "regenerate and diff golden suites");
    std::string suite = "all";
    bool bless = false;
    v->add_option("suite", suite,
                  "all|table1|table2|stolz|thresholds|banded|an-vl|toda|gamma");
    v->add_flag("--bless", bless, "rewrite the golden files");

    auto* b = app.add_subcommand("bounds", "A_p/B_p for --n, Gamma bounds for --stem");
    long b_prime = 2, b_n = 0, b_stem = 0;
    b->add_option("--prime", b_prime)->required();
    b->add_option("--n", b_n);
    b->add_option("--stem", b_stem);

    auto* g = app.add_subcommand("gamma", "a single Gamma(k) bound");
    long g_prime = 3, g_stem = 0;
    std::string g_method = "burklund";
    g->add_option("--prime", g_prime)->required();
    g->add_option("--stem", g_stem)->required();
    g->add_option("--method", g_method, "dm|gonzalez|burklund|descent");

    auto* cl = app.add_subcommand("classify", "the surgery classification congruence");
    long cl_n = 0, cl_sig = 0, cl_chi = 0;
    cl->add_option("--n", cl_n)->required();
    cl->add_option("--sig", cl_sig)->required();
    cl->add_option("--chisq", cl_chi)->required();

    auto* ch = app.add_subcommand("chart", "page computation and rendering");
    std::string ch_verb, ch_input, ch_svg, ch_out;
    int ch_page = 2;
    ch->add_option("verb", ch_verb, "pages|einf|synthetic|render")->required();
    ch->add_option("--input", ch_input)->required();
    ch->add_option("--page", ch_page);
    ch->add_option("--svg", ch_svg);
    ch->add_option("--out", ch_out);

    auto* f = app.add_subcommand("fold", "parameter folds");
    std::string f_what, f_out;
    f->add_option("what", f_what, "moore")->required();
    f->add_option("--out", f_out);

    auto* rs = app.add_subcommand("resolution", "formal resolution rewrites");
    std::string rs_verb, rs_input, rs_out;
    long rs_m = 2;
    rs->add_option("verb", rs_verb, "rewrite|demo")->required();
    rs->add_option("--input", rs_input, "bracket notation, e.g. [ C[0,10] ; D[0,10] | X ]");
    rs->add_option("--m", rs_m);
    rs->add_option("--out", rs_out);

    try {
        app.parse(argc, argv);
        if (v->parsed())
            return cmd_verify(suite, data_dir, bless);
        if (b->parsed()) {
            if ((b_n > 0) == (b_stem > 0))
                throw CLI::ValidationError("bounds", "pass exactly one of --n or --stem");
            return cmd_bounds(b_prime, b_n, b_stem, decimals);
        }
        if (g->parsed())
            return cmd_gamma(g_prime, g_stem, g_method, decimals);
        if (cl->parsed())
            return cmd_classify(cl_n, cl_sig, cl_chi);
        if (ch->parsed())
            return cmd_chart(ch_verb, ch_input, ch_page, ch_svg, ch_out);
        if (f->parsed()) {
            if (f_what != "moore")
                throw CLI::ValidationError("fold", "expected moore");
            emit(verify::banded_csv(), f_out);
            return 0;
        }
        if (rs->parsed())
            return cmd_resolution(rs_verb, rs_input, rs_m, rs_out);
        return 2;
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    catch (const tau::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const tau::chart::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
