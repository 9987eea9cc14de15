#include "taucharts/chart.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tau::chart {

long Chart::class_index(const std::string& id) const
{
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].id == id)
            return static_cast<long>(i);
    return -1;
}

int Chart::max_page() const
{
    int m = 1;
    for (const auto& d : diffs)
        m = std::max(m, d.page);
    return m;
}

/* ---------------------------------------------------------------- parser */

namespace {

std::string strip(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

Rational parse_rational(const std::string& s, int line)
{
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(Integer(s));
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    }
    catch (...) {
        throw parse_error(line, "bad rational '" + s + "'");
    }
}

long parse_long(const std::string& s, int line)
{
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (...) {
        throw parse_error(line, "bad integer '" + s + "'");
    }
}

// value of "key=<...>" in tok
std::string kv(const std::string& tok, const std::string& key, int line)
{
    if (tok.rfind(key + "=", 0) != 0)
        throw parse_error(line, "expected '" + key + "=', got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

std::vector<Term> parse_target(const std::string& s, long prime, int line)
{
    std::vector<Term> terms;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t plus = s.find('+', pos);
        std::string piece = s.substr(pos, plus == std::string::npos ? plus : plus - pos);
        pos = plus == std::string::npos ? s.size() : plus + 1;
        if (piece.empty())
            throw parse_error(line, "empty target term");
        Term t;
        size_t star = piece.find('*');
        if (star == std::string::npos) {
            t.coeff = 1;
            t.id = piece;
        }
        else {
            long c = parse_long(piece.substr(0, star), line) % prime;
            if (c < 0)
                c += prime;
            if (c == 0)
                throw parse_error(line, "zero coefficient in target");
            t.coeff = static_cast<int>(c);
            t.id = piece.substr(star + 1);
        }
        if (t.id.empty())
            throw parse_error(line, "empty id in target");
        terms.push_back(std::move(t));
    }
    if (terms.empty())
        throw parse_error(line, "empty target");
    return terms;
}

void validate(const Chart& c)
{
    std::set<std::string> ids;
    for (const auto& cl : c.classes) {
        if (!ids.insert(cl.id).second)
            throw parse_error(0, "duplicate class id '" + cl.id + "'");
        if (!c.region.contains(cl.stem, cl.filt))
            throw parse_error(0, "class '" + cl.id + "' outside the declared region");
        if (c.vanishing) {
            if (Rational(cl.filt) > c.vanishing->slope * cl.stem + c.vanishing->intercept)
                throw parse_error(0, "class '" + cl.id + "' above the vanishing hint");
        }
    }
    std::set<std::string> sources;
    for (const auto& d : c.diffs) {
        if (d.page < 2)
            throw parse_error(0, "differential page must be at least 2");
        long si = c.class_index(d.src);
        if (si < 0)
            throw parse_error(0, "unknown source id '" + d.src + "'");
        if (!sources.insert(d.src).second)
            throw parse_error(0, "class '" + d.src + "' is the source of two differentials");
        const auto& src = c.classes[si];
        for (const auto& t : d.tgt) {
            long ti = c.class_index(t.id);
            if (ti < 0)
                throw parse_error(0, "unknown target id '" + t.id + "'");
            const auto& tgt = c.classes[ti];
            if (tgt.stem != src.stem - 1 || tgt.filt != src.filt + d.page)
                throw parse_error(0, "bidegree mismatch: d_" + std::to_string(d.page) + "(" +
                                         d.src + ") cannot hit " + t.id);
        }
        // no two terms on the same class
        std::set<std::string> seen;
        for (const auto& t : d.tgt)
            if (!seen.insert(t.id).second)
                throw parse_error(0, "repeated target id '" + t.id + "'");
    }
}

}  // namespace

Chart parse_chart(const std::string& text)
{
    Chart c;
    bool saw_prime = false, saw_region = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        auto toks = split_ws(line);
        const std::string& head = toks[0];
        if (head == "prime:") {
            if (toks.size() != 2)
                throw parse_error(lineno, "usage: prime: <p>");
            c.prime = Prime(parse_long(toks[1], lineno)).value;
            saw_prime = true;
        }
        else if (head == "region:") {
            // region: stems a..b filts c..d
            if (toks.size() != 5 || toks[1] != "stems" || toks[3] != "filts")
                throw parse_error(lineno, "usage: region: stems <a>..<b> filts <c>..<d>");
            auto range = [&](const std::string& s, long& lo, long& hi) {
                size_t dots = s.find("..");
                if (dots == std::string::npos)
                    throw parse_error(lineno, "bad range '" + s + "'");
                lo = parse_long(s.substr(0, dots), lineno);
                hi = parse_long(s.substr(dots + 2), lineno);
                if (lo > hi)
                    throw parse_error(lineno, "empty range '" + s + "'");
            };
            range(toks[2], c.region.stem_lo, c.region.stem_hi);
            range(toks[4], c.region.filt_lo, c.region.filt_hi);
            saw_region = true;
        }
        else if (head == "vanishing:") {
            if (toks.size() != 5 || toks[1] != "slope" || toks[3] != "intercept")
                throw parse_error(lineno, "usage: vanishing: slope <m> intercept <c>");
            c.vanishing = VanishingHint{parse_rational(toks[2], lineno),
                                        parse_rational(toks[4], lineno)};
        }
        else if (head == "class") {
            if (!saw_prime || !saw_region)
                throw parse_error(lineno, "prime and region must come before classes");
            if (toks.size() < 4)
                throw parse_error(lineno, "usage: class <id> stem=<k> filt=<s> [label=\"...\"]");
            ChartClass cl;
            cl.id = toks[1];
            cl.stem = parse_long(kv(toks[2], "stem", lineno), lineno);
            cl.filt = parse_long(kv(toks[3], "filt", lineno), lineno);
            if (toks.size() > 4) {
                size_t q1 = line.find('"');
                size_t q2 = line.rfind('"');
                if (q1 == std::string::npos || q2 <= q1)
                    throw parse_error(lineno, "bad label");
                cl.label = line.substr(q1 + 1, q2 - q1 - 1);
            }
            c.classes.push_back(std::move(cl));
        }
        else if (head == "diff") {
            if (toks.size() != 4)
                throw parse_error(lineno, "usage: diff r=<r> src=<id> tgt=<...>");
            Differential d;
            d.page = static_cast<int>(parse_long(kv(toks[1], "r", lineno), lineno));
            d.src = kv(toks[2], "src", lineno);
            d.tgt = parse_target(kv(toks[3], "tgt", lineno), c.prime, lineno);
            c.diffs.push_back(std::move(d));
        }
        else {
            throw parse_error(lineno, "unknown directive '" + head + "'");
        }
    }
    if (!saw_prime || !saw_region)
        throw parse_error(lineno, "chart must declare prime and region");
    validate(c);
    return c;
}

Chart load_chart(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot open chart file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chart(buf.str());
}

std::string render_text(const Chart& c)
{
    std::ostringstream out;
    out << "prime: " << c.prime << "\n";
    out << "region: stems " << c.region.stem_lo << ".." << c.region.stem_hi << " filts "
        << c.region.filt_lo << ".." << c.region.filt_hi << "\n";
    if (c.vanishing)
        out << "vanishing: slope " << c.vanishing->slope << " intercept "
            << c.vanishing->intercept << "\n";
    auto classes = c.classes;
    std::sort(classes.begin(), classes.end(), [](const ChartClass& a, const ChartClass& b) {
        return std::tie(a.stem, a.filt, a.id) < std::tie(b.stem, b.filt, b.id);
    });
    for (const auto& cl : classes) {
        out << "class " << cl.id << " stem=" << cl.stem << " filt=" << cl.filt;
        if (!cl.label.empty())
            out << " label=\"" << cl.label << "\"";
        out << "\n";
    }
    auto diffs = c.diffs;
    std::sort(diffs.begin(), diffs.end(), [](const Differential& a, const Differential& b) {
        return std::tie(a.page, a.src) < std::tie(b.page, b.src);
    });
    for (const auto& d : diffs) {
        out << "diff r=" << d.page << " src=" << d.src << " tgt=";
        for (size_t i = 0; i < d.tgt.size(); ++i) {
            if (i)
                out << "+";
            if (d.tgt[i].coeff != 1 || c.prime != 2)
                out << d.tgt[i].coeff << "*";
            out << d.tgt[i].id;
        }
        out << "\n";
    }
    return out.str();
}

/* ----------------------------------------------------------- linear algebra */

namespace {

int inv_mod(int a, long p)
{
    int r = 1, b = a % static_cast<int>(p);
    for (long e = p - 2; e; e >>= 1) {  // p prime
        if (e & 1)
            r = static_cast<int>((static_cast<long>(r) * b) % p);
        b = static_cast<int>((static_cast<long>(b) * b) % p);
    }
    return r;
}

}  // namespace

FpVec Subspace::reduce(FpVec v) const
{
    long p = prime;
    for (const auto& row : rows) {
        size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0)
            ++pivot;
        if (pivot < v.size() && v[pivot] != 0) {
            int factor = static_cast<int>((static_cast<long>(v[pivot]) *
                                           inv_mod(row[pivot], p)) % p);
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = static_cast<int>(((v[i] - static_cast<long>(factor) * row[i]) % p + p) % p);
        }
    }
    return v;
}

bool Subspace::contains(FpVec v) const
{
    v = reduce(std::move(v));
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

void Subspace::insert(FpVec v)
{
    v = reduce(std::move(v));
    size_t pivot = 0;
    while (pivot < v.size() && v[pivot] == 0)
        ++pivot;
    if (pivot == v.size())
        return;
    int factor = inv_mod(v[pivot], prime);
    for (auto& x : v)
        x = static_cast<int>((static_cast<long>(x) * factor) % prime);
    // keep earlier rows reduced against the new one
    for (auto& row : rows) {
        if (row[pivot] != 0) {
            long f = row[pivot];
            for (size_t i = 0; i < row.size(); ++i)
                row[i] = static_cast<int>(((row[i] - f * v[i]) % prime + prime) % prime);
        }
    }
    rows.push_back(std::move(v));
    std::sort(rows.begin(), rows.end(), [](const FpVec& a, const FpVec& b) {
        return a > b;  // leading pivots first; canonical order
    });
}

std::vector<FpVec> PageView::Bidegree::quotient_basis() const
{
    std::vector<FpVec> out;
    Subspace span = boundaries;
    for (const auto& z : cycles.rows) {
        FpVec res = span.reduce(z);
        if (std::any_of(res.begin(), res.end(), [](int x) { return x != 0; })) {
            span.insert(res);
            out.push_back(std::move(res));
        }
    }
    return out;
}

const PageView::Bidegree* PageView::find(long stem, long filt) const
{
    for (const auto& b : bidegrees)
        if (b.stem == stem && b.filt == filt)
            return &b;
    return nullptr;
}

long PageView::dim(long stem, long filt) const
{
    const Bidegree* b = find(stem, filt);
    return b ? b->dim() : 0;
}

long PageView::total_dim() const
{
    long t = 0;
    for (const auto& b : bidegrees)
        t += b.dim();
    return t;
}

long EinfView::survivors(long stem) const
{
    long t = 0;
    for (const auto& b : page.bidegrees)
        if (b.stem == stem)
            t += b.dim();
    return t;
}

/* ------------------------------------------------------------- page engine */

namespace {

struct Engine {
    const Chart& chart;
    std::map<std::pair<long, long>, PageView::Bidegree> state;
    std::map<std::string, std::pair<long, long>> where;   // id -> bidegree
    std::map<std::string, long> coord;                    // id -> index in its basis
    std::map<std::string, ClassFate> fate;

    explicit Engine(const Chart& c) : chart(c)
    {
        for (const auto& cl : c.classes) {
            auto key = std::make_pair(cl.stem, cl.filt);
            auto& b = state[key];
            b.stem = cl.stem;
            b.filt = cl.filt;
            where[cl.id] = key;
            coord[cl.id] = static_cast<long>(b.basis.size());
            b.basis.push_back(cl.id);
        }
        for (auto& [key, b] : state) {
            (void)key;
            long n = static_cast<long>(b.basis.size());
            b.cycles.prime = b.boundaries.prime = c.prime;
            b.cycles.dim_ambient = b.boundaries.dim_ambient = n;
            for (long i = 0; i < n; ++i) {
                FpVec e(n, 0);
                e[i] = 1;
                b.cycles.insert(std::move(e));
            }
        }
        for (const auto& cl : c.classes)
            fate[cl.id] = ClassFate{};
    }

    FpVec as_vector(const std::vector<Term>& terms, const std::pair<long, long>& key) const
    {
        const auto& b = state.at(key);
        FpVec v(b.basis.size(), 0);
        for (const auto& t : terms)
            v[coord.at(t.id)] = t.coeff;
        return v;
    }

    // advance from the committed page q-1 state by the d_q differentials
    void apply_page(int q)
    {
        struct Update {
            std::pair<long, long> src_key, tgt_key;
            std::vector<std::pair<long, FpVec>> maps;  // source coord -> target vector
        };
        std::map<std::pair<long, long>, Update> by_src;
        for (const auto& d : chart.diffs) {
            if (d.page != q)
                continue;
            auto src_key = where.at(d.src);
            const auto& src_cl = chart.classes[chart.class_index(d.src)];
            auto tgt_key = std::make_pair(src_cl.stem - 1, src_cl.filt + q);
            const auto& src_st = state.at(src_key);
            const auto& tgt_st = state.at(tgt_key);
            // source must be alive on page q
            FpVec e(src_st.basis.size(), 0);
            e[coord.at(d.src)] = 1;
            if (src_st.boundaries.contains(e))
                throw domain_error("inconsistent chart: d_" + std::to_string(q) + " source '" +
                                   d.src + "' already dead on page " + std::to_string(q));
            if (!src_st.cycles.contains(e))
                throw domain_error("inconsistent chart: d_" + std::to_string(q) + " source '" +
                                   d.src + "' supports an earlier differential");
            // target must be alive on page q
            FpVec t = as_vector(d.tgt, tgt_key);
            if (!tgt_st.cycles.contains(t) || tgt_st.boundaries.contains(t))
                throw domain_error("inconsistent chart: d_" + std::to_string(q) + "(" + d.src +
                                   ") hits a class already dead on page " + std::to_string(q));
            auto& u = by_src[src_key];
            u.src_key = src_key;
            u.tgt_key = tgt_key;
            u.maps.emplace_back(coord.at(d.src), std::move(t));
        }

        // stage new cycle/boundary spaces against the old state
        std::map<std::pair<long, long>, Subspace> new_cycles;
        std::map<std::pair<long, long>, Subspace> extra_boundaries;
        for (auto& [src_key, u] : by_src) {
            const auto& src_st = state.at(src_key);
            const auto& tgt_st = state.at(u.tgt_key);
            long n_src = static_cast<long>(src_st.basis.size());
            long n_tgt = static_cast<long>(tgt_st.basis.size());
            auto apply = [&](const FpVec& v) {
                FpVec img(n_tgt, 0);
                for (const auto& [ci, tv] : u.maps) {
                    int a = v[ci];
                    if (a)
                        for (long i = 0; i < n_tgt; ++i)
                            img[i] = static_cast<int>((img[i] + static_cast<long>(a) * tv[i]) %
                                                      chart.prime);
                }
                return img;
            };
            // d_q must vanish on old boundaries (well-definedness on E_q)
            for (const auto& b : src_st.boundaries.rows)
                if (!tgt_st.boundaries.contains(apply(b)))
                    throw domain_error("inconsistent chart: d_" + std::to_string(q) +
                                       " does not vanish on boundaries at stem " +
                                       std::to_string(src_st.stem));
            // kernel of Z_{q-1} -> V_tgt / B_{q-1}(tgt)
            const auto& zrows = src_st.cycles.rows;
            long m = static_cast<long>(zrows.size());
            std::vector<FpVec> aug(m);
            for (long j = 0; j < m; ++j) {
                FpVec img = tgt_st.boundaries.reduce(apply(zrows[j]));
                aug[j] = img;
                for (long i = 0; i < m; ++i)
                    aug[j].push_back(i == j ? 1 : 0);
            }
            // eliminate on the image part
            long p = chart.prime;
            long rank = 0;
            for (long col = 0; col < n_tgt && rank < m; ++col) {
                long piv = -1;
                for (long j = rank; j < m; ++j)
                    if (aug[j][col] != 0) {
                        piv = j;
                        break;
                    }
                if (piv < 0)
                    continue;
                std::swap(aug[rank], aug[piv]);
                int inv = inv_mod(aug[rank][col], p);
                for (auto& x : aug[rank])
                    x = static_cast<int>((static_cast<long>(x) * inv) % p);
                for (long j = 0; j < m; ++j)
                    if (j != rank && aug[j][col] != 0) {
                        long f = aug[j][col];
                        for (size_t i = 0; i < aug[j].size(); ++i)
                            aug[j][i] = static_cast<int>(
                                ((aug[j][i] - f * aug[rank][i]) % p + p) % p);
                    }
                ++rank;
            }
            Subspace nz;
            nz.prime = p;
            nz.dim_ambient = n_src;
            for (long j = rank; j < m; ++j) {
                // rows with zero image part: coefficients give a kernel vector
                FpVec kv_(n_src, 0);
                for (long i = 0; i < m; ++i) {
                    int a = aug[j][n_tgt + i];
                    if (a)
                        for (long x = 0; x < n_src; ++x)
                            kv_[x] = static_cast<int>(
                                (kv_[x] + static_cast<long>(a) * zrows[i][x]) % p);
                }
                nz.insert(std::move(kv_));
            }
            new_cycles[src_key] = std::move(nz);
            // new boundaries at the target
            auto& eb = extra_boundaries[u.tgt_key];
            eb.prime = p;
            eb.dim_ambient = n_tgt;
            for (const auto& [ci, tv] : u.maps) {
                (void)ci;
                eb.insert(tv);
            }
        }

        // commit
        for (auto& [key, nz] : new_cycles)
            state.at(key).cycles = std::move(nz);
        for (auto& [key, eb] : extra_boundaries) {
            auto& st = state.at(key);
            // d o d = 0: page-q boundaries must be page-q cycles
            for (const auto& row : eb.rows)
                if (!st.cycles.contains(row))
                    throw domain_error("inconsistent chart: a d_" + std::to_string(q) +
                                       " target at stem " + std::to_string(st.stem) +
                                       " supports a differential of the same page");
            Subspace before = st.boundaries;
            for (const auto& row : eb.rows)
                st.boundaries.insert(row);
            // record classes newly swallowed by the boundaries
            for (size_t i = 0; i < st.basis.size(); ++i) {
                FpVec e(st.basis.size(), 0);
                e[i] = 1;
                if (!before.contains(e) && st.boundaries.contains(e)) {
                    auto& f = fate.at(st.basis[i]);
                    if (f.fate == Fate::Survives)
                        f = ClassFate{Fate::DiesAsTarget, q};
                }
            }
        }
        for (const auto& d : chart.diffs)
            if (d.page == q)
                fate.at(d.src) = ClassFate{Fate::DiesAsSource, q};
    }

    PageView snapshot(int page) const
    {
        PageView v;
        v.page = page;
        for (const auto& [key, b] : state) {
            (void)key;
            if (!b.basis.empty())
                v.bidegrees.push_back(b);
        }
        return v;
    }
};

}  // namespace

PageView pages(const Chart& chart, int r)
{
    if (r < 2)
        throw domain_error("pages: r must be at least 2");
    Engine e(chart);
    for (int q = 2; q < r; ++q)
        e.apply_page(q);
    return e.snapshot(r);
}

EinfView einf(const Chart& chart)
{
    int R = chart.max_page() + 1;
    if (R < 2)
        R = 2;
    Engine e(chart);
    for (int q = 2; q < R; ++q)
        e.apply_page(q);
    EinfView v;
    v.page = e.snapshot(R);
    v.fate = e.fate;
    return v;
}

}  // namespace tau::chart
