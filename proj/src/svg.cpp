#include "taucharts/svg.hpp"

#include <map>
#include <sstream>

namespace tau::svg {

using chart::Chart;

namespace {

struct Canvas {
    std::ostringstream body;
    int unit;
    long stem_lo, stem_hi, filt_lo, filt_hi;
    int width, height;

    Canvas(const chart::Region& r, int unit_px)
        : unit(unit_px),
          stem_lo(r.stem_lo),
          stem_hi(r.stem_hi),
          filt_lo(r.filt_lo),
          filt_hi(r.filt_hi)
    {
        width = static_cast<int>(stem_hi - stem_lo + 2) * unit;
        height = static_cast<int>(filt_hi - filt_lo + 2) * unit;
    }
    int x(long stem) const { return static_cast<int>(stem - stem_lo + 1) * unit; }
    int y(long filt) const { return height - static_cast<int>(filt - filt_lo + 1) * unit; }

    void axes(bool grid)
    {
        if (grid) {
            for (long k = stem_lo; k <= stem_hi; ++k)
                body << "<line x1='" << x(k) << "' y1='" << y(filt_lo) << "' x2='" << x(k)
                     << "' y2='" << y(filt_hi) << "' stroke='#eeeeee'/>\n";
            for (long s = filt_lo; s <= filt_hi; ++s)
                body << "<line x1='" << x(stem_lo) << "' y1='" << y(s) << "' x2='" << x(stem_hi)
                     << "' y2='" << y(s) << "' stroke='#eeeeee'/>\n";
        }
        body << "<line x1='" << x(stem_lo) - unit / 2 << "' y1='" << y(filt_lo) << "' x2='"
             << x(stem_hi) + unit / 2 << "' y2='" << y(filt_lo) << "' stroke='#000000'/>\n";
        body << "<line x1='" << x(stem_lo) << "' y1='" << y(filt_lo) + unit / 2 << "' x2='"
             << x(stem_lo) << "' y2='" << y(filt_hi) - unit / 2 << "' stroke='#000000'/>\n";
    }

    void dot(long stem, long filt, int offset, const std::string& color)
    {
        body << "<circle cx='" << x(stem) + 4 * offset << "' cy='" << y(filt)
             << "' r='3' fill='" << color << "'/>\n";
    }

    void text(long stem, long filt, int offset, const std::string& s)
    {
        body << "<text x='" << x(stem) + 4 * offset + 4 << "' y='" << y(filt) - 4
             << "' font-size='8'>" << s << "</text>\n";
    }

    void arrow(long k1, long s1, long k2, long s2, const std::string& color)
    {
        body << "<line x1='" << x(k1) << "' y1='" << y(s1) << "' x2='" << x(k2) << "' y2='"
             << y(s2) << "' stroke='" << color << "' marker-end='url(#arrow)'/>\n";
    }

    std::string finish() const
    {
        std::ostringstream out;
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
            << height << "'>\n"
            << "<defs><marker id='arrow' markerWidth='6' markerHeight='6' refX='5' refY='3' "
               "orient='auto'><path d='M0,0 L6,3 L0,6 z'/></marker></defs>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

std::string diff_color(int page)
{
    switch (page) {
    case 2: return "#0000FF";
    case 3: return "#FF0000";
    case 4: return "#008000";
    default: return "#808080";
    }
}

}  // namespace

std::string render_chart(const Chart& c, const Options& opt)
{
    Canvas cv(c.region, opt.unit);
    cv.axes(opt.grid);
    std::map<std::pair<long, long>, int> used;
    std::map<std::string, int> offset;
    for (const auto& cl : c.classes) {
        int o = used[{cl.stem, cl.filt}]++;
        offset[cl.id] = o;
        cv.dot(cl.stem, cl.filt, o, "#000000");
        if (opt.labels)
            cv.text(cl.stem, cl.filt, o, cl.label.empty() ? cl.id : cl.label);
    }
    for (const auto& d : c.diffs) {
        const auto& src = c.classes[c.class_index(d.src)];
        cv.arrow(src.stem, src.filt, src.stem - 1, src.filt + d.page, diff_color(d.page));
    }
    return cv.finish();
}

std::string render_tau(const synth::TauChart& tc, const Options& opt)
{
    Canvas cv(tc.underlying.region, opt.unit);
    cv.axes(opt.grid);
    std::map<std::pair<long, long>, int> used;
    for (const auto& s : tc.summands) {
        long filt = s.weight - s.stem;
        int o = used[{s.stem, filt}]++;
        std::string color = s.free()        ? "#000000"
                            : s.torsion == 1 ? "#0000FF"
                            : s.torsion == 2 ? "#FF0000"
                                             : "#AA00AA";
        cv.dot(s.stem, filt, o, color);
        if (s.torsion >= 3)
            cv.text(s.stem, filt, o, "t^" + std::to_string(s.torsion));
        else if (opt.labels)
            cv.text(s.stem, filt, o, s.origin);
    }
    return cv.finish();
}

}  // namespace tau::svg
