#pragma once

/*
 * SVG output for charts and their synthetic refinements. One grid unit
 * is 20px, origin bottom-left, stem on x and filtration on y. Free
 * classes are black, tau-torsion blue, tau^2-torsion red, higher orders
 * labeled. Differentials are drawn as arrows (k,s) -> (k-1, s+r).
 */

#include "taucharts/synthetic.hpp"

#include <string>

namespace tau::svg {

struct Options {
    int unit = 20;       // px per grid unit
    bool grid = true;    // light background grid
    bool labels = false; // class ids next to dots
};

std::string render_chart(const chart::Chart& c, const Options& opt = {});
std::string render_tau(const synth::TauChart& tc, const Options& opt = {});

}  // namespace tau::svg
