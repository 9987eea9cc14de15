#pragma once

// Random consistent chart generator for property tests. Differentials
// are added in page order; a candidate that the page engine rejects is
// discarded, so every emitted chart is consistent by construction.

#include <random>
#include <set>
#include <sstream>

#include "taucharts/chart.hpp"

namespace tau::testgen {

inline chart::Chart random_chart(std::mt19937& rng)
{
    using namespace tau::chart;
    std::uniform_int_distribution<int> prime_pick(0, 2);
    long primes[3] = {2, 3, 5};
    Chart c;
    c.prime = primes[prime_pick(rng)];
    c.region = Region{0, 7, 0, 7};

    std::uniform_int_distribution<int> density(0, 9);
    std::uniform_int_distribution<int> multi(1, 2);
    for (long k = 0; k <= 7; ++k)
        for (long s = 0; s <= 7; ++s) {
            if (density(rng) < 4) {
                int count = multi(rng);
                for (int i = 0; i < count; ++i) {
                    ChartClass cl;
                    std::ostringstream id;
                    id << "x" << k << "_" << s << "_" << i;
                    cl.id = id.str();
                    cl.stem = k;
                    cl.filt = s;
                    c.classes.push_back(std::move(cl));
                }
            }
        }

    std::uniform_int_distribution<int> coeff(1, static_cast<int>(c.prime) - 1);
    std::uniform_int_distribution<int> attempt(0, 9);
    std::set<std::string> used_sources;
    for (int page = 2; page <= 4; ++page) {
        for (size_t ci = 0; ci < c.classes.size(); ++ci) {
            const ChartClass cl = c.classes[ci];  // copy: c is reassigned below
            if (attempt(rng) < 7 || used_sources.count(cl.id))
                continue;
            // candidate target: a random combination in the right bidegree
            std::vector<Term> tgt;
            for (const auto& other : c.classes)
                if (other.stem == cl.stem - 1 && other.filt == cl.filt + page &&
                    attempt(rng) < 5)
                    tgt.push_back(Term{coeff(rng), other.id});
            if (tgt.empty())
                continue;
            Chart candidate = c;
            candidate.diffs.push_back(Differential{page, cl.id, tgt});
            try {
                einf(candidate);
            }
            catch (const domain_error&) {
                continue;  // source or target dead, or an earlier source reused
            }
            catch (const parse_error&) {
                continue;
            }
            used_sources.insert(cl.id);
            c = std::move(candidate);
        }
    }
    return c;
}

}  // namespace tau::testgen
