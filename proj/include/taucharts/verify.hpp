#pragma once

/*
 * Golden-file verification suites. Each suite regenerates its table or
 * chart output, runs the mathematical cross-checks behind it, and diffs
 * the regenerated bytes against the golden file. Goldens are only
 * rewritten with an explicit bless.
 */

#include <string>
#include <vector>

namespace tau::verify {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// which: one of all, table1, table2, stolz, thresholds, banded, an-vl,
// toda, gamma
std::vector<SuiteResult> run_suites(const std::string& which, const std::string& data_dir,
                                    bool bless);

// generated artifacts, exposed for tests and bless
std::string table1_csv();
std::string table2_csv();
std::string stolz_csv();
std::string thresholds_csv();
std::string banded_csv();
std::string an_vl_csv();
std::string toda_txt(const std::string& chart_path);
std::string gamma_csv();

std::string default_data_dir();

}  // namespace tau::verify
