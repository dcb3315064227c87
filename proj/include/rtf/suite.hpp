#pragma once

#include <string>
#include <vector>

namespace rtf {

/**
 * One acceptance-suite verdict.  `gating` is false for lines that are
 * reported but intentionally do not gate the suite: the pinned
 * end-to-end configuration is arithmetically non-realizable and its
 * honest FAIL is the designed outcome.
 */
struct CriterionResult {
    std::string name;
    bool pass = false;
    bool gating = true;
    std::string detail;
    double seconds = 0;
};

// Runs the complete acceptance suite; fixture-gated checks read the
// bundled JSON fixtures from `fixtures_dir`.
std::vector<CriterionResult> run_acceptance_suite(
    const std::string& fixtures_dir);

}  // namespace rtf
