#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qv {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget = 0;  // seconds; exceeding it fails the criterion
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240611;
    std::vector<int> only;          // empty: all criteria
    std::ostream* log = nullptr;    // progress lines, if set
};

std::vector<CriterionResult> run_acceptance(AcceptanceOptions const& opt = {});
std::string format_result(CriterionResult const& r);

}  // namespace qv
