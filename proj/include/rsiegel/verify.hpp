#pragma once

#include <string>
#include <vector>

namespace rsiegel {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int criterion_count = 13;

// Runs one acceptance criterion (1 .. 13); quick uses reduced sweeps.
CriterionResult run_criterion(int id, bool quick = false);

// Suite names: all, gauss, weights, pluriharm, theta, cusps, analytic, rankin, forms.
// Throws DomainError for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<std::string> suite_names();

} // namespace rsiegel
