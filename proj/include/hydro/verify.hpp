#pragma once

#include <string>
#include <vector>

namespace hydro {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// Named property suites; `res` scales the working grids where a suite does
/// not pin its own resolutions, `seed` feeds every random generator.
SuiteResult run_suite(const std::string& name, int res, uint64_t seed);

const std::vector<std::string>& suite_names();

} // namespace hydro
