#include "hydro/verify.hpp"

#include <cstdio>

// End-to-end property gate: one line per criterion, nonzero exit on any
// failure. Each criterion delegates to the matching verification suite.

int main() {
    struct Item {
        const char* suite;
        const char* label;
        int res;
    };
    const Item items[] = {
        {"spectrum", "Stokes spectrum matches the closed-form eigenvalues", 12},
        {"projection", "hydrostatic projection is idempotent, orthogonal, divergence-free", 16},
        {"semigroup", "semigroup decay rate and composition", 16},
        {"energy", "discrete energy equality closes at 2nd order", 16},
        {"nonlinearity", "advection term: energy neutrality, bilinearity, 2D reference", 16},
        {"bilinear", "bilinear estimate ratio bounded across resolutions", 8},
        {"apriori", "a priori ledger stays finite on all boundary variants", 16},
        {"smoothing", "instantaneous smoothing from critical rough data", 16},
        {"analyticity", "analyticity-radius proxy grows like sqrt(t)", 16},
        {"split", "barotropic/baroclinic residual split converges", 16},
    };

    bool all = true;
    int idx = 0;
    for (const Item& it : items) {
        ++idx;
        hydro::SuiteResult r = hydro::run_suite(it.suite, it.res, 7);
        bool ok = r.pass();
        all = all && ok;
        std::printf("[%s] criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", idx, it.suite,
                    it.label);
        if (!ok)
            for (const auto& c : r.checks)
                if (!c.pass)
                    std::printf("       failed check: %s [%s]\n", c.name.c_str(),
                                c.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
