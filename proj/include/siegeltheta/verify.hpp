// Randomized identity suites shared by the CLI and the acceptance tests.
// Every suite is deterministic in (suite, genus, samples, seed).

#pragma once

#include <string>
#include <vector>

#include "siegeltheta/fubini.hpp"

namespace siegeltheta {

enum class Suite { parity, addition, blocks, heat, sj_low, sj_high, veronese };

/// Residual threshold used when the caller does not supply one.
double suite_default_tol(Suite suite);

/// Smallest genus the suite supports.
int suite_min_genus(Suite suite);

std::string suite_name(Suite suite);

struct SuiteResult {
    Suite suite{};
    int genus = 0;
    double tol = 0.0;
    std::vector<double> residuals;  // one per sample, in sample order
    double max_residual = 0.0;
    int passed = 0;
    int total = 0;
    bool all_passed() const { return passed == total; }
};

SuiteResult run_suite(Suite suite, int genus, int samples, std::uint64_t seed,
                      double tol, const Precision& prec = {});

}  // namespace siegeltheta
