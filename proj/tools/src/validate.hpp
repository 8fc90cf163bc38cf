// SPDX-License-Identifier: Apache-2.0
//
// Oracle-agreement suite for one scenario: closed forms against numerical
// quadrature and Monte Carlo, plus high-SNR slope checks.

#ifndef THZRELAY_TOOLS_VALIDATE_HPP
#define THZRELAY_TOOLS_VALIDATE_HPP

#include "scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thz::cli {

enum class Verdict { pass, fail, skip };

struct Check {
    std::string name;
    Verdict verdict;
    double achieved;  // |delta|, relative delta or delta in standard errors
    double tolerance;
    std::string note; // reason for a skip or an error
};

struct ValidateOptions {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    int jobs = 1;
    /// Test hook: scales every closed-form end-to-end value before comparison.
    double closed_form_scale = 1.0;
};

struct Report {
    std::vector<Check> checks;
    std::string text;

    bool passed() const;
};

Report run_validate(const Scenario& sc, const ValidateOptions& opts);

} // namespace thz::cli

#endif
