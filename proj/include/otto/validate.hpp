// validate.hpp: self-check suites run by the `validate` CLI command. Each
// check compares two independent computation routes and reports its worst
// residual against a pinned tolerance.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace otto::validate {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  // worst observed deviation
    double tolerance = 0.0;
};

struct ValidationOptions {
    std::uint64_t seed = 12345;
    // Test hook: adds 1e-6 to one closed-form eigenvalue so the spectrum
    // check must fail; proves the comparison has teeth.
    bool inject_spectrum_perturbation = false;
};

std::vector<CheckResult> run_validation(const ValidationOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace otto::validate
