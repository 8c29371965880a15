#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Self-contained property suite behind the `validate` CLI subcommand:
// orthonormality of the angle-built matrices, gradient agreement with finite
// differences, pointwise steering optimality, zero-thrust conservation, and
// element round-trips.
namespace clftraj::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // worst observed metric, shown on failure
};

std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

} // namespace clftraj::validation
