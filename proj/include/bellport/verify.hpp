#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bellport {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst observed deviation or the reason for failure
};

/// Runs every engine, resource, protocol and sweep invariant. `seed` drives the
/// random states and the sampled-statistics checks.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 20240611);

} // namespace bellport
