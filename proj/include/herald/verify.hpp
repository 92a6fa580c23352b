#pragma once

#include <string>
#include <vector>

namespace herald {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs every library invariant check (state containers, BS coefficients,
// protocols, entanglement measure, sweep/optimizer, CLI determinism).
std::vector<CheckResult> run_all_checks();

bool all_passed(const std::vector<CheckResult>& results);

} // namespace herald
