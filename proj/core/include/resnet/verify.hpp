#pragma once

#include <string>
#include <vector>

namespace resnet {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    /// Empty runs everything; otherwise one of network-core, operators,
    /// solvers, resistance, spectral, lattice, walk.
    std::string module_filter;
    /// Runs the harness against a deliberately perturbed fixture; the
    /// operator identities must then fail. Self-test of the suite.
    bool inject_fault = false;
};

/// Runs the cross-module invariant suite on stock fixtures.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace resnet
