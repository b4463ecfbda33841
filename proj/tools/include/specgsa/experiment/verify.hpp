#pragma once

#include <string>
#include <vector>

#include "specgsa/experiment/config.hpp"

namespace specgsa::experiment {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    std::string relation; // e.g. "<=", ">=", "=="
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Runs the supporting-fact checks (chi density bounds, chi-square coverage,
/// product density, edge concentration, epsilon nets, goodness, sandwich,
/// halfspace oracle, q and GSA upper bounds).
VerifyReport run_verify_suite(const ExperimentConfig& config);

std::string format_report(const VerifyReport& report);

} // namespace specgsa::experiment
