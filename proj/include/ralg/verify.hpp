#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ralg {

/// One entry of the bundled regression suite.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Names of the bundled regression checks, in execution order.
std::vector<std::string> regression_names();

/// Runs one named regression check.
CheckResult run_regression(const std::string& name);

/// Runs the whole suite; report receives each result as it completes.
std::vector<CheckResult> run_regressions(
    const std::function<void(const CheckResult&)>& report = nullptr);

}  // namespace ralg
