// Acceptance suite: runs every bundled regression check and prints one
// PASS/FAIL line per criterion. Exit status is nonzero when anything fails.

#include <chrono>
#include <cstdio>

#include "ralg/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    bool all_pass = true;
    int index = 0;
    const auto suite_start = clock::now();
    for (const auto& name : ralg::regression_names()) {
        const auto start = clock::now();
        ralg::CheckResult result;
        try {
            result = ralg::run_regression(name);
        } catch (const std::exception& e) {
            result.name = name;
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(clock::now() - start).count();
        std::printf("%s %2d %-26s %7.2fs  %s\n", result.pass ? "PASS" : "FAIL",
                    ++index, result.name.c_str(), seconds, result.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && result.pass;
    }
    const double total =
        std::chrono::duration<double>(clock::now() - suite_start).count();
    std::printf("%s  (%.2fs total)\n", all_pass ? "ALL PASS" : "FAILURES", total);
    return all_pass ? 0 : 1;
}
