// acceptance_main.cpp — Runs every verification check at production
// parameters and prints one pass/fail line per criterion.

#include <cstdio>
#include <map>
#include <string>

#include "qslb/selftest.hpp"

int main() {
    // Canonical presentation order for the full suite.
    const std::map<std::string, int> order{
        {"critical-coupling-threshold", 1}, {"coupling-sweep-regimes", 2},
        {"steady-plateau", 3},              {"solver-cross-check", 4},
        {"qsl-identity", 5},                {"weak-coupling-limit", 6},
        {"rabi-oracle", 7},                 {"array-regimes", 8},
        {"numerical-hygiene", 9}};

    auto results = qslb::selftest::run(qslb::selftest::Level::full);
    std::map<int, qslb::selftest::CheckResult> sorted;
    for (auto& r : results) {
        const auto it = order.find(r.name);
        sorted[it == order.end() ? 99 : it->second] = r;
    }
    int fails = 0;
    for (const auto& [idx, r] : sorted) {
        std::printf("[%s] criterion %d %s — %s\n", r.pass ? "PASS" : "FAIL",
                    idx, r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++fails;
    }
    if (fails > 0)
        std::printf("%d criterion(s) failed\n", fails);
    else
        std::printf("all criteria passed\n");
    return fails == 0 ? 0 : 1;
}
