#pragma once

#include <string>
#include <vector>

#include "dfactor/oracle.hpp"
#include "dfactor/switchings.hpp"

namespace dfactor {

struct CheckReport {
    bool pass = true;
    uint64_t graphs = 0;
    uint64_t comparisons = 0;
    std::vector<std::string> failures;  // first few witnesses

    void fail(const std::string& msg) {
        pass = false;
        if (failures.size() < 16) failures.push_back(msg);
    }
};

// Exhaustive forward/inverse consistency: for every enumerated graph and
// every class, the number of forward switchings landing on it equals the
// inverse-configuration count, per variant for class B1. Also covers the
// 3-edge switching.
CheckReport bijection_check(const HostInstance& inst, const EnumBudget& budget = {});

// Analytic bounds dominate the exact per-stratum extrema wherever the
// analytic value is positive and its derivation applies.
CheckReport sandwich_check(const HostInstance& inst, const EnumBudget& budget = {});

}  // namespace dfactor
