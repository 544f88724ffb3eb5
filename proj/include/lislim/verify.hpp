#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lislim/bounds.hpp"

namespace lislim::verify {

struct VerifyOptions {
    std::uint64_t seed = 20090114;
    int workers = 0;  // 0: default
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<bounds::BoundReport> reports;
};

// The registered checks: exactly one per acceptance criterion.
int criterion_count();
CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_verification_suite(const VerifyOptions& opt);

}  // namespace lislim::verify
