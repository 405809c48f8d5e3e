#pragma once

#include <string>
#include <vector>

#include "injekt/fields.hpp"

namespace injekt {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0;
};

// Runs the acceptance criteria (all of them, or the ids/name-substrings in
// `only`). Deterministic under seed.
std::vector<CriterionResult> run_suite(uint64_t seed, const std::vector<std::string>& only = {});

} // namespace injekt
