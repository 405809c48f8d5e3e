// Acceptance suite runner: one line per criterion, nonzero exit on failure.
#include <cstdio>

#include "injekt/suite.hpp"

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    auto results = injekt::run_suite(0);
    bool all = true;
    double total = 0;
    for (const auto& r : results) {
        std::printf("%s  [%d] %s — %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.details.c_str(), r.seconds);
        all = all && r.pass;
        total += r.seconds;
    }
    std::printf("%s: %zu criteria, %.1f s total\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                results.size(), total);
    return all ? 0 : 1;
}
