#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace floerfp {

struct selftest_options {
    std::uint64_t seed = 1;
    std::int64_t iterations = 1000;
    int threads = 1;
};

struct selftest_report {
    std::int64_t f2_checks = 0;
    std::int64_t surface_checks = 0;
    std::int64_t grid_checks = 0;
    std::int64_t decomposition_checks = 0;
    std::vector<std::string> failures; // each carries its reproducer seed

    bool ok() const { return failures.empty(); }
};

// Randomized invariant suite: rank oracle agreement, surface oracle
// agreement, chain complex axioms on random grid diagrams, and the
// decomposition identities.  Deterministic for a given seed.
selftest_report run_selftest(const selftest_options& opts);

} // namespace floerfp
