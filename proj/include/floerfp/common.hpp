#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace floerfp {

// Bad user input: malformed files, schema violations, out-of-range sizes.
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical identity that must hold failed at runtime.  Indicates a
// modeling or implementation bug, never expected on valid inputs.  The CLI
// maps this to exit code 1.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Deterministic bounded draw.  std::uniform_int_distribution is not pinned
// down by the standard, so golden outputs use modulo reduction instead.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

// Derives a stream of independent sub-seeds from one master seed.
inline std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
    std::mt19937_64 rng(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    rng.discard(3);
    return rng();
}

} // namespace floerfp
