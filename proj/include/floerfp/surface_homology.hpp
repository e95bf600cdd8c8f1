#pragma once

#include <cstdint>

#include "floerfp/common.hpp"

namespace floerfp {

// A connected compact orientable surface with some boundary circles
// designated as collapsed (the relative subset).  Punctures behave as
// boundary circles that are never collapsed.
struct surface_piece {
    int genus = 0;
    int boundary_circles = 0;
    int collapsed_circles = 0;
    int punctures = 0;

    int euler_characteristic() const { return 2 - 2 * genus - boundary_circles - punctures; }
    void validate() const;
};

struct betti_triple {
    std::int64_t h0 = 0;
    std::int64_t h1 = 0;
    std::int64_t h2 = 0;

    std::int64_t total() const { return h0 + h1 + h2; }
    bool operator==(const betti_triple&) const = default;
};

// Ranks of H_*(S, C) over the two-element field by closed formula, where C
// is the union of the collapsed boundary circles.
betti_triple rel_betti(const surface_piece& s);

// Same ranks from an explicit triangulation: builds the surface, removes
// the cells of the collapsed circles (relative chain complex), and runs the
// homology of the result.  Limited to genus <= 3 and at most 4 boundary
// circles plus punctures.
betti_triple simplicial_oracle(const surface_piece& s);

} // namespace floerfp
