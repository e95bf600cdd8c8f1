#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "floerfp/f2_linalg.hpp"
#include "floerfp/grid.hpp"

namespace floerfp {

// Independent reference implementations used by the self-test command and
// the test suites.  These deliberately avoid the code paths of the primary
// implementations they check.

// Row-major dense Gauss elimination rank over the two-element field.
std::int64_t dense_rank_reference(const sparse_bool_matrix& m);

// Homology ranks by enumerating all vectors of each block (kernel size and
// image size counted directly).  Blocks are limited to dimension 20.
std::map<int, std::int64_t> homology_ranks_by_enumeration(const graded_complex& c);

// Alexander grading via winding numbers of the knot projection: the sum of
// winding numbers over the generator points, corrected by the average over
// the mark corners.
int winding_alexander(const grid_diagram& g, std::span<const int> gen);

} // namespace floerfp
