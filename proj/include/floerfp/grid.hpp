#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "floerfp/common.hpp"

namespace floerfp {

// An n x n grid with one X and one O marking per row and per column,
// encoding a single-component knot.  x_marks[r] / o_marks[r] give the
// column of the mark in row r.
struct grid_diagram {
    int n = 0;
    std::vector<int> x_marks;
    std::vector<int> o_marks;

    // Checks permutations, X != O per row, and single-component connectivity.
    void validate() const;

    grid_diagram mirrored() const; // reflect columns: the mirror knot
};

// Text format: size line, X line, O line; '#' starts a comment line.
grid_diagram parse_grid(std::istream& in, const std::string& source_name);
grid_diagram load_grid_file(const std::string& path);
std::string format_grid(const grid_diagram& g);

// Inserts one row and one column at the X of the given row, preserving the
// knot type.
grid_diagram stabilize(const grid_diagram& g, int row);

// Uniformly sampled valid diagram of size n (rejection sampling).
grid_diagram random_grid(std::mt19937_64& rng, int n);

} // namespace floerfp
