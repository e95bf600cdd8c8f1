#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "floerfp/common.hpp"

namespace floerfp {

// Sparse matrix over the two-element field.  Entry positions are stored
// sorted lexicographically (row, col) with no duplicates; values are
// immutable after construction and safe to share across threads.
struct sparse_bool_matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> entries;

    sparse_bool_matrix() = default;
    sparse_bool_matrix(int rows_, int cols_);

    // Builds a matrix from a list of positions, cancelling duplicates mod 2.
    static sparse_bool_matrix from_positions_mod2(int rows, int cols,
                                                  std::vector<std::pair<int, int>> positions);

    bool at(int row, int col) const;
    bool is_zero() const { return entries.empty(); }
    std::int64_t nnz() const { return static_cast<std::int64_t>(entries.size()); }
    sparse_bool_matrix transposed() const;

    bool operator==(const sparse_bool_matrix&) const = default;
};

// Rank over the two-element field.  Column-major sparse elimination with
// pivot at the lowest row index of each reduced column; blocks under 64x64
// take a bit-packed dense path.  The result is independent of thread count
// because the whole computation is serial per call.
std::int64_t f2_rank(const sparse_bool_matrix& m);

sparse_bool_matrix f2_product(const sparse_bool_matrix& a, const sparse_bool_matrix& b);

// A chain complex graded by an integer label.  The boundary of the block at
// grading g lands in the block at grading g-1: boundary.cols == dim(g),
// boundary.rows == dim(g-1) (or 0 when there is no lower block).
struct graded_block {
    std::int64_t dim = 0;
    sparse_bool_matrix boundary;
};

struct graded_complex {
    std::map<int, graded_block> blocks;

    // Checks dimension compatibility and boundary∘boundary == 0.
    void validate() const;
};

// Per-grading homology rank: dim - rank(boundary out) - rank(boundary in).
// Rejects complexes whose boundaries do not square to zero.
std::map<int, std::int64_t> homology_ranks(const graded_complex& c);

} // namespace floerfp
