#include "floerfp/oracles.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <vector>

namespace floerfp {

std::int64_t dense_rank_reference(const sparse_bool_matrix& m) {
    std::vector<std::vector<std::uint8_t>> a(static_cast<std::size_t>(m.rows),
                                             std::vector<std::uint8_t>(static_cast<std::size_t>(m.cols), 0));
    for (const auto& [r, c] : m.entries) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;

    std::int64_t rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < static_cast<std::size_t>(m.cols) && pivot_row < a.size(); ++col) {
        std::size_t found = pivot_row;
        while (found < a.size() && a[found][col] == 0) ++found;
        if (found == a.size()) continue;
        std::swap(a[pivot_row], a[found]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r != pivot_row && a[r][col]) {
                for (std::size_t k = col; k < static_cast<std::size_t>(m.cols); ++k)
                    a[r][k] = static_cast<std::uint8_t>(a[r][k] ^ a[pivot_row][k]);
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

namespace {

std::uint64_t apply_columns(const std::vector<std::uint64_t>& cols, std::uint64_t input) {
    std::uint64_t out = 0;
    std::uint64_t bits = input;
    while (bits) {
        const int k = std::countr_zero(bits);
        bits &= bits - 1;
        out ^= cols[static_cast<std::size_t>(k)];
    }
    return out;
}

} // namespace

std::map<int, std::int64_t> homology_ranks_by_enumeration(const graded_complex& c) {
    for (const auto& [g, block] : c.blocks)
        if (block.dim > 20)
            throw input_error("enumeration oracle limited to block dimension 20, grading " +
                              std::to_string(g) + " has " + std::to_string(block.dim));

    std::map<int, std::vector<std::uint64_t>> cols_of; // boundary columns as row bitmasks
    for (const auto& [g, block] : c.blocks) {
        std::vector<std::uint64_t> cols(static_cast<std::size_t>(block.dim), 0);
        for (const auto& [r, cc] : block.boundary.entries) cols[static_cast<std::size_t>(cc)] |= 1ULL << r;
        cols_of[g] = std::move(cols);
    }

    std::map<int, std::int64_t> hom;
    for (const auto& [g, block] : c.blocks) {
        const auto& cols = cols_of.at(g);
        std::int64_t kernel = 0;
        for (std::uint64_t v = 0; v < (1ULL << block.dim); ++v)
            if (apply_columns(cols, v) == 0) ++kernel;

        std::set<std::uint64_t> image;
        auto upper = c.blocks.find(g + 1);
        if (upper != c.blocks.end()) {
            const auto& up_cols = cols_of.at(g + 1);
            for (std::uint64_t v = 0; v < (1ULL << upper->second.dim); ++v)
                image.insert(apply_columns(up_cols, v));
        } else {
            image.insert(0);
        }

        std::int64_t log_ker = 0, log_im = 0;
        while ((1LL << log_ker) < kernel) ++log_ker;
        while ((1LL << log_im) < static_cast<std::int64_t>(image.size())) ++log_im;
        if ((1LL << log_ker) != kernel || (1ULL << log_im) != image.size())
            throw invariant_error("kernel or image size is not a power of two");
        hom[g] = log_ker - log_im;
    }
    return hom;
}

int winding_alexander(const grid_diagram& g, std::span<const int> gen) {
    const int n = g.n;
    // column c carries a vertical strand between its X and O rows, oriented
    // so that dir = +1 when the X sits above the O
    std::vector<int> row_of_x(static_cast<std::size_t>(n)), row_of_o(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        row_of_x[static_cast<std::size_t>(g.x_marks[static_cast<std::size_t>(r)])] = r;
        row_of_o[static_cast<std::size_t>(g.o_marks[static_cast<std::size_t>(r)])] = r;
    }
    auto winding = [&](int col, int height) {
        int w = 0;
        for (int c = 0; c < col; ++c) {
            const int rx = row_of_x[static_cast<std::size_t>(c)];
            const int ro = row_of_o[static_cast<std::size_t>(c)];
            const int lo = std::min(rx, ro), hi = std::max(rx, ro);
            if (lo < height && height <= hi) w += rx > ro ? 1 : -1;
        }
        return w;
    };

    int point_sum = 0;
    for (int c = 0; c < n; ++c) point_sum += winding(c, gen[static_cast<std::size_t>(c)]);

    int corner_sum = 0;
    for (int r = 0; r < n; ++r) {
        for (int mc : {g.x_marks[static_cast<std::size_t>(r)], g.o_marks[static_cast<std::size_t>(r)]}) {
            corner_sum += winding(mc, r) + winding(mc + 1, r) + winding(mc, r + 1) + winding(mc + 1, r + 1);
        }
    }
    const int numerator = -8 * point_sum + corner_sum - 4 * (n - 1);
    if (numerator % 8 != 0) throw invariant_error("winding Alexander grading is not an integer");
    return numerator / 8;
}

} // namespace floerfp
