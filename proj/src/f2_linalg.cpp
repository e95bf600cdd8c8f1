#include "floerfp/f2_linalg.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace floerfp {

sparse_bool_matrix::sparse_bool_matrix(int rows_, int cols_) : rows(rows_), cols(cols_) {
    if (rows_ < 0 || cols_ < 0) throw input_error("matrix dimensions must be nonnegative");
}

sparse_bool_matrix sparse_bool_matrix::from_positions_mod2(int rows, int cols,
                                                           std::vector<std::pair<int, int>> positions) {
    sparse_bool_matrix m(rows, cols);
    for (const auto& [r, c] : positions) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw input_error("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") out of bounds " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    std::sort(positions.begin(), positions.end());
    // pairs appearing an even number of times cancel
    for (std::size_t i = 0; i < positions.size();) {
        std::size_t j = i;
        while (j < positions.size() && positions[j] == positions[i]) ++j;
        if ((j - i) % 2 == 1) m.entries.push_back(positions[i]);
        i = j;
    }
    return m;
}

bool sparse_bool_matrix::at(int row, int col) const {
    return std::binary_search(entries.begin(), entries.end(), std::make_pair(row, col));
}

sparse_bool_matrix sparse_bool_matrix::transposed() const {
    sparse_bool_matrix t(cols, rows);
    t.entries.reserve(entries.size());
    for (const auto& [r, c] : entries) t.entries.emplace_back(c, r);
    std::sort(t.entries.begin(), t.entries.end());
    return t;
}

namespace {

std::int64_t rank_dense_small(const sparse_bool_matrix& m) {
    // columns packed into 64-bit words, pivot at the lowest set bit
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(m.cols), 0);
    for (const auto& [r, c] : m.entries) cols[static_cast<std::size_t>(c)] |= 1ULL << r;
    std::vector<std::uint64_t> pivot_col(64, 0);
    std::int64_t rank = 0;
    for (std::uint64_t col : cols) {
        while (col != 0) {
            int low = std::countr_zero(col);
            if (pivot_col[low] == 0) {
                pivot_col[low] = col;
                ++rank;
                break;
            }
            col ^= pivot_col[low];
        }
    }
    return rank;
}

void xor_sorted(std::vector<int>& dst, const std::vector<int>& src, std::vector<int>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                  std::back_inserter(scratch));
    dst.swap(scratch);
}

} // namespace

std::int64_t f2_rank(const sparse_bool_matrix& m) {
    if (m.entries.empty()) return 0;
    if (m.rows < 64 && m.cols < 64) return rank_dense_small(m);

    std::vector<std::vector<int>> cols(static_cast<std::size_t>(m.cols));
    for (const auto& [r, c] : m.entries) cols[static_cast<std::size_t>(c)].push_back(r);

    std::vector<std::vector<int>> reduced;
    std::vector<int> owner(static_cast<std::size_t>(m.rows), -1);
    std::vector<int> scratch;
    std::int64_t rank = 0;
    for (auto& col : cols) {
        std::vector<int> cur = std::move(col);
        while (!cur.empty()) {
            int low = cur.front();
            int own = owner[static_cast<std::size_t>(low)];
            if (own < 0) {
                owner[static_cast<std::size_t>(low)] = static_cast<int>(reduced.size());
                reduced.push_back(std::move(cur));
                ++rank;
                break;
            }
            xor_sorted(cur, reduced[static_cast<std::size_t>(own)], scratch);
        }
    }
    return rank;
}

sparse_bool_matrix f2_product(const sparse_bool_matrix& a, const sparse_bool_matrix& b) {
    if (a.cols != b.rows)
        throw input_error("matrix product dimension mismatch: " + std::to_string(a.cols) +
                          " vs " + std::to_string(b.rows));
    std::vector<std::vector<int>> a_cols(static_cast<std::size_t>(a.cols));
    for (const auto& [r, c] : a.entries) a_cols[static_cast<std::size_t>(c)].push_back(r);
    std::vector<std::vector<int>> b_cols(static_cast<std::size_t>(b.cols));
    for (const auto& [r, c] : b.entries) b_cols[static_cast<std::size_t>(c)].push_back(r);

    std::vector<std::pair<int, int>> positions;
    std::vector<int> acc, scratch;
    for (int j = 0; j < b.cols; ++j) {
        acc.clear();
        for (int k : b_cols[static_cast<std::size_t>(j)]) xor_sorted(acc, a_cols[static_cast<std::size_t>(k)], scratch);
        for (int r : acc) positions.emplace_back(r, j);
    }
    sparse_bool_matrix out(a.rows, b.cols);
    std::sort(positions.begin(), positions.end());
    out.entries = std::move(positions);
    return out;
}

void graded_complex::validate() const {
    for (const auto& [g, block] : blocks) {
        if (block.dim < 0) throw input_error("negative block dimension at grading " + std::to_string(g));
        const auto& b = block.boundary;
        if (b.cols != block.dim)
            throw input_error("boundary at grading " + std::to_string(g) + " has " +
                              std::to_string(b.cols) + " columns, block dimension is " +
                              std::to_string(block.dim));
        auto lower = blocks.find(g - 1);
        std::int64_t lower_dim = lower == blocks.end() ? 0 : lower->second.dim;
        if (b.rows != lower_dim)
            throw input_error("boundary at grading " + std::to_string(g) + " has " +
                              std::to_string(b.rows) + " rows, lower block dimension is " +
                              std::to_string(lower_dim));
    }
    for (const auto& [g, block] : blocks) {
        auto upper = blocks.find(g + 1);
        if (upper == blocks.end()) continue;
        if (!f2_product(block.boundary, upper->second.boundary).is_zero())
            throw input_error("boundary composition is nonzero between gradings " +
                              std::to_string(g + 1) + " and " + std::to_string(g - 1));
    }
}

std::map<int, std::int64_t> homology_ranks(const graded_complex& c) {
    c.validate();
    std::map<int, std::int64_t> out_rank;
    for (const auto& [g, block] : c.blocks) out_rank[g] = f2_rank(block.boundary);
    std::map<int, std::int64_t> hom;
    for (const auto& [g, block] : c.blocks) {
        std::int64_t in = 0;
        if (auto it = out_rank.find(g + 1); it != out_rank.end()) in = it->second;
        std::int64_t h = block.dim - out_rank[g] - in;
        if (h < 0) throw invariant_error("negative homology rank at grading " + std::to_string(g));
        hom[g] = h;
    }
    return hom;
}

} // namespace floerfp
