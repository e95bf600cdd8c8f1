#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "floerfp/f2_linalg.hpp"
#include "floerfp/oracles.hpp"

using namespace floerfp;

namespace {

sparse_bool_matrix random_matrix(std::mt19937_64& rng, int rows, int cols, std::uint64_t density_num,
                                 std::uint64_t density_den) {
    std::vector<std::pair<int, int>> positions;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (draw(rng, density_den) < density_num) positions.emplace_back(r, c);
    return sparse_bool_matrix::from_positions_mod2(rows, cols, positions);
}

sparse_bool_matrix identity(int n) {
    std::vector<std::pair<int, int>> positions;
    for (int i = 0; i < n; ++i) positions.emplace_back(i, i);
    return sparse_bool_matrix::from_positions_mod2(n, n, positions);
}

} // namespace

TEST_CASE("rank of the identity") {
    CHECK(f2_rank(identity(3)) == 3);
    CHECK(f2_rank(identity(100)) == 100); // exercises the sparse path
}

TEST_CASE("rank of a zero matrix") {
    CHECK(f2_rank(sparse_bool_matrix(4, 7)) == 0);
}

TEST_CASE("duplicate positions cancel") {
    auto m = sparse_bool_matrix::from_positions_mod2(2, 2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 1}});
    CHECK(m.entries == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("out-of-bounds entries are rejected") {
    CHECK_THROWS_AS(sparse_bool_matrix::from_positions_mod2(2, 2, {{2, 0}}), input_error);
    CHECK_THROWS_AS(sparse_bool_matrix::from_positions_mod2(2, 2, {{0, -1}}), input_error);
}

TEST_CASE("rank agrees with the dense elimination reference on random 20x20 matrices") {
    std::mt19937_64 rng(20240517);
    for (int trial = 0; trial < 50; ++trial) {
        const sparse_bool_matrix m = random_matrix(rng, 20, 20, 1 + draw(rng, 4), 8);
        CHECK(f2_rank(m) == dense_rank_reference(m));
    }
}

TEST_CASE("rank agrees with the dense reference across the dense/sparse crossover") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int rows = 1 + static_cast<int>(draw(rng, 90));
        const int cols = 1 + static_cast<int>(draw(rng, 90));
        const sparse_bool_matrix m = random_matrix(rng, rows, cols, 1, 6);
        CHECK(f2_rank(m) == dense_rank_reference(m));
    }
}

TEST_CASE("rank is invariant under transposition") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 1 + static_cast<int>(draw(rng, 40));
        const int cols = 1 + static_cast<int>(draw(rng, 40));
        const sparse_bool_matrix m = random_matrix(rng, rows, cols, 1 + draw(rng, 3), 7);
        CHECK(f2_rank(m) == f2_rank(m.transposed()));
    }
}

TEST_CASE("product dimensions are checked") {
    CHECK_THROWS_AS(f2_product(sparse_bool_matrix(2, 3), sparse_bool_matrix(2, 2)), input_error);
}

namespace {

graded_complex two_block_complex(int upper_dim, int lower_dim,
                                 std::vector<std::pair<int, int>> positions) {
    graded_complex c;
    c.blocks[0] = {lower_dim, sparse_bool_matrix(0, lower_dim)};
    c.blocks[1] = {upper_dim, sparse_bool_matrix::from_positions_mod2(lower_dim, upper_dim, positions)};
    return c;
}

} // namespace

TEST_CASE("zero differentials leave block dimensions") {
    graded_complex c;
    c.blocks[0] = {3, sparse_bool_matrix(0, 3)};
    c.blocks[1] = {2, sparse_bool_matrix(3, 2)};
    auto h = homology_ranks(c);
    CHECK(h[1] == 2);
    CHECK(h[0] == 3);
}

TEST_CASE("an identity pairing is acyclic") {
    auto c = two_block_complex(1, 1, {{0, 0}});
    auto h = homology_ranks(c);
    CHECK(h[0] == 0);
    CHECK(h[1] == 0);
}

TEST_CASE("complexes violating the boundary axiom are rejected") {
    graded_complex c;
    c.blocks[0] = {1, sparse_bool_matrix(0, 1)};
    c.blocks[1] = {1, sparse_bool_matrix::from_positions_mod2(1, 1, {{0, 0}})};
    c.blocks[2] = {1, sparse_bool_matrix::from_positions_mod2(1, 1, {{0, 0}})};
    CHECK_THROWS_AS(homology_ranks(c), input_error);
}

TEST_CASE("dimension mismatches are rejected") {
    graded_complex c;
    c.blocks[0] = {2, sparse_bool_matrix(0, 2)};
    c.blocks[1] = {1, sparse_bool_matrix::from_positions_mod2(1, 1, {{0, 0}})}; // needs 2 rows
    CHECK_THROWS_AS(c.validate(), input_error);
}

namespace {

// random three-block complex with boundary^2 = 0: the upper boundary is
// built inside the kernel of the lower one by combining its kernel vectors
graded_complex random_chain_complex(std::mt19937_64& rng) {
    const int d0 = 1 + static_cast<int>(draw(rng, 4));
    const int d1 = 1 + static_cast<int>(draw(rng, 5));
    const int d2 = 1 + static_cast<int>(draw(rng, 5));
    const sparse_bool_matrix lower = random_matrix(rng, d0, d1, 1, 3);

    // kernel basis of `lower` by dense elimination over the columns
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(d1), 0);
    for (auto [r, c] : lower.entries) cols[static_cast<std::size_t>(c)] |= 1ULL << r;
    std::vector<std::uint64_t> reduced = cols;
    std::vector<std::uint64_t> combo(static_cast<std::size_t>(d1));
    std::vector<std::uint64_t> kernel;
    std::vector<int> pivot_owner(64, -1);
    for (int j = 0; j < d1; ++j) {
        combo[static_cast<std::size_t>(j)] = 1ULL << j;
        while (reduced[static_cast<std::size_t>(j)] != 0) {
            const int low = std::countr_zero(reduced[static_cast<std::size_t>(j)]);
            if (pivot_owner[static_cast<std::size_t>(low)] < 0) {
                pivot_owner[static_cast<std::size_t>(low)] = j;
                break;
            }
            const int o = pivot_owner[static_cast<std::size_t>(low)];
            reduced[static_cast<std::size_t>(j)] ^= reduced[static_cast<std::size_t>(o)];
            combo[static_cast<std::size_t>(j)] ^= combo[static_cast<std::size_t>(o)];
        }
        if (reduced[static_cast<std::size_t>(j)] == 0) kernel.push_back(combo[static_cast<std::size_t>(j)]);
    }

    std::vector<std::pair<int, int>> upper_positions;
    for (int c = 0; c < d2; ++c) {
        std::uint64_t col = 0;
        for (const std::uint64_t k : kernel)
            if (draw(rng, 2)) col ^= k;
        for (int r = 0; r < d1; ++r)
            if (col & (1ULL << r)) upper_positions.emplace_back(r, c);
    }

    graded_complex complex;
    complex.blocks[0] = {d0, sparse_bool_matrix(0, d0)};
    complex.blocks[1] = {d1, lower};
    complex.blocks[2] = {d2, sparse_bool_matrix::from_positions_mod2(d1, d2, upper_positions)};
    return complex;
}

} // namespace

TEST_CASE("homology ranks match the exhaustive vector-enumeration oracle") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 40; ++trial) {
        const graded_complex c = random_chain_complex(rng);
        const auto fast = homology_ranks(c);
        const auto slow = homology_ranks_by_enumeration(c);
        CHECK(fast == slow);
    }
}

TEST_CASE("homology ranks are invariant under simultaneous permutation of a block basis") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        graded_complex c = random_chain_complex(rng);
        const auto before = homology_ranks(c);

        // permute the basis of the middle block: rows of the upper boundary
        // and columns of the lower one move together
        const int d1 = static_cast<int>(c.blocks[1].dim);
        std::vector<int> perm(static_cast<std::size_t>(d1));
        for (int i = 0; i < d1; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = d1 - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(draw(rng, static_cast<std::uint64_t>(i + 1)))]);

        std::vector<std::pair<int, int>> lower, upper;
        for (auto [r, col] : c.blocks[1].boundary.entries) lower.emplace_back(r, perm[static_cast<std::size_t>(col)]);
        for (auto [r, col] : c.blocks[2].boundary.entries) upper.emplace_back(perm[static_cast<std::size_t>(r)], col);
        c.blocks[1].boundary = sparse_bool_matrix::from_positions_mod2(
            c.blocks[1].boundary.rows, c.blocks[1].boundary.cols, lower);
        c.blocks[2].boundary = sparse_bool_matrix::from_positions_mod2(
            c.blocks[2].boundary.rows, c.blocks[2].boundary.cols, upper);

        CHECK(homology_ranks(c) == before);
    }
}

TEST_CASE("Euler characteristic is preserved by homology") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        const graded_complex c = random_chain_complex(rng);
        const auto h = homology_ranks(c);
        std::int64_t chain = 0, homology = 0;
        for (const auto& [g, block] : c.blocks) chain += (g % 2 == 0 ? 1 : -1) * block.dim;
        for (const auto& [g, rank] : h) homology += (g % 2 == 0 ? 1 : -1) * rank;
        CHECK(chain == homology);
    }
}
