#include "floerfp/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "floerfp/f2_linalg.hpp"
#include "floerfp/grid_hfk.hpp"
#include "floerfp/mapclass.hpp"
#include "floerfp/oracles.hpp"
#include "floerfp/surface_homology.hpp"

namespace floerfp {

namespace {

sparse_bool_matrix random_matrix(std::mt19937_64& rng, int max_dim) {
    const int rows = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(max_dim)));
    const int cols = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(max_dim)));
    const std::uint64_t density = 1 + draw(rng, 4); // fills about density/8 of the matrix
    std::vector<std::pair<int, int>> positions;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (draw(rng, 8) < density) positions.emplace_back(r, c);
    return sparse_bool_matrix::from_positions_mod2(rows, cols, positions);
}

} // namespace

selftest_report run_selftest(const selftest_options& opts) {
    selftest_report rep;
    if (opts.iterations <= 0) return rep; // vacuous pass

    // rank against the dense reference, plus the transpose identity
    const std::int64_t f2_iters = std::min<std::int64_t>(opts.iterations, 200);
    for (std::int64_t k = 0; k < f2_iters; ++k) {
        const std::uint64_t s = subseed(opts.seed, 0x10000 + static_cast<std::uint64_t>(k));
        std::mt19937_64 rng(s);
        const sparse_bool_matrix m = random_matrix(rng, 30);
        const std::int64_t primary = f2_rank(m);
        const std::int64_t reference = dense_rank_reference(m);
        const std::int64_t transposed = f2_rank(m.transposed());
        if (primary != reference)
            rep.failures.push_back("f2 rank " + std::to_string(primary) + " != dense reference " +
                                   std::to_string(reference) + " (seed " + std::to_string(s) + ")");
        if (primary != transposed)
            rep.failures.push_back("f2 rank changes under transpose (seed " + std::to_string(s) + ")");
        ++rep.f2_checks;
    }

    // closed formulas against the triangulation for every shape in range
    for (int g = 0; g <= 3 && rep.failures.size() < 32; ++g)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= b; ++c) {
                const surface_piece piece{g, b, c, 0};
                const betti_triple formula = rel_betti(piece);
                const betti_triple oracle = simplicial_oracle(piece);
                if (formula != oracle)
                    rep.failures.push_back("surface ranks disagree at genus " + std::to_string(g) +
                                           ", boundaries " + std::to_string(b) + ", collapsed " +
                                           std::to_string(c));
                if (formula.h0 - formula.h1 + formula.h2 != piece.euler_characteristic())
                    rep.failures.push_back("surface Euler characteristic mismatch at genus " +
                                           std::to_string(g) + ", boundaries " + std::to_string(b) +
                                           ", collapsed " + std::to_string(c));
                ++rep.surface_checks;
            }

    // chain complex axioms and deconvolution on random diagrams
    const std::int64_t grid_iters = std::min<std::int64_t>(opts.iterations, 100);
    for (std::int64_t k = 0; k < grid_iters; ++k) {
        const std::uint64_t s = subseed(opts.seed, 0x20000 + static_cast<std::uint64_t>(k));
        std::mt19937_64 rng(s);
        const int n = 2 + static_cast<int>(draw(rng, 5));
        const grid_diagram g = random_grid(rng, n);
        try {
            const auto complexes = tilde_complex(g); // validates boundary^2 == 0
            bigraded_ranks tilde;
            for (const auto& [a, complex] : complexes) {
                std::int64_t chain_euler = 0, homology_euler = 0;
                for (const auto& [m, block] : complex.blocks)
                    chain_euler += (m % 2 == 0 ? 1 : -1) * block.dim;
                for (const auto& [m, h] : homology_ranks(complex)) {
                    homology_euler += (m % 2 == 0 ? 1 : -1) * h;
                    tilde.add(m, a, h);
                }
                if (chain_euler != homology_euler)
                    rep.failures.push_back("Euler characteristic not preserved by homology (seed " +
                                           std::to_string(s) + ")");
            }
            const bigraded_ranks hat = hat_from_tilde(tilde, g.n);
            const auto totals = hat.alexander_totals();
            for (const auto& [a, t] : totals)
                if (t != hat.total_at_alexander(-a)) {
                    rep.failures.push_back("hat table breaks Alexander symmetry (seed " +
                                           std::to_string(s) + ")");
                    break;
                }
        } catch (const std::exception& e) {
            rep.failures.push_back(std::string("grid check failed: ") + e.what() + " (seed " +
                                   std::to_string(s) + ")");
        }
        ++rep.grid_checks;
    }

    // decomposition identities, fanned out across threads
    const std::int64_t dec_iters = opts.iterations;
    std::vector<std::string> dec_failures(static_cast<std::size_t>(dec_iters));
    const int threads = std::max(1, opts.threads);
    auto dec_task = [&](std::int64_t k) {
        const std::uint64_t s = subseed(opts.seed, 0x30000 + static_cast<std::uint64_t>(k));
        try {
            const decomposition d = random_decomposition(s);
            const fixed_point_report r = verify_bound(d);
            if (!r.all_ok())
                dec_failures[static_cast<std::size_t>(k)] =
                    "decomposition identities failed (seed " + std::to_string(s) + ")";
        } catch (const std::exception& e) {
            dec_failures[static_cast<std::size_t>(k)] =
                std::string("decomposition check failed: ") + e.what() + " (seed " + std::to_string(s) + ")";
        }
    };
    if (threads <= 1) {
        for (std::int64_t k = 0; k < dec_iters; ++k) dec_task(k);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t k = next.fetch_add(1);
                    if (k >= dec_iters) return;
                    dec_task(k);
                }
            });
        for (auto& th : pool) th.join();
    }
    rep.decomposition_checks = dec_iters;
    for (const auto& f : dec_failures)
        if (!f.empty()) rep.failures.push_back(f);

    return rep;
}

} // namespace floerfp
