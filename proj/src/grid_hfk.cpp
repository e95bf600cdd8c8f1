#include "floerfp/grid_hfk.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>

namespace floerfp {

void bigraded_ranks::add(int maslov, int alexander, std::int64_t rank) {
    if (rank < 0) throw input_error("negative rank in bigraded table");
    if (rank == 0) return;
    entries[{maslov, alexander}] += rank;
}

std::int64_t bigraded_ranks::at(int maslov, int alexander) const {
    auto it = entries.find({maslov, alexander});
    return it == entries.end() ? 0 : it->second;
}

std::int64_t bigraded_ranks::total() const {
    std::int64_t t = 0;
    for (const auto& [ma, r] : entries) t += r;
    return t;
}

std::int64_t bigraded_ranks::total_at_alexander(int alexander) const {
    std::int64_t t = 0;
    for (const auto& [ma, r] : entries)
        if (ma.second == alexander) t += r;
    return t;
}

std::map<int, std::int64_t> bigraded_ranks::alexander_totals() const {
    std::map<int, std::int64_t> t;
    for (const auto& [ma, r] : entries) t[ma.second] += r;
    return t;
}

bigraded_ranks bigraded_ranks::mirrored() const {
    bigraded_ranks m;
    for (const auto& [ma, r] : entries) m.entries[{-ma.first, -ma.second}] = r;
    return m;
}

// ---------------------------------------------------------------------------
// gradings

bigrading generator_bigrading(const grid_diagram& g, std::span<const int> gen) {
    const int n = g.n;
    if (static_cast<int>(gen.size()) != n) throw input_error("generator size does not match grid");
    {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int r : gen) {
            if (r < 0 || r >= n || seen[static_cast<std::size_t>(r)])
                throw input_error("generator is not a permutation");
            seen[static_cast<std::size_t>(r)] = true;
        }
    }

    // dominance counts between the generator point set and a mark set;
    // marks sit at half-integer offsets
    auto maslov_against = [&](const std::vector<int>& marks) {
        int i_gg = 0, i_gm = 0, i_mg = 0, i_mm = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (gen[static_cast<std::size_t>(i)] < gen[static_cast<std::size_t>(j)]) ++i_gg;
        for (int c = 0; c < n; ++c) {
            const int r = gen[static_cast<std::size_t>(c)];
            for (int mr = 0; mr < n; ++mr) {
                const int mc = marks[static_cast<std::size_t>(mr)];
                if (c <= mc && r <= mr) ++i_gm;
                if (mc < c && mr < r) ++i_mg;
            }
        }
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2)
                if (marks[static_cast<std::size_t>(r1)] < marks[static_cast<std::size_t>(r2)]) ++i_mm;
        return i_gg - i_gm - i_mg + i_mm + 1;
    };

    const int m_o = maslov_against(g.o_marks);
    const int m_x = maslov_against(g.x_marks);
    const int a2 = m_o - m_x - (n - 1);
    if (a2 % 2 != 0)
        throw input_error("non-integral Alexander grading: diagram does not encode a knot");
    return {m_o, a2 / 2};
}

grading_tables::grading_tables(const grid_diagram& g) : n(g.n) {
    auto count_pairs = [&](const std::vector<int>& marks) {
        int c = 0;
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2)
                if (marks[static_cast<std::size_t>(r1)] < marks[static_cast<std::size_t>(r2)]) ++c;
        return c;
    };
    const_o = count_pairs(g.o_marks) + 1;
    const_x = count_pairs(g.x_marks) + 1;
    below_o.assign(static_cast<std::size_t>(n) * n, 0);
    above_o.assign(static_cast<std::size_t>(n) * n, 0);
    below_x.assign(static_cast<std::size_t>(n) * n, 0);
    above_x.assign(static_cast<std::size_t>(n) * n, 0);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
            int bo = 0, ao = 0, bx = 0, ax = 0;
            for (int mr = 0; mr < n; ++mr) {
                const int oc = g.o_marks[static_cast<std::size_t>(mr)];
                const int xc = g.x_marks[static_cast<std::size_t>(mr)];
                if (c <= oc && r <= mr) ++bo;
                if (oc < c && mr < r) ++ao;
                if (c <= xc && r <= mr) ++bx;
                if (xc < c && mr < r) ++ax;
            }
            const std::size_t k = static_cast<std::size_t>(c) * n + r;
            below_o[k] = bo;
            above_o[k] = ao;
            below_x[k] = bx;
            above_x[k] = ax;
        }
}

bigrading grading_tables::of(std::span<const int> gen) const {
    int i_gg = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gen[static_cast<std::size_t>(i)] < gen[static_cast<std::size_t>(j)]) ++i_gg;
    int so = 0, sx = 0;
    for (int c = 0; c < n; ++c) {
        const std::size_t k = static_cast<std::size_t>(c) * n + gen[static_cast<std::size_t>(c)];
        so += below_o[k] + above_o[k];
        sx += below_x[k] + above_x[k];
    }
    const int m_o = i_gg - so + const_o;
    const int m_x = i_gg - sx + const_x;
    const int a2 = m_o - m_x - (n - 1);
    if (a2 % 2 != 0)
        throw input_error("non-integral Alexander grading: diagram does not encode a knot");
    return {m_o, a2 / 2};
}

// ---------------------------------------------------------------------------
// the fully blocked complex

namespace {

// Emptiness of the four torus rectangle shapes with respect to the marks,
// indexed by (c0, r0, c1, r1) with c0 < c1, r0 < r1:
//   shape 0: columns [c0,c1) x rows [r0,r1)
//   shape 1: complement in both directions
//   shape 2: columns [c0,c1), rows outside [r0,r1)
//   shape 3: columns outside [c0,c1), rows [r0,r1)
struct mark_free_tables {
    int n;
    std::vector<std::uint8_t> free; // [shape][c0][r0][c1][r1]

    explicit mark_free_tables(const grid_diagram& g) : n(g.n) {
        free.assign(4ull * n * n * n * n, 1);
        auto block = [&](int shape, int mc, int mr) {
            for (int c0 = 0; c0 < n; ++c0)
                for (int c1 = c0 + 1; c1 < n; ++c1) {
                    const bool col_in = c0 <= mc && mc < c1;
                    const bool cols = (shape == 0 || shape == 2) ? col_in : !col_in;
                    if (!cols) continue;
                    for (int r0 = 0; r0 < n; ++r0)
                        for (int r1 = r0 + 1; r1 < n; ++r1) {
                            const bool row_in = r0 <= mr && mr < r1;
                            const bool rows = (shape == 0 || shape == 3) ? row_in : !row_in;
                            if (rows) free[index(shape, c0, r0, c1, r1)] = 0;
                        }
                }
        };
        for (int r = 0; r < n; ++r)
            for (int shape = 0; shape < 4; ++shape) {
                block(shape, g.x_marks[static_cast<std::size_t>(r)], r);
                block(shape, g.o_marks[static_cast<std::size_t>(r)], r);
            }
    }

    std::size_t index(int shape, int c0, int r0, int c1, int r1) const {
        return (((static_cast<std::size_t>(shape) * n + c0) * n + r0) * n + c1) * n + r1;
    }
    bool at(int shape, int c0, int r0, int c1, int r1) const {
        return free[index(shape, c0, r0, c1, r1)] != 0;
    }
};

struct permutation_codec {
    int n;
    std::vector<std::uint64_t> fact;

    explicit permutation_codec(int n_) : n(n_), fact(static_cast<std::size_t>(n_) + 1, 1) {
        for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * i;
    }

    std::uint64_t rank(std::span<const int> p) const {
        std::uint64_t r = 0;
        for (int i = 0; i < n; ++i) {
            int smaller_later = 0;
            for (int j = i + 1; j < n; ++j)
                if (p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)]) ++smaller_later;
            r += static_cast<std::uint64_t>(smaller_later) * fact[static_cast<std::size_t>(n - 1 - i)];
        }
        return r;
    }

    void unrank(std::uint64_t r, std::vector<int>& out) const {
        out.resize(static_cast<std::size_t>(n));
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t f = fact[static_cast<std::size_t>(n - 1 - i)];
            const std::size_t k = static_cast<std::size_t>(r / f);
            r %= f;
            out[static_cast<std::size_t>(i)] = pool[k];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
};

// Targets y with <d x, y> = 1: for each transposition the two candidate
// rectangles from x are tested for marks and interior generator points; an
// odd count contributes an edge.
template <typename Visit>
void for_each_differential(const std::vector<int>& p, const mark_free_tables& marks, Visit&& visit) {
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int a = p[static_cast<std::size_t>(i)];
            const int b = p[static_cast<std::size_t>(j)];
            bool rect1, rect2;
            if (a < b) {
                rect1 = marks.at(0, i, a, j, b);
                for (int k = i + 1; k < j && rect1; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (a < v && v < b) rect1 = false;
                }
                rect2 = marks.at(1, i, a, j, b);
                for (int k = 0; k < i && rect2; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (v < a || v > b) rect2 = false;
                }
                for (int k = j + 1; k < n && rect2; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (v < a || v > b) rect2 = false;
                }
            } else {
                rect1 = marks.at(2, i, b, j, a);
                for (int k = i + 1; k < j && rect1; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (v < b || v > a) rect1 = false;
                }
                rect2 = marks.at(3, i, b, j, a);
                for (int k = 0; k < i && rect2; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (b < v && v < a) rect2 = false;
                }
                for (int k = j + 1; k < n && rect2; ++k) {
                    const int v = p[static_cast<std::size_t>(k)];
                    if (b < v && v < a) rect2 = false;
                }
            }
            if (rect1 != rect2) visit(i, j);
        }
    }
}

struct generator_census {
    std::vector<std::int16_t> maslov_of;        // by lexicographic rank
    std::map<int, std::vector<std::uint32_t>> by_alexander; // ranks, ascending
};

generator_census enumerate_generators(const grid_diagram& g, const grading_tables& tables) {
    generator_census census;
    const std::uint64_t count = permutation_codec(g.n).fact[static_cast<std::size_t>(g.n)];
    census.maslov_of.resize(count);
    std::vector<int> p(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) p[static_cast<std::size_t>(i)] = i;
    std::uint64_t r = 0;
    do {
        const bigrading mg = tables.of(p);
        census.maslov_of[r] = static_cast<std::int16_t>(mg.maslov);
        census.by_alexander[mg.alexander].push_back(static_cast<std::uint32_t>(r));
        ++r;
    } while (std::next_permutation(p.begin(), p.end()));
    return census;
}

// One Alexander block as a Maslov-graded complex.
graded_complex build_block(const mark_free_tables& marks, const permutation_codec& codec,
                           const generator_census& census, int alexander) {
    const auto& members = census.by_alexander.at(alexander);

    // local cell index of each member inside its Maslov cell
    std::map<int, std::int64_t> cell_size;
    std::vector<std::uint32_t> cell_index(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const int m = census.maslov_of[members[i]];
        cell_index[i] = static_cast<std::uint32_t>(cell_size[m]++);
    }

    std::map<int, std::vector<std::pair<int, int>>> positions; // maslov -> (row, col)
    std::vector<int> p;
    std::vector<int> y;
    for (std::size_t i = 0; i < members.size(); ++i) {
        codec.unrank(members[i], p);
        const int m = census.maslov_of[members[i]];
        for_each_differential(p, marks, [&](int ci, int cj) {
            y = p;
            std::swap(y[static_cast<std::size_t>(ci)], y[static_cast<std::size_t>(cj)]);
            const std::uint64_t ry = codec.rank(y);
            auto it = std::lower_bound(members.begin(), members.end(), static_cast<std::uint32_t>(ry));
            if (it == members.end() || *it != ry)
                throw invariant_error("differential leaves its Alexander block");
            if (census.maslov_of[ry] != m - 1)
                throw invariant_error("differential does not drop the Maslov grading by one");
            positions[m].emplace_back(static_cast<int>(cell_index[static_cast<std::size_t>(it - members.begin())]),
                                      static_cast<int>(cell_index[i]));
        });
    }

    graded_complex complex;
    for (const auto& [m, dim] : cell_size) {
        auto lower = cell_size.find(m - 1);
        const int lower_dim = lower == cell_size.end() ? 0 : static_cast<int>(lower->second);
        auto pos = positions.find(m);
        complex.blocks[m] = {dim, sparse_bool_matrix::from_positions_mod2(
                                      lower_dim, static_cast<int>(dim),
                                      pos == positions.end() ? std::vector<std::pair<int, int>>{} : pos->second)};
    }
    return complex;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void check_size(const grid_diagram& g, const hfk_options& opts) {
    if (g.n > 12)
        throw input_error("grid size " + std::to_string(g.n) + " exceeds the hard limit of 12");
    if (g.n > opts.max_grid)
        throw input_error("grid size " + std::to_string(g.n) + " exceeds the cap of " +
                          std::to_string(opts.max_grid) + " (raise with --max-grid)");
}

} // namespace

std::map<int, graded_complex> tilde_complex(const grid_diagram& g) {
    g.validate();
    const grading_tables tables(g);
    const mark_free_tables marks(g);
    const permutation_codec codec(g.n);
    const generator_census census = enumerate_generators(g, tables);
    std::map<int, graded_complex> out;
    for (const auto& [a, members] : census.by_alexander) {
        out[a] = build_block(marks, codec, census, a);
        out[a].validate();
    }
    return out;
}

bigraded_ranks tilde_homology(const grid_diagram& g, const hfk_options& opts) {
    g.validate();
    check_size(g, opts);
    const grading_tables tables(g);
    const mark_free_tables marks(g);
    const permutation_codec codec(g.n);
    const generator_census census = enumerate_generators(g, tables);

    std::vector<int> alexanders;
    for (const auto& [a, members] : census.by_alexander) alexanders.push_back(a);

    std::vector<std::map<int, std::int64_t>> block_ranks(alexanders.size());
    const int threads = std::min<int>(resolve_threads(opts.threads), static_cast<int>(alexanders.size()));
    if (threads <= 1) {
        for (std::size_t t = 0; t < alexanders.size(); ++t)
            block_ranks[t] = homology_ranks(build_block(marks, codec, census, alexanders[t]));
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= alexanders.size()) return;
                    try {
                        block_ranks[i] = homology_ranks(build_block(marks, codec, census, alexanders[i]));
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    bigraded_ranks out;
    for (std::size_t t = 0; t < alexanders.size(); ++t)
        for (const auto& [m, h] : block_ranks[t]) out.add(m, alexanders[t], h);
    return out;
}

bigraded_ranks hat_from_tilde(const bigraded_ranks& tilde, int n) {
    if (n < 2) throw input_error("grid size must be at least 2");
    std::vector<std::int64_t> binom(static_cast<std::size_t>(n), 1);
    for (int k = 1; k < n; ++k)
        binom[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k - 1)] * (n - k) / k;

    std::map<std::pair<int, int>, std::int64_t> rem; // (alexander, maslov) -> count
    for (const auto& [ma, r] : tilde.entries) rem[{ma.second, ma.first}] = r;

    bigraded_ranks hat;
    // top Alexander grading downward; higher-Alexander contributions are
    // fully peeled before lower gradings are read
    for (auto it = rem.rbegin(); it != rem.rend(); ++it) {
        const auto [a, m] = it->first;
        const std::int64_t v = it->second;
        if (v == 0) continue;
        if (v < 0)
            throw input_error("rank table does not deconvolve: negative remainder at maslov " +
                              std::to_string(m) + ", alexander " + std::to_string(a));
        hat.add(m, a, v);
        for (int k = 0; k < n; ++k) rem[{a - k, m - k}] -= v * binom[static_cast<std::size_t>(k)];
        if (rem[{a, m}] != 0) throw invariant_error("deconvolution failed to clear its own entry");
    }
    for (const auto& [am, v] : rem)
        if (v != 0)
            throw input_error("rank table does not deconvolve: leftover at alexander " +
                              std::to_string(am.first) + ", maslov " + std::to_string(am.second));
    return hat;
}

hfk_result compute_hfk(const grid_diagram& g, const hfk_options& opts) {
    hfk_result res;
    res.n = g.n;
    res.tilde = tilde_homology(g, opts);
    res.hat = hat_from_tilde(res.tilde, g.n);
    return res;
}

int genus(const bigraded_ranks& hat) {
    if (hat.empty()) throw input_error("empty rank table has no genus");
    int top = 0;
    bool first = true;
    for (const auto& [ma, r] : hat.entries) {
        if (first || ma.second > top) top = ma.second;
        first = false;
    }
    return top;
}

bool is_fibered(const bigraded_ranks& hat) {
    return hat.total_at_alexander(genus(hat)) == 1;
}

fixed_point_bound_result fixed_point_bound(const bigraded_ranks& hat) {
    fixed_point_bound_result res;
    if (hat.empty() || !is_fibered(hat)) return res;
    res.applicable = true;
    res.genus = genus(hat);
    res.r = hat.total_at_alexander(res.genus - 1);
    if (res.genus == 0) {
        // disk fiber: the trivial monodromy already has a fixed-point free
        // representative on the open page
        res.bound = 0;
        return res;
    }
    if (res.r == 0) {
        res.contradiction = true;
        return res;
    }
    res.bound = res.r - 1;
    return res;
}

bigraded_ranks kunneth_convolve(const bigraded_ranks& a, const bigraded_ranks& b) {
    bigraded_ranks out;
    for (const auto& [ma1, r1] : a.entries)
        for (const auto& [ma2, r2] : b.entries)
            out.add(ma1.first + ma2.first, ma1.second + ma2.second, r1 * r2);
    return out;
}

} // namespace floerfp
