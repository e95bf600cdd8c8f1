// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Run via ctest or directly:
//   acceptance_tests --cli <path-to-floerfp> --data <path-to-data-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "floerfp/grid_hfk.hpp"
#include "floerfp/mapclass.hpp"
#include "floerfp/mapclass_io.hpp"
#include "floerfp/oracles.hpp"
#include "floerfp/surface_homology.hpp"

using namespace floerfp;

namespace {

std::string g_cli = "./floerfp";
std::string g_data = "data";
int g_failures = 0;

struct check_context {
    std::ostringstream problems;
    template <typename A, typename B>
    void equal(const A& actual, const B& expected, const std::string& what) {
        if (!(actual == static_cast<A>(expected)))
            problems << "    " << what << ": got " << actual << ", expected " << expected << "\n";
    }
    void require(bool ok, const std::string& what) {
        if (!ok) problems << "    " << what << "\n";
    }
};

void criterion(const std::string& name, double time_limit_seconds,
               const std::function<void(check_context&)>& body) {
    check_context ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(ctx);
    } catch (const std::exception& e) {
        ctx.problems << "    exception: " << e.what() << "\n";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_seconds)
        ctx.problems << "    time limit exceeded: " << elapsed << " s > " << time_limit_seconds << " s\n";
    const std::string problems = ctx.problems.str();
    const bool pass = problems.empty();
    if (!pass) ++g_failures;
    std::printf("%s  %-55s (%.2f s, limit %g s)\n", pass ? "PASS" : "FAIL", name.c_str(), elapsed,
                time_limit_seconds);
    if (!pass) std::fputs(problems.c_str(), stdout);
    std::fflush(stdout);
}

hfk_result hfk_of(const std::string& file) {
    return compute_hfk(load_grid_file(g_data + "/" + file));
}

std::string run_cli(const std::string& args, int& exit_code) {
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe.release());
    exit_code = WEXITSTATUS(status);
    return out;
}

bigraded_ranks table_of(std::initializer_list<std::tuple<int, int, std::int64_t>> rows) {
    bigraded_ranks t;
    for (const auto& [m, a, r] : rows) t.add(m, a, r);
    return t;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        const std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[++i];
        if (flag == "--data") g_data = argv[++i];
    }

    criterion("unknot grids n=2,3,4: single class at the origin", 1.0, [](check_context& ctx) {
        for (const std::string file : {"unknot_n2.grid", "unknot_n3.grid", "unknot_n4.grid"}) {
            const hfk_result res = hfk_of(file);
            ctx.require(res.hat == table_of({{0, 0, 1}}), file + ": hat table is exactly {(0,0): 1}");
            ctx.equal(genus(res.hat), 0, file + ": genus");
            ctx.require(is_fibered(res.hat), file + ": fibered");
            const auto fp = fixed_point_bound(res.hat);
            ctx.require(fp.applicable && !fp.contradiction, file + ": bound applies");
            ctx.equal(fp.bound, 0, file + ": bound");
        }
    });

    criterion("trefoil grid n=5: ranks (1,1,1), r=1, bound 0", 5.0, [](check_context& ctx) {
        const hfk_result res = hfk_of("trefoil_n5.grid");
        const std::map<int, std::int64_t> expected{{1, 1}, {0, 1}, {-1, 1}};
        ctx.require(res.hat.alexander_totals() == expected, "Alexander ranks (1,1,1) at a=(1,0,-1)");
        ctx.equal(genus(res.hat), 1, "genus");
        ctx.require(is_fibered(res.hat), "fibered");
        const auto fp = fixed_point_bound(res.hat);
        ctx.equal(fp.r, 1, "r");
        ctx.equal(fp.bound, 0, "bound");
    });

    criterion("figure-eight grid n=6: ranks (1,3,1), bound 2", 30.0, [](check_context& ctx) {
        const hfk_result res = hfk_of("figure8_n6.grid");
        const std::map<int, std::int64_t> expected{{1, 1}, {0, 3}, {-1, 1}};
        ctx.require(res.hat.alexander_totals() == expected, "Alexander ranks (1,3,1)");
        const auto fp = fixed_point_bound(res.hat);
        ctx.equal(fp.r, 3, "r");
        ctx.equal(fp.bound, 2, "bound");
    });

    criterion("(5,2) torus knot grid n=7: genus 2, fibered, r=1, bound 0", 300.0,
              [](check_context& ctx) {
                  const hfk_result res = hfk_of("t52_n7.grid");
                  ctx.equal(genus(res.hat), 2, "genus");
                  ctx.require(is_fibered(res.hat), "fibered");
                  const auto fp = fixed_point_bound(res.hat);
                  ctx.equal(fp.r, 1, "r");
                  ctx.equal(fp.bound, 0, "bound");
              });

    criterion("Kunneth: trefoil*trefoil equals the n=9 connected-sum grid", 1800.0,
              [](check_context& ctx) {
                  const hfk_result trefoil = hfk_of("trefoil_n5.grid");
                  const bigraded_ranks convolved = kunneth_convolve(trefoil.hat, trefoil.hat);

                  hfk_options opts;
                  opts.threads = 0; // the performance path
                  const hfk_result sum = compute_hfk(load_grid_file(g_data + "/trefoil_sum_n9.grid"), opts);
                  ctx.require(sum.hat == convolved, "grid table equals the convolution");
                  const std::map<int, std::int64_t> expected{{2, 1}, {1, 2}, {0, 3}, {-1, 2}, {-2, 1}};
                  ctx.require(sum.hat.alexander_totals() == expected, "total ranks (1,2,3,2,1)");
              });

    criterion("flip-twist correction: corrected 2, uncorrected 0, N=2, L=2", 1.0,
              [](check_context& ctx) {
                  const decomposition d = load_decomposition_file(g_data + "/flip_twist_swap.json");
                  d.validate();
                  ctx.equal(hf_symp_rank(d).total(), 2, "corrected rank");
                  ctx.equal(hf_symp_rank_uncorrected(d), 0, "uncorrected rank");
                  ctx.equal(nielsen_number(d), 2, "Nielsen number");
                  ctx.equal(lefschetz_number(d), 2, "Lefschetz number");
                  ctx.require(verify_bound(d).all_ok(), "identity checks");
              });

    criterion("randomized identities on 1000 seeds: zero violations", 60.0, [](check_context& ctx) {
        int violations = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const decomposition d = random_decomposition(seed);
            d.validate();
            const fixed_point_report rep = verify_bound(d);
            if (!rep.all_ok()) ++violations;
            if (rep.rank_corrected - rep.rank_uncorrected != 2 * d.flip_twist_annuli()) ++violations;
        }
        ctx.equal(violations, 0, "violations");
    });

    criterion("oracle suites: rank, surface, boundary axiom, stabilization", 120.0,
              [](check_context& ctx) {
                  std::mt19937_64 rng(42);
                  for (int trial = 0; trial < 50; ++trial) {
                      std::vector<std::pair<int, int>> positions;
                      for (int r = 0; r < 20; ++r)
                          for (int c = 0; c < 20; ++c)
                              if (draw(rng, 8) < 2) positions.emplace_back(r, c);
                      const auto m = sparse_bool_matrix::from_positions_mod2(20, 20, positions);
                      if (f2_rank(m) != dense_rank_reference(m)) ctx.require(false, "rank oracle mismatch");
                  }
                  for (int g = 0; g <= 3; ++g)
                      for (int b = 0; b <= 4; ++b)
                          for (int c = 0; c <= b; ++c)
                              if (rel_betti({g, b, c, 0}) != simplicial_oracle({g, b, c, 0}))
                                  ctx.require(false, "surface oracle mismatch at genus " +
                                                         std::to_string(g) + " boundaries " +
                                                         std::to_string(b) + " collapsed " +
                                                         std::to_string(c));
                  for (int trial = 0; trial < 100; ++trial) {
                      const int n = 2 + static_cast<int>(draw(rng, 5));
                      const grid_diagram g = random_grid(rng, n);
                      try {
                          tilde_complex(g);
                      } catch (const std::exception& e) {
                          ctx.require(false, std::string("boundary axiom: ") + e.what());
                      }
                  }
                  for (int trial = 0; trial < 20; ++trial) {
                      const int n = 2 + static_cast<int>(draw(rng, 4));
                      const grid_diagram g = random_grid(rng, n);
                      const grid_diagram s = stabilize(g, static_cast<int>(draw(rng, static_cast<std::uint64_t>(n))));
                      if (compute_hfk(s).hat != compute_hfk(g).hat)
                          ctx.require(false, "stabilization changed the hat table");
                  }
              });

    criterion("determinism: byte-identical output across runs and thread counts", 600.0,
              [](check_context& ctx) {
                  const std::vector<std::pair<std::string, std::string>> commands = {
                      {"hfk", "hfk " + g_data + "/trefoil_n5.grid"},
                      {"hfk --json", "hfk " + g_data + "/figure8_n6.grid --json"},
                      {"bound", "bound " + g_data + "/t52_n7.grid"},
                      {"kunneth",
                       "kunneth " + g_data + "/trefoil_n5.grid " + g_data + "/trefoil_n5.grid"},
                      {"mapclass", "mapclass " + g_data + "/flip_twist_swap.json"},
                      {"mapclass --json", "mapclass " + g_data + "/identity_genus2.json --json"},
                      {"selftest", "selftest --seed 7 --iters 50"},
                  };
                  for (const auto& [label, base] : commands) {
                      int code1 = 0, code2 = 0, code8 = 0, code8b = 0;
                      const bool threaded = label.rfind("mapclass", 0) != 0;
                      const std::string t1 = threaded ? base + " --threads 1" : base;
                      const std::string t8 = threaded ? base + " --threads 8" : base;
                      const std::string out1 = run_cli(t1, code1);
                      const std::string out2 = run_cli(t1, code2);
                      const std::string out8 = run_cli(t8, code8);
                      const std::string out8b = run_cli(t8, code8b);
                      ctx.require(!out1.empty(), label + ": produced output");
                      ctx.require(out1 == out2, label + ": identical across repeated runs");
                      ctx.require(out8 == out8b, label + ": identical across repeated threaded runs");
                      ctx.require(out1 == out8, label + ": identical across thread counts");
                      ctx.require(code1 == 0 && code2 == 0 && code8 == 0 && code8b == 0,
                                  label + ": exit code 0");
                  }
              });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
    return g_failures == 0 ? 0 : 1;
}
