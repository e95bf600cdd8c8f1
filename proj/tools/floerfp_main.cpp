#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "floerfp/grid_hfk.hpp"
#include "floerfp/mapclass.hpp"
#include "floerfp/mapclass_io.hpp"
#include "floerfp/selftest.hpp"

namespace {

using floerfp::bigraded_ranks;
using floerfp::fixed_point_bound_result;
using nlohmann::ordered_json;

// rows in decreasing Alexander, then decreasing Maslov order
std::vector<std::tuple<int, int, std::int64_t>> table_rows(const bigraded_ranks& table) {
    std::vector<std::tuple<int, int, std::int64_t>> rows;
    for (const auto& [ma, r] : table.entries) rows.emplace_back(ma.second, ma.first, r);
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
        return std::get<1>(x) > std::get<1>(y);
    });
    return rows;
}

void print_table(std::ostream& out, const bigraded_ranks& table) {
    out << "  alexander  maslov  rank\n";
    for (const auto& [a, m, r] : table_rows(table))
        out << std::setw(11) << a << std::setw(8) << m << std::setw(6) << r << "\n";
}

ordered_json table_json(const bigraded_ranks& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& [a, m, r] : table_rows(table)) {
        ordered_json row;
        row["alexander"] = a;
        row["maslov"] = m;
        row["rank"] = r;
        rows.push_back(row);
    }
    return rows;
}

void print_summary(std::ostream& out, const bigraded_ranks& hat) {
    const fixed_point_bound_result fp = floerfp::fixed_point_bound(hat);
    out << "summary:\n";
    out << "  genus: " << floerfp::genus(hat) << "\n";
    out << "  fibered: " << (floerfp::is_fibered(hat) ? "yes" : "no") << "\n";
    if (!fp.applicable) {
        out << "  bound: not applicable (requires a fibered knot)\n";
        return;
    }
    out << "  r: " << fp.r << "\n";
    if (fp.contradiction)
        out << "  bound: contradiction (no rank below the top grading)\n";
    else
        out << "  bound: " << fp.bound << "\n";
}

ordered_json summary_json(const bigraded_ranks& hat) {
    const fixed_point_bound_result fp = floerfp::fixed_point_bound(hat);
    ordered_json s;
    s["genus"] = floerfp::genus(hat);
    s["fibered"] = floerfp::is_fibered(hat);
    s["applicable"] = fp.applicable;
    if (fp.applicable) {
        s["contradiction"] = fp.contradiction;
        s["r"] = fp.r;
        if (!fp.contradiction) s["bound"] = fp.bound;
    }
    return s;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int run_hfk(const std::string& path, bool json, bool summary_only, int threads, int max_grid) {
    const floerfp::grid_diagram g = floerfp::load_grid_file(path);
    floerfp::hfk_options opts;
    opts.threads = threads;
    opts.max_grid = max_grid;
    const floerfp::hfk_result res = floerfp::compute_hfk(g, opts);
    if (json) {
        ordered_json j;
        j["command"] = summary_only ? "bound" : "hfk";
        j["file"] = path;
        j["n"] = res.n;
        if (!summary_only) {
            j["table"] = table_json(res.hat);
            j["mirror_table"] = table_json(res.hat.mirrored());
        }
        j["summary"] = summary_json(res.hat);
        emit(j);
        return 0;
    }
    std::cout << "file: " << path << "\n";
    std::cout << "n: " << res.n << "\n\n";
    if (!summary_only) {
        std::cout << "hat homology ranks:\n";
        print_table(std::cout, res.hat);
        std::cout << "\nmirror table:\n";
        print_table(std::cout, res.hat.mirrored());
        std::cout << "\n";
    }
    print_summary(std::cout, res.hat);
    return 0;
}

int run_kunneth(const std::string& path1, const std::string& path2, bool json, int threads,
                int max_grid) {
    floerfp::hfk_options opts;
    opts.threads = threads;
    opts.max_grid = max_grid;
    const floerfp::hfk_result r1 = floerfp::compute_hfk(floerfp::load_grid_file(path1), opts);
    const floerfp::hfk_result r2 = floerfp::compute_hfk(floerfp::load_grid_file(path2), opts);
    const bigraded_ranks conv = floerfp::kunneth_convolve(r1.hat, r2.hat);
    if (json) {
        ordered_json j;
        j["command"] = "kunneth";
        j["files"] = {path1, path2};
        j["table"] = table_json(conv);
        j["summary"] = summary_json(conv);
        emit(j);
        return 0;
    }
    std::cout << "file: " << path1 << "\n";
    std::cout << "file: " << path2 << "\n\n";
    std::cout << "connected sum table:\n";
    print_table(std::cout, conv);
    std::cout << "\n";
    print_summary(std::cout, conv);
    return 0;
}

int run_mapclass(const std::string& path, bool json) {
    const floerfp::decomposition d = floerfp::load_decomposition_file(path);
    const std::vector<std::string> warnings = d.validate();
    const floerfp::rank_breakdown breakdown = floerfp::hf_symp_rank(d);
    const floerfp::fixed_point_report rep = floerfp::verify_bound(d);

    if (json) {
        ordered_json j;
        j["command"] = "mapclass";
        j["file"] = path;
        j["warnings"] = warnings;
        ordered_json summands;
        summands["sigma_a"] = breakdown.sigma_a;
        summands["sigma_b"] = ordered_json::array();
        for (const auto& [p, parts] : breakdown.sigma_b) {
            ordered_json row;
            row["p"] = p;
            row["homology"] = parts.first;
            row["prong_term"] = parts.second;
            summands["sigma_b"].push_back(row);
        }
        summands["sigma_c"] = ordered_json::array();
        for (const auto& [q, parts] : breakdown.sigma_c) {
            ordered_json row;
            row["q"] = q;
            row["homology"] = parts.first;
            row["prong_term"] = parts.second;
            summands["sigma_c"].push_back(row);
        }
        summands["periodic_lefschetz"] = breakdown.periodic_lefschetz;
        summands["flip_twist"] = breakdown.flip_twist;
        summands["pa_chain"] = breakdown.pa_chain;
        j["summands"] = summands;
        j["totals"] = {{"corrected", rep.rank_corrected}, {"uncorrected", rep.rank_uncorrected}};
        j["nielsen_number"] = rep.nielsen;
        j["lefschetz_number"] = rep.lefschetz;
        ordered_json classes = ordered_json::array();
        for (const auto& [label, index] : rep.class_indices) {
            ordered_json row;
            row["class"] = label;
            row["index"] = index;
            classes.push_back(row);
        }
        j["classes"] = classes;
        j["checks"] = {{"nielsen_bounded", rep.nielsen_bounded},
                       {"slack", rep.slack},
                       {"correction_matches", rep.correction_matches},
                       {"annulus_lefschetz_matches", rep.annulus_lefschetz_matches},
                       {"lefschetz_consistent", rep.lefschetz_consistent}};
        j["ok"] = rep.all_ok();
        emit(j);
        return rep.all_ok() ? 0 : 1;
    }

    std::cout << "file: " << path << "\n";
    for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
    std::cout << "\nsummand ranks:\n";
    std::cout << "  fixed pieces away from pseudo-Anosov components: " << breakdown.sigma_a << "\n";
    for (const auto& [p, parts] : breakdown.sigma_b)
        std::cout << "  fixed pieces meeting one pseudo-Anosov boundary, p=" << p << ": homology "
                  << parts.first << ", prong term " << parts.second << "\n";
    for (const auto& [q, parts] : breakdown.sigma_c)
        std::cout << "  fixed pieces meeting several pseudo-Anosov boundaries, q=" << q << ": homology "
                  << parts.first << ", prong term " << parts.second << "\n";
    std::cout << "  periodic pieces (Lefschetz): " << breakdown.periodic_lefschetz << "\n";
    std::cout << "  flip-twist annuli (2 n_f): " << breakdown.flip_twist << "\n";
    std::cout << "  pseudo-Anosov chain rank: " << breakdown.pa_chain << "\n";
    std::cout << "\ntotals:\n";
    std::cout << "  corrected rank: " << rep.rank_corrected << "\n";
    std::cout << "  uncorrected rank: " << rep.rank_uncorrected << "\n";
    std::cout << "\nnielsen number: " << rep.nielsen << "\n";
    std::cout << "lefschetz number: " << rep.lefschetz << "\n";
    std::cout << "\nidentity checks:\n";
    std::cout << "  nielsen number <= corrected rank: " << (rep.nielsen_bounded ? "pass" : "FAIL")
              << " (slack " << rep.slack << ")\n";
    std::cout << "  corrected - uncorrected == 2 n_f: " << (rep.correction_matches ? "pass" : "FAIL")
              << "\n";
    std::cout << "  annulus lefschetz == 2 n_f: " << (rep.annulus_lefschetz_matches ? "pass" : "FAIL")
              << "\n";
    std::cout << "  per-class index sum == lefschetz number: "
              << (rep.lefschetz_consistent ? "pass" : "FAIL") << "\n";
    return rep.all_ok() ? 0 : 1;
}

int run_selftest(std::uint64_t seed, std::int64_t iters, int threads, bool json) {
    floerfp::selftest_options opts;
    opts.seed = seed;
    opts.iterations = iters;
    opts.threads = threads;
    const floerfp::selftest_report rep = floerfp::run_selftest(opts);
    if (json) {
        ordered_json j;
        j["command"] = "selftest";
        j["seed"] = seed;
        j["iterations"] = iters;
        j["checks"] = {{"f2", rep.f2_checks},
                       {"surface", rep.surface_checks},
                       {"grid", rep.grid_checks},
                       {"decomposition", rep.decomposition_checks}};
        j["failures"] = rep.failures;
        j["ok"] = rep.ok();
        emit(j);
        return rep.ok() ? 0 : 1;
    }
    std::cout << "selftest: seed " << seed << ", iterations " << iters << "\n";
    std::cout << "  f2 rank checks: " << rep.f2_checks << "\n";
    std::cout << "  surface checks: " << rep.surface_checks << "\n";
    std::cout << "  grid checks: " << rep.grid_checks << "\n";
    std::cout << "  decomposition checks: " << rep.decomposition_checks << "\n";
    for (const auto& f : rep.failures) std::cout << "failure: " << f << "\n";
    std::cout << "result: "
              << (rep.ok() ? "all checks passed" : std::to_string(rep.failures.size()) + " failures")
              << "\n";
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid knot Floer homology and surface fixed-point calculator"};
    app.require_subcommand(1);

    std::string grid_path, grid_path2, decomposition_path;
    bool json = false;
    int threads = 0;
    int max_grid = 10;
    std::uint64_t seed = 1;
    std::int64_t iters = 1000;

    auto* hfk = app.add_subcommand("hfk", "hat homology table of a grid diagram, with genus, "
                                          "fiberedness and the fixed-point bound");
    hfk->add_option("grid", grid_path, "grid diagram file")->required();
    hfk->add_flag("--json", json, "machine-readable output");
    hfk->add_option("--threads", threads, "worker threads (0 = hardware)");
    hfk->add_option("--max-grid", max_grid, "largest accepted grid size");

    auto* bound = app.add_subcommand("bound", "summary only: genus, fiberedness, r and the bound");
    bound->add_option("grid", grid_path, "grid diagram file")->required();
    bound->add_flag("--json", json, "machine-readable output");
    bound->add_option("--threads", threads, "worker threads (0 = hardware)");
    bound->add_option("--max-grid", max_grid, "largest accepted grid size");

    auto* kunneth = app.add_subcommand("kunneth", "rank table of a connected sum from two grid files");
    kunneth->add_option("grid1", grid_path, "first grid diagram file")->required();
    kunneth->add_option("grid2", grid_path2, "second grid diagram file")->required();
    kunneth->add_flag("--json", json, "machine-readable output");
    kunneth->add_option("--threads", threads, "worker threads (0 = hardware)");
    kunneth->add_option("--max-grid", max_grid, "largest accepted grid size");

    auto* mapclass = app.add_subcommand("mapclass", "symplectic Floer rank, Nielsen and Lefschetz "
                                                    "numbers of a standard-form decomposition");
    mapclass->add_option("decomposition", decomposition_path, "decomposition file (JSON)")->required();
    mapclass->add_flag("--json", json, "machine-readable output");

    auto* selftest = app.add_subcommand("selftest", "randomized invariant suite");
    selftest->add_option("--seed", seed, "master seed");
    selftest->add_option("--iters", iters, "iteration count");
    selftest->add_option("--threads", threads, "worker threads");
    selftest->add_flag("--json", json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (hfk->parsed()) return run_hfk(grid_path, json, false, threads, max_grid);
        if (bound->parsed()) return run_hfk(grid_path, json, true, threads, max_grid);
        if (kunneth->parsed()) return run_kunneth(grid_path, grid_path2, json, threads, max_grid);
        if (mapclass->parsed()) return run_mapclass(decomposition_path, json);
        if (selftest->parsed()) return run_selftest(seed, iters, std::max(threads, 1), json);
    } catch (const floerfp::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const floerfp::invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
