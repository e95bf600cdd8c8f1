#include "floerfp/grid.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace floerfp {

namespace {

bool is_permutation_of_range(const std::vector<int>& v, int n) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    if (static_cast<int>(v.size()) != n) return false;
    for (int x : v) {
        if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

} // namespace

void grid_diagram::validate() const {
    if (n < 2) throw input_error("grid size must be at least 2, got " + std::to_string(n));
    if (!is_permutation_of_range(x_marks, n))
        throw input_error("X marks are not a permutation of 0.." + std::to_string(n - 1));
    if (!is_permutation_of_range(o_marks, n))
        throw input_error("O marks are not a permutation of 0.." + std::to_string(n - 1));
    for (int r = 0; r < n; ++r)
        if (x_marks[static_cast<std::size_t>(r)] == o_marks[static_cast<std::size_t>(r)])
            throw input_error("row " + std::to_string(r) + " has X and O in the same column");

    // follow X -> O along columns, O -> X along rows; a knot visits every row
    std::vector<int> row_of_o_in_col(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) row_of_o_in_col[static_cast<std::size_t>(o_marks[static_cast<std::size_t>(r)])] = r;
    int visited = 0, r = 0;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    while (!seen[static_cast<std::size_t>(r)]) {
        seen[static_cast<std::size_t>(r)] = true;
        ++visited;
        r = row_of_o_in_col[static_cast<std::size_t>(x_marks[static_cast<std::size_t>(r)])];
    }
    if (visited != n)
        throw input_error("diagram encodes a link with more than one component (" +
                          std::to_string(visited) + " of " + std::to_string(n) + " rows in one cycle)");
}

grid_diagram grid_diagram::mirrored() const {
    grid_diagram m;
    m.n = n;
    m.x_marks.resize(static_cast<std::size_t>(n));
    m.o_marks.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        m.x_marks[static_cast<std::size_t>(r)] = n - 1 - x_marks[static_cast<std::size_t>(r)];
        m.o_marks[static_cast<std::size_t>(r)] = n - 1 - o_marks[static_cast<std::size_t>(r)];
    }
    return m;
}

grid_diagram parse_grid(std::istream& in, const std::string& source_name) {
    std::vector<std::pair<int, std::string>> content; // (line number, text)
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        content.emplace_back(lineno, line);
    }
    auto fail = [&](int ln, const std::string& msg) -> grid_diagram {
        throw input_error(source_name + ":" + std::to_string(ln) + ": " + msg);
    };
    if (content.size() != 3)
        throw input_error(source_name + ": expected 3 content lines (size, X marks, O marks), got " +
                          std::to_string(content.size()));

    grid_diagram g;
    {
        std::istringstream ss(content[0].second);
        std::string extra;
        if (!(ss >> g.n) || (ss >> extra))
            return fail(content[0].first, "expected a single grid size");
        if (g.n < 2) return fail(content[0].first, "grid size must be at least 2");
    }
    auto parse_marks = [&](int idx, const char* what) {
        std::istringstream ss(content[static_cast<std::size_t>(idx)].second);
        std::vector<int> v;
        int x;
        while (ss >> x) v.push_back(x);
        if (!ss.eof())
            fail(content[static_cast<std::size_t>(idx)].first, std::string("malformed ") + what + " entry");
        if (static_cast<int>(v.size()) != g.n)
            fail(content[static_cast<std::size_t>(idx)].first,
                 std::string("expected ") + std::to_string(g.n) + " " + what + " columns, got " +
                     std::to_string(v.size()));
        return v;
    };
    g.x_marks = parse_marks(1, "X");
    g.o_marks = parse_marks(2, "O");
    try {
        g.validate();
    } catch (const input_error& e) {
        throw input_error(source_name + ": " + e.what());
    }
    return g;
}

grid_diagram load_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open grid file: " + path);
    return parse_grid(in, path);
}

std::string format_grid(const grid_diagram& g) {
    std::ostringstream out;
    out << g.n << "\n";
    for (int r = 0; r < g.n; ++r) out << (r ? " " : "") << g.x_marks[static_cast<std::size_t>(r)];
    out << "\n";
    for (int r = 0; r < g.n; ++r) out << (r ? " " : "") << g.o_marks[static_cast<std::size_t>(r)];
    out << "\n";
    return out.str();
}

grid_diagram stabilize(const grid_diagram& g, int row) {
    if (row < 0 || row >= g.n) throw input_error("stabilization row out of range");
    const int c = g.x_marks[static_cast<std::size_t>(row)];
    const int d = g.o_marks[static_cast<std::size_t>(row)];
    auto shift = [c](int v) { return v < c ? v : v + 1; };

    grid_diagram s;
    s.n = g.n + 1;
    for (int r = 0; r < g.n; ++r) {
        if (r == row) {
            s.x_marks.push_back(c);
            s.o_marks.push_back(shift(d));
            s.x_marks.push_back(c + 1);
            s.o_marks.push_back(c);
        } else {
            s.x_marks.push_back(shift(g.x_marks[static_cast<std::size_t>(r)]));
            s.o_marks.push_back(shift(g.o_marks[static_cast<std::size_t>(r)]));
        }
    }
    s.validate();
    return s;
}

grid_diagram random_grid(std::mt19937_64& rng, int n) {
    if (n < 2) throw input_error("grid size must be at least 2");
    auto shuffled = [&rng, n]() {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(draw(rng, static_cast<std::uint64_t>(i + 1)))]);
        return v;
    };
    for (;;) {
        grid_diagram g;
        g.n = n;
        g.x_marks = shuffled();
        g.o_marks = shuffled();
        try {
            g.validate();
            return g;
        } catch (const input_error&) {
            // resample
        }
    }
}

} // namespace floerfp
