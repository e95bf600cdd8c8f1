#include "floerfp/surface_homology.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "floerfp/f2_linalg.hpp"

namespace floerfp {

void surface_piece::validate() const {
    if (genus < 0 || boundary_circles < 0 || collapsed_circles < 0 || punctures < 0)
        throw input_error("surface piece fields must be nonnegative");
    if (collapsed_circles > boundary_circles)
        throw input_error("collapsed circles (" + std::to_string(collapsed_circles) +
                          ") exceed boundary circles (" + std::to_string(boundary_circles) + ")");
}

betti_triple rel_betti(const surface_piece& s) {
    s.validate();
    const std::int64_t g = s.genus;
    const std::int64_t b = s.boundary_circles + s.punctures; // punctures stay uncollapsed
    const std::int64_t c = s.collapsed_circles;

    betti_triple out;
    if (c == 0) {
        out.h0 = 1;
        out.h1 = b >= 1 ? 2 * g + b - 1 : 2 * g;
        out.h2 = b == 0 ? 1 : 0;
    } else if (c < b) {
        out = {0, 2 * g + b - 2, 0};
    } else { // c == b >= 1
        out = {0, 2 * g + b - 1, 1};
    }
    return out;
}

namespace {

using face = std::array<int, 3>;

struct complex2d {
    int vertex_count = 0;
    std::vector<face> faces;
};

complex2d octahedron() {
    return {6,
            {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}}};
}

complex2d grid_torus3() {
    complex2d c;
    c.vertex_count = 9;
    auto v = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            c.faces.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
            c.faces.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
        }
    return c;
}

// Connected sum along one face of each piece: identifies the two face
// boundaries and drops both faces.
complex2d glue(const complex2d& a, std::size_t face_a, const complex2d& b, std::size_t face_b) {
    complex2d out;
    out.vertex_count = a.vertex_count + b.vertex_count - 3;
    const face fa = a.faces[face_a];
    const face fb = b.faces[face_b];
    std::vector<int> remap(static_cast<std::size_t>(b.vertex_count), -1);
    for (int k = 0; k < 3; ++k) remap[static_cast<std::size_t>(fb[static_cast<std::size_t>(k)])] = fa[static_cast<std::size_t>(k)];
    int next = a.vertex_count;
    for (int v = 0; v < b.vertex_count; ++v)
        if (remap[static_cast<std::size_t>(v)] < 0) remap[static_cast<std::size_t>(v)] = next++;
    for (std::size_t i = 0; i < a.faces.size(); ++i)
        if (i != face_a) out.faces.push_back(a.faces[i]);
    for (std::size_t i = 0; i < b.faces.size(); ++i) {
        if (i == face_b) continue;
        const face& f = b.faces[i];
        out.faces.push_back({remap[static_cast<std::size_t>(f[0])], remap[static_cast<std::size_t>(f[1])],
                             remap[static_cast<std::size_t>(f[2])]});
    }
    return out;
}

complex2d closed_surface(int genus) {
    if (genus == 0) return octahedron();
    complex2d c = grid_torus3();
    for (int k = 1; k < genus; ++k) {
        // pick a gluing face whose vertices are untouched by earlier gluings:
        // faces appended last come from the freshly added torus
        c = glue(c, c.faces.size() - 1, grid_torus3(), 0);
    }
    return c;
}

complex2d subdivide(const complex2d& c) {
    complex2d out;
    out.vertex_count = c.vertex_count;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int u, int v) {
        auto key = std::minmax(u, v);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        int id = out.vertex_count++;
        midpoint.emplace(key, id);
        return id;
    };
    for (const face& f : c.faces) {
        int muv = mid(f[0], f[1]), mvw = mid(f[1], f[2]), muw = mid(f[0], f[2]);
        out.faces.push_back({f[0], muv, muw});
        out.faces.push_back({f[1], mvw, muv});
        out.faces.push_back({f[2], muw, mvw});
        out.faces.push_back({muv, mvw, muw});
    }
    return out;
}

std::vector<std::size_t> disjoint_faces(const complex2d& c, int wanted) {
    std::vector<std::size_t> picked;
    std::set<int> used;
    for (std::size_t i = 0; i < c.faces.size() && static_cast<int>(picked.size()) < wanted; ++i) {
        const face& f = c.faces[i];
        if (used.count(f[0]) || used.count(f[1]) || used.count(f[2])) continue;
        picked.push_back(i);
        used.insert(f.begin(), f.end());
    }
    return picked;
}

} // namespace

betti_triple simplicial_oracle(const surface_piece& s) {
    s.validate();
    const int b = s.boundary_circles + s.punctures;
    if (s.genus > 3 || b > 4)
        throw input_error("simplicial oracle limited to genus <= 3 and <= 4 boundary circles");

    complex2d c = closed_surface(s.genus);
    std::vector<std::size_t> removed = disjoint_faces(c, b);
    for (int round = 0; static_cast<int>(removed.size()) < b && round < 4; ++round) {
        c = subdivide(c);
        removed = disjoint_faces(c, b);
    }
    if (static_cast<int>(removed.size()) < b)
        throw invariant_error("triangulation too small for requested boundary circles");

    std::set<int> cut_vertices;     // vertices of collapsed circles
    std::set<std::pair<int, int>> cut_edges;
    for (int k = 0; k < s.collapsed_circles; ++k) {
        const face& f = c.faces[removed[static_cast<std::size_t>(k)]];
        cut_vertices.insert(f.begin(), f.end());
        cut_edges.insert(std::minmax(f[0], f[1]));
        cut_edges.insert(std::minmax(f[1], f[2]));
        cut_edges.insert(std::minmax(f[0], f[2]));
    }

    std::set<std::size_t> removed_set(removed.begin(), removed.end());
    std::vector<face> faces;
    for (std::size_t i = 0; i < c.faces.size(); ++i)
        if (!removed_set.count(i)) faces.push_back(c.faces[i]);

    // relative chain complex: cells of the collapsed circles are dropped
    std::map<std::pair<int, int>, int> edge_index;
    for (const face& f : faces)
        for (auto [u, v] : {std::minmax(f[0], f[1]), std::minmax(f[1], f[2]), std::minmax(f[0], f[2])})
            if (!cut_edges.count({u, v})) edge_index.try_emplace({u, v}, static_cast<int>(edge_index.size()));
    std::map<int, int> vertex_index;
    for (const face& f : faces)
        for (int v : f)
            if (!cut_vertices.count(v)) vertex_index.try_emplace(v, static_cast<int>(vertex_index.size()));

    std::vector<std::pair<int, int>> d2, d1;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const face& f = faces[i];
        for (auto [u, v] : {std::minmax(f[0], f[1]), std::minmax(f[1], f[2]), std::minmax(f[0], f[2])}) {
            auto it = edge_index.find({u, v});
            if (it != edge_index.end()) d2.emplace_back(it->second, static_cast<int>(i));
        }
    }
    for (const auto& [uv, e] : edge_index) {
        for (int v : {uv.first, uv.second}) {
            auto it = vertex_index.find(v);
            if (it != vertex_index.end()) d1.emplace_back(it->second, e);
        }
    }

    graded_complex chain;
    chain.blocks[0] = {static_cast<std::int64_t>(vertex_index.size()),
                       sparse_bool_matrix(0, static_cast<int>(vertex_index.size()))};
    chain.blocks[1] = {static_cast<std::int64_t>(edge_index.size()),
                       sparse_bool_matrix::from_positions_mod2(static_cast<int>(vertex_index.size()),
                                                               static_cast<int>(edge_index.size()), d1)};
    chain.blocks[2] = {static_cast<std::int64_t>(faces.size()),
                       sparse_bool_matrix::from_positions_mod2(static_cast<int>(edge_index.size()),
                                                               static_cast<int>(faces.size()), d2)};
    auto hom = homology_ranks(chain);
    return {hom[0], hom[1], hom[2]};
}

} // namespace floerfp
