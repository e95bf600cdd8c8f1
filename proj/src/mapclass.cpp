#include "floerfp/mapclass.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "floerfp/surface_homology.hpp"

namespace floerfp {

bool gluing_endpoint::operator<(const gluing_endpoint& o) const {
    return std::tie(kind, id, sub) < std::tie(o.kind, o.id, o.sub);
}

int fixed_component::collapsed_count() const {
    int c = 0;
    for (const auto& b : boundaries)
        if (b.sign == boundary_sign::minus) ++c;
    return c;
}

int decomposition::flip_twist_annuli() const {
    int n_f = 0;
    for (const auto& a : annuli)
        if (a.carries_fixed_points()) ++n_f;
    return n_f;
}

namespace {

std::string endpoint_name(const gluing_endpoint& e) {
    switch (e.kind) {
        case endpoint_kind::annulus_side:
            return "annulus " + std::to_string(e.id) + " side " + std::to_string(e.sub);
        case endpoint_kind::fixed_boundary:
            return "fixed component " + std::to_string(e.id) + " boundary " + std::to_string(e.sub);
        case endpoint_kind::periodic_boundary:
            return "periodic component " + std::to_string(e.id) + " boundary " + std::to_string(e.sub);
        case endpoint_kind::pa_boundary:
            return "pseudo-Anosov component " + std::to_string(e.id) + " boundary " + std::to_string(e.sub);
    }
    return "?";
}

int endpoint_slot_count(const decomposition& d, const gluing_endpoint& e) {
    switch (e.kind) {
        case endpoint_kind::annulus_side:
            return e.id >= 0 && e.id < static_cast<int>(d.annuli.size()) ? 2 : -1;
        case endpoint_kind::fixed_boundary:
            return e.id >= 0 && e.id < static_cast<int>(d.fixed_components.size())
                       ? static_cast<int>(d.fixed_components[static_cast<std::size_t>(e.id)].boundaries.size())
                       : -1;
        case endpoint_kind::periodic_boundary:
            return e.id >= 0 && e.id < static_cast<int>(d.periodic_components.size())
                       ? d.periodic_components[static_cast<std::size_t>(e.id)].boundary_count
                       : -1;
        case endpoint_kind::pa_boundary:
            return e.id >= 0 && e.id < static_cast<int>(d.pa_components.size())
                       ? static_cast<int>(d.pa_components[static_cast<std::size_t>(e.id)].boundary_prongs.size())
                       : -1;
    }
    return -1;
}

// node index in the connectivity graph: components and annuli
int graph_node(const decomposition& d, const gluing_endpoint& e) {
    const int nf = static_cast<int>(d.fixed_components.size());
    const int np = static_cast<int>(d.periodic_components.size());
    const int na = static_cast<int>(d.pa_components.size());
    switch (e.kind) {
        case endpoint_kind::fixed_boundary: return e.id;
        case endpoint_kind::periodic_boundary: return nf + e.id;
        case endpoint_kind::pa_boundary: return nf + np + e.id;
        case endpoint_kind::annulus_side: return nf + np + na + e.id;
    }
    return -1;
}

struct union_find {
    std::vector<int> parent;
    explicit union_find(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

std::vector<std::pair<int, int>> decomposition::pa_contacts(int fixed_index) const {
    std::vector<std::pair<int, int>> contacts;
    for (const auto& glue : adjacency) {
        for (const auto& [self, other] : {std::pair{glue.a, glue.b}, std::pair{glue.b, glue.a}}) {
            if (self.kind == endpoint_kind::fixed_boundary && self.id == fixed_index &&
                other.kind == endpoint_kind::pa_boundary) {
                contacts.emplace_back(self.sub,
                                      pa_components[static_cast<std::size_t>(other.id)]
                                          .boundary_prongs[static_cast<std::size_t>(other.sub)]);
            }
        }
    }
    std::sort(contacts.begin(), contacts.end());
    return contacts;
}

std::vector<std::string> decomposition::validate() const {
    std::vector<std::string> warnings;
    auto fail = [](const std::string& msg) { throw input_error("decomposition: " + msg); };

    if (total_genus < 2) fail("total genus must be at least 2, got " + std::to_string(total_genus));
    const int total_components = static_cast<int>(fixed_components.size() + periodic_components.size() +
                                                  pa_components.size());
    if (total_components == 0) fail("no components");

    for (std::size_t i = 0; i < annuli.size(); ++i)
        if (annuli[i].period < 1) fail("annulus " + std::to_string(i) + " has period < 1");

    for (std::size_t i = 0; i < fixed_components.size(); ++i) {
        const auto& f = fixed_components[i];
        if (f.genus < 0) fail("fixed component " + std::to_string(i) + " has negative genus");
        for (std::size_t j = 0; j < f.boundaries.size(); ++j)
            if (f.boundaries[j].prongs && *f.boundaries[j].prongs < 1)
                fail("fixed component " + std::to_string(i) + " boundary " + std::to_string(j) +
                     " has nonpositive prong count");
        if (f.euler_characteristic() > 0)
            fail("fixed component " + std::to_string(i) +
                 " has positive Euler characteristic; reducing curves must be essential");
    }
    for (std::size_t i = 0; i < periodic_components.size(); ++i) {
        const auto& p = periodic_components[i];
        if (p.genus < 0 || p.boundary_count < 0)
            fail("periodic component " + std::to_string(i) + " has negative fields");
        if (p.period < 1) fail("periodic component " + std::to_string(i) + " has period < 1");
        if (p.orbit_size < 1) fail("periodic component " + std::to_string(i) + " has orbit size < 1");
        if (p.fixed_point_count < 0)
            fail("periodic component " + std::to_string(i) + " has negative fixed point count");
        if (p.orbit_size > 1 && p.fixed_point_count != 0)
            fail("periodic component " + std::to_string(i) +
                 " is permuted in an orbit but carries fixed points");
        if (p.euler_characteristic() > 0)
            fail("periodic component " + std::to_string(i) +
                 " has positive Euler characteristic; reducing curves must be essential");
        if (p.orbit_size == 1 && p.h1_trace) {
            const std::int64_t expected = 1 - *p.h1_trace + (p.boundary_count == 0 ? 1 : 0);
            if (expected != p.fixed_point_count)
                fail("periodic component " + std::to_string(i) + ": homological fixed point count " +
                     std::to_string(expected) + " does not match fixed_point_count " +
                     std::to_string(p.fixed_point_count));
            if (expected < 0)
                fail("periodic component " + std::to_string(i) + " has negative Lefschetz number");
        }
    }
    for (std::size_t i = 0; i < pa_components.size(); ++i) {
        const auto& p = pa_components[i];
        if (p.genus < 0) fail("pseudo-Anosov component " + std::to_string(i) + " has negative genus");
        for (int prongs : p.boundary_prongs)
            if (prongs < 1)
                fail("pseudo-Anosov component " + std::to_string(i) + " has nonpositive boundary prongs");
        if (p.euler_characteristic() >= 0)
            fail("pseudo-Anosov component " + std::to_string(i) +
                 " must have negative Euler characteristic");
        for (std::size_t k = 0; k < p.nielsen_classes.size(); ++k) {
            const auto& cls = p.nielsen_classes[k];
            const std::string where =
                "pseudo-Anosov component " + std::to_string(i) + " class " + std::to_string(k);
            if (cls.point_count < 1) fail(where + " has point count < 1");
            if (cls.index_per_point == 0) fail(where + " has zero index");
            const bool interior_singleton =
                cls.kind == pa_class_kind::IIIa || cls.kind == pa_class_kind::IIIc;
            if (interior_singleton && cls.point_count != 1)
                fail(where + " must be a singleton class");
            const bool singular = cls.kind == pa_class_kind::IIIb || cls.kind == pa_class_kind::IIIc;
            if (singular != cls.prongs.has_value())
                fail(where + (singular ? " is missing its prong count" : " must not carry prongs"));
            if (cls.prongs && *cls.prongs < 1) fail(where + " has nonpositive prongs");
            if ((cls.kind == pa_class_kind::IIId) != cls.abuts_fixed_component.has_value())
                fail(where + (cls.kind == pa_class_kind::IIId
                                  ? " is missing abuts_fixed_component"
                                  : " must not carry abuts_fixed_component"));
        }
    }

    // adjacency: a perfect matching of all annulus sides and boundaries
    std::set<gluing_endpoint> used;
    for (const auto& glue : adjacency) {
        for (const auto& e : {glue.a, glue.b}) {
            const int slots = endpoint_slot_count(*this, e);
            if (slots < 0) fail("unknown endpoint: " + endpoint_name(e));
            if (e.sub < 0 || e.sub >= slots)
                fail("endpoint out of range: " + endpoint_name(e));
            if (!used.insert(e).second) fail("endpoint glued twice: " + endpoint_name(e));
        }
        const bool a_is_annulus = glue.a.kind == endpoint_kind::annulus_side;
        const bool b_is_annulus = glue.b.kind == endpoint_kind::annulus_side;
        if (a_is_annulus && b_is_annulus)
            fail("two annulus sides glued to each other: " + endpoint_name(glue.a) + " and " +
                 endpoint_name(glue.b));
        if (!a_is_annulus && !b_is_annulus) {
            const auto kinds = std::minmax(glue.a.kind, glue.b.kind);
            if (!(kinds.first == endpoint_kind::fixed_boundary && kinds.second == endpoint_kind::pa_boundary))
                fail("components may abut directly only along a fixed/pseudo-Anosov boundary pair: " +
                     endpoint_name(glue.a) + " and " + endpoint_name(glue.b));
        }
    }
    auto require_covered = [&](const gluing_endpoint& e) {
        if (!used.count(e)) fail("unglued endpoint: " + endpoint_name(e));
    };
    for (std::size_t i = 0; i < annuli.size(); ++i)
        for (int side = 0; side < 2; ++side)
            require_covered({endpoint_kind::annulus_side, static_cast<int>(i), side});
    for (std::size_t i = 0; i < fixed_components.size(); ++i)
        for (std::size_t j = 0; j < fixed_components[i].boundaries.size(); ++j)
            require_covered({endpoint_kind::fixed_boundary, static_cast<int>(i), static_cast<int>(j)});
    for (std::size_t i = 0; i < periodic_components.size(); ++i)
        for (int j = 0; j < periodic_components[i].boundary_count; ++j)
            require_covered({endpoint_kind::periodic_boundary, static_cast<int>(i), j});
    for (std::size_t i = 0; i < pa_components.size(); ++i)
        for (std::size_t j = 0; j < pa_components[i].boundary_prongs.size(); ++j)
            require_covered({endpoint_kind::pa_boundary, static_cast<int>(i), static_cast<int>(j)});

    // prong labels appear exactly on fixed boundaries abutting a pA piece,
    // and the counts agree across the shared circle
    std::set<std::pair<int, int>> fixed_to_pa; // (fixed id, boundary)
    for (const auto& glue : adjacency) {
        for (const auto& [self, other] : {std::pair{glue.a, glue.b}, std::pair{glue.b, glue.a}}) {
            if (self.kind != endpoint_kind::fixed_boundary || other.kind != endpoint_kind::pa_boundary)
                continue;
            fixed_to_pa.insert({self.id, self.sub});
            const auto& fb = fixed_components[static_cast<std::size_t>(self.id)]
                                 .boundaries[static_cast<std::size_t>(self.sub)];
            const int pa_prongs = pa_components[static_cast<std::size_t>(other.id)]
                                      .boundary_prongs[static_cast<std::size_t>(other.sub)];
            if (!fb.prongs)
                fail(endpoint_name(self) + " abuts a pseudo-Anosov boundary but has no prong label");
            if (*fb.prongs != pa_prongs)
                fail("prong mismatch across " + endpoint_name(self) + ": " + std::to_string(*fb.prongs) +
                     " vs " + std::to_string(pa_prongs));
        }
    }
    for (std::size_t i = 0; i < fixed_components.size(); ++i)
        for (std::size_t j = 0; j < fixed_components[i].boundaries.size(); ++j)
            if (fixed_components[i].boundaries[j].prongs &&
                !fixed_to_pa.count({static_cast<int>(i), static_cast<int>(j)}))
                fail("fixed component " + std::to_string(i) + " boundary " + std::to_string(j) +
                     " carries prongs but is not glued to a pseudo-Anosov boundary");

    // absorbed boundary classes need an abutting fixed component
    for (std::size_t i = 0; i < pa_components.size(); ++i) {
        bool has_fixed_neighbor = false;
        for (const auto& glue : adjacency)
            for (const auto& [self, other] : {std::pair{glue.a, glue.b}, std::pair{glue.b, glue.a}})
                if (self.kind == endpoint_kind::pa_boundary && self.id == static_cast<int>(i) &&
                    other.kind == endpoint_kind::fixed_boundary)
                    has_fixed_neighbor = true;
        for (const auto& cls : pa_components[i].nielsen_classes)
            if (cls.absorbed_by_fixed_component() && !has_fixed_neighbor)
                fail("pseudo-Anosov component " + std::to_string(i) +
                     " has a class absorbed by a fixed component but no fixed neighbor");
    }

    // closed pieces are only the degenerate whole-surface case
    const bool single_piece = total_components == 1 && annuli.empty();
    auto check_closed = [&](int boundaries, const std::string& what) {
        if (boundaries == 0 && !single_piece)
            fail(what + " is closed but the decomposition has other pieces");
    };
    for (std::size_t i = 0; i < fixed_components.size(); ++i)
        check_closed(static_cast<int>(fixed_components[i].boundaries.size()),
                     "fixed component " + std::to_string(i));
    for (std::size_t i = 0; i < periodic_components.size(); ++i)
        check_closed(periodic_components[i].boundary_count, "periodic component " + std::to_string(i));
    for (std::size_t i = 0; i < pa_components.size(); ++i)
        check_closed(static_cast<int>(pa_components[i].boundary_prongs.size()),
                     "pseudo-Anosov component " + std::to_string(i));

    // Euler characteristic bookkeeping (annuli contribute zero)
    int chi = 0;
    for (const auto& f : fixed_components) chi += f.euler_characteristic();
    for (const auto& p : periodic_components) chi += p.euler_characteristic();
    for (const auto& p : pa_components) chi += p.euler_characteristic();
    if (chi != 2 - 2 * total_genus)
        fail("Euler characteristic mismatch: components sum to " + std::to_string(chi) +
             ", genus " + std::to_string(total_genus) + " requires " + std::to_string(2 - 2 * total_genus));

    // connectivity of the gluing graph
    {
        const int nodes = total_components + static_cast<int>(annuli.size());
        union_find uf(nodes);
        for (const auto& glue : adjacency) uf.unite(graph_node(*this, glue.a), graph_node(*this, glue.b));
        std::set<int> roots;
        for (int v = 0; v < nodes; ++v) roots.insert(uf.find(v));
        if (roots.size() > 1) fail("the glued surface is not connected");
    }

    // global homological cross-check: closed oriented surface, orientation
    // preserving, so the Lefschetz number is 2 - trace on H_1
    if (h1_trace && lefschetz_number(*this) != 2 - *h1_trace)
        fail("global Lefschetz number " + std::to_string(lefschetz_number(*this)) +
             " does not match 2 - h1_trace = " + std::to_string(2 - *h1_trace));

    if (single_piece && !fixed_components.empty())
        warnings.push_back("identity-like input: one closed fixed component; rank equals the "
                           "total homology of the surface");
    return warnings;
}

fixed_classification classify_fixed(const decomposition& d) {
    fixed_classification out;
    for (std::size_t i = 0; i < d.fixed_components.size(); ++i) {
        const auto contacts = d.pa_contacts(static_cast<int>(i));
        if (contacts.empty()) {
            out.sigma_a.push_back(static_cast<int>(i));
        } else if (contacts.size() == 1) {
            out.sigma_b[contacts.front().second].push_back(static_cast<int>(i));
        } else {
            int q = 0;
            for (const auto& [boundary, prongs] : contacts) q += prongs;
            out.sigma_c[q].push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::int64_t rank_breakdown::total() const {
    std::int64_t t = sigma_a + periodic_lefschetz + flip_twist + pa_chain;
    for (const auto& [p, parts] : sigma_b) t += parts.first + parts.second;
    for (const auto& [q, parts] : sigma_c) t += parts.first + parts.second;
    return t;
}

namespace {

std::int64_t rel_rank(const fixed_component& f, int punctures) {
    surface_piece piece{f.genus, static_cast<int>(f.boundaries.size()), f.collapsed_count(), punctures};
    return rel_betti(piece).total();
}

std::int64_t periodic_lefschetz_number(const decomposition& d) {
    std::int64_t sum = 0;
    for (const auto& p : d.periodic_components) sum += p.fixed_point_count;
    return sum;
}

std::int64_t pa_chain_rank(const decomposition& d) {
    std::int64_t sum = 0;
    for (const auto& p : d.pa_components)
        for (const auto& cls : p.nielsen_classes)
            if (!cls.absorbed_by_fixed_component()) sum += cls.point_count;
    return sum;
}

std::int64_t annulus_lefschetz(const decomposition& d) {
    std::int64_t sum = 0;
    for (const auto& a : d.annuli)
        if (a.carries_fixed_points()) sum += 2;
    return sum;
}

} // namespace

rank_breakdown hf_symp_rank(const decomposition& d) {
    const fixed_classification cls = classify_fixed(d);
    rank_breakdown out;
    for (int i : cls.sigma_a) out.sigma_a += rel_rank(d.fixed_components[static_cast<std::size_t>(i)], 0);
    for (const auto& [p, members] : cls.sigma_b) {
        auto& [hom, prong_term] = out.sigma_b[p];
        for (int i : members) hom += rel_rank(d.fixed_components[static_cast<std::size_t>(i)], 1);
        prong_term = static_cast<std::int64_t>(p - 1) * static_cast<std::int64_t>(members.size());
    }
    for (const auto& [q, members] : cls.sigma_c) {
        auto& [hom, prong_term] = out.sigma_c[q];
        for (int i : members) hom += rel_rank(d.fixed_components[static_cast<std::size_t>(i)], 0);
        prong_term = static_cast<std::int64_t>(q) * static_cast<std::int64_t>(members.size());
    }
    out.periodic_lefschetz = periodic_lefschetz_number(d);
    if (out.periodic_lefschetz < 0)
        throw input_error("negative Lefschetz number on the periodic part");
    out.flip_twist = 2 * static_cast<std::int64_t>(d.flip_twist_annuli());
    out.pa_chain = pa_chain_rank(d);
    return out;
}

std::int64_t hf_symp_rank_uncorrected(const decomposition& d) {
    rank_breakdown b = hf_symp_rank(d);
    return b.total() - b.flip_twist;
}

std::int64_t lefschetz_number(const decomposition& d) {
    std::int64_t sum = 0;
    for (const auto& f : d.fixed_components) sum += f.euler_characteristic();
    sum += periodic_lefschetz_number(d);
    sum += annulus_lefschetz(d);
    for (const auto& p : d.pa_components)
        for (const auto& cls : p.nielsen_classes)
            if (!cls.absorbed_by_fixed_component()) sum += cls.point_count * cls.index_per_point;
    return sum;
}

std::int64_t nielsen_number(const decomposition& d) {
    std::int64_t count = 0;
    for (const auto& f : d.fixed_components)
        if (f.euler_characteristic() != 0) ++count; // one class per component, essential iff chi != 0
    count += periodic_lefschetz_number(d); // each perturbed periodic point is its own class, index +1
    count += 2 * static_cast<std::int64_t>(d.flip_twist_annuli()); // two singleton classes per annulus
    for (const auto& p : d.pa_components)
        for (const auto& cls : p.nielsen_classes)
            if (!cls.absorbed_by_fixed_component()) ++count; // uniform nonzero index: essential
    return count;
}

fixed_point_report verify_bound(const decomposition& d) {
    fixed_point_report rep;
    const rank_breakdown breakdown = hf_symp_rank(d);
    rep.rank_corrected = breakdown.total();
    rep.rank_uncorrected = hf_symp_rank_uncorrected(d);
    rep.nielsen = nielsen_number(d);
    rep.lefschetz = lefschetz_number(d);

    // second route: walk the Nielsen classes one by one
    for (std::size_t i = 0; i < d.fixed_components.size(); ++i)
        rep.class_indices.emplace_back("fixed component " + std::to_string(i),
                                       d.fixed_components[i].euler_characteristic());
    for (std::size_t i = 0; i < d.periodic_components.size(); ++i)
        if (d.periodic_components[i].fixed_point_count > 0)
            rep.class_indices.emplace_back("periodic component " + std::to_string(i) + " (" +
                                               std::to_string(d.periodic_components[i].fixed_point_count) +
                                               " singleton classes)",
                                           d.periodic_components[i].fixed_point_count);
    for (std::size_t i = 0; i < d.annuli.size(); ++i)
        if (d.annuli[i].carries_fixed_points())
            rep.class_indices.emplace_back("flip-twist annulus " + std::to_string(i) +
                                               " (2 singleton classes)",
                                           2);
    for (std::size_t i = 0; i < d.pa_components.size(); ++i) {
        const auto& p = d.pa_components[i];
        for (std::size_t k = 0; k < p.nielsen_classes.size(); ++k) {
            const auto& cls = p.nielsen_classes[k];
            if (cls.absorbed_by_fixed_component()) continue;
            rep.class_indices.emplace_back("pseudo-Anosov component " + std::to_string(i) + " class " +
                                               std::to_string(k),
                                           cls.point_count * cls.index_per_point);
        }
    }
    rep.lefschetz_by_class = 0;
    for (const auto& [label, index] : rep.class_indices) rep.lefschetz_by_class += index;

    rep.slack = rep.rank_corrected - rep.nielsen;
    rep.nielsen_bounded = rep.nielsen <= rep.rank_corrected;
    rep.correction_matches = rep.rank_corrected - rep.rank_uncorrected == 2 * d.flip_twist_annuli();
    rep.annulus_lefschetz_matches = annulus_lefschetz(d) == 2 * d.flip_twist_annuli();
    rep.lefschetz_consistent = rep.lefschetz == rep.lefschetz_by_class;
    return rep;
}

// ---------------------------------------------------------------------------
// randomized generator

namespace {

decomposition random_decomposition_attempt(std::uint64_t seed, int size_budget) {
    std::mt19937_64 rng(seed);
    const int budget = std::max(1, size_budget);
    decomposition d;

    const int n_fixed = static_cast<int>(draw(rng, static_cast<std::uint64_t>(std::min(budget, 2)) + 1));
    const int n_periodic_units = static_cast<int>(draw(rng, 3));
    const int n_pa = static_cast<int>(draw(rng, 3));

    for (int i = 0; i < n_fixed; ++i) {
        fixed_component f;
        f.genus = static_cast<int>(draw(rng, 3));
        const int min_b = f.genus == 0 ? 2 : 1;
        const int b = min_b + static_cast<int>(draw(rng, 2));
        for (int j = 0; j < b; ++j)
            f.boundaries.push_back({draw(rng, 2) ? boundary_sign::minus : boundary_sign::plus, std::nullopt});
        d.fixed_components.push_back(std::move(f));
    }
    for (int i = 0; i < n_periodic_units; ++i) {
        periodic_component p;
        p.genus = static_cast<int>(draw(rng, 3));
        p.boundary_count = (p.genus == 0 ? 2 : 1) + static_cast<int>(draw(rng, 2));
        if (draw(rng, 10) < 3) {
            p.period = 2;
            p.orbit_size = 2;
            p.fixed_point_count = 0;
            d.periodic_components.push_back(p);
            d.periodic_components.push_back(p); // the partner of the orbit
        } else {
            p.period = 1 + static_cast<int>(draw(rng, 4));
            p.orbit_size = 1;
            p.fixed_point_count = static_cast<std::int64_t>(draw(rng, 5));
            if (draw(rng, 2)) p.h1_trace = 1 - p.fixed_point_count;
            d.periodic_components.push_back(p);
        }
    }
    for (int i = 0; i < n_pa; ++i) {
        pa_component p;
        p.genus = 1 + static_cast<int>(draw(rng, 2));
        const int b = 1 + static_cast<int>(draw(rng, 3));
        for (int j = 0; j < b; ++j) p.boundary_prongs.push_back(1 + static_cast<int>(draw(rng, 3)));
        d.pa_components.push_back(std::move(p));
    }
    if (d.fixed_components.empty() && d.periodic_components.empty() && d.pa_components.empty()) {
        fixed_component f;
        f.genus = 1;
        f.boundaries.push_back({boundary_sign::plus, std::nullopt});
        d.fixed_components.push_back(std::move(f));
    }

    // gluing slots
    std::vector<gluing_endpoint> slots;
    for (std::size_t i = 0; i < d.fixed_components.size(); ++i)
        for (std::size_t j = 0; j < d.fixed_components[i].boundaries.size(); ++j)
            slots.push_back({endpoint_kind::fixed_boundary, static_cast<int>(i), static_cast<int>(j)});
    for (std::size_t i = 0; i < d.periodic_components.size(); ++i)
        for (int j = 0; j < d.periodic_components[i].boundary_count; ++j)
            slots.push_back({endpoint_kind::periodic_boundary, static_cast<int>(i), j});
    for (std::size_t i = 0; i < d.pa_components.size(); ++i)
        for (std::size_t j = 0; j < d.pa_components[i].boundary_prongs.size(); ++j)
            slots.push_back({endpoint_kind::pa_boundary, static_cast<int>(i), static_cast<int>(j)});

    // direct fixed/pseudo-Anosov contacts
    std::vector<gluing_endpoint> pool;
    for (const auto& s : slots) pool.push_back(s);
    auto take = [&](std::size_t k) {
        gluing_endpoint e = pool[k];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        return e;
    };
    for (;;) {
        std::vector<std::size_t> pa_slots, fixed_slots;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (pool[k].kind == endpoint_kind::pa_boundary) pa_slots.push_back(k);
            if (pool[k].kind == endpoint_kind::fixed_boundary) fixed_slots.push_back(k);
        }
        if (pa_slots.empty() || fixed_slots.empty() || draw(rng, 10) < 6) break;
        const std::size_t kp = pa_slots[draw(rng, pa_slots.size())];
        gluing_endpoint pa_end = pool[kp];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(kp));
        std::vector<std::size_t> fixed_now;
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (pool[k].kind == endpoint_kind::fixed_boundary) fixed_now.push_back(k);
        gluing_endpoint fixed_end = take(fixed_now[draw(rng, fixed_now.size())]);
        d.fixed_components[static_cast<std::size_t>(fixed_end.id)]
            .boundaries[static_cast<std::size_t>(fixed_end.sub)]
            .prongs = d.pa_components[static_cast<std::size_t>(pa_end.id)]
                          .boundary_prongs[static_cast<std::size_t>(pa_end.sub)];
        d.adjacency.push_back({pa_end, fixed_end});
    }

    // even number of remaining slots; grow a boundary if needed
    if (pool.size() % 2 == 1) {
        if (!d.fixed_components.empty()) {
            d.fixed_components[0].boundaries.push_back({boundary_sign::plus, std::nullopt});
            pool.push_back({endpoint_kind::fixed_boundary, 0,
                            static_cast<int>(d.fixed_components[0].boundaries.size()) - 1});
        } else if (!d.periodic_components.empty()) {
            d.periodic_components[0].boundary_count += 1;
            pool.push_back({endpoint_kind::periodic_boundary, 0,
                            d.periodic_components[0].boundary_count - 1});
        } else {
            d.pa_components[0].boundary_prongs.push_back(1 + static_cast<int>(draw(rng, 3)));
            pool.push_back({endpoint_kind::pa_boundary, 0,
                            static_cast<int>(d.pa_components[0].boundary_prongs.size()) - 1});
        }
    }

    // annuli: first connect distinct pieces, then pair off the rest
    const int total_components = static_cast<int>(d.fixed_components.size() + d.periodic_components.size() +
                                                  d.pa_components.size());
    auto component_node = [&](const gluing_endpoint& e) { return graph_node(d, e); };
    union_find uf(total_components);
    for (const auto& glue : d.adjacency) uf.unite(component_node(glue.a), component_node(glue.b));

    auto new_annulus = [&]() {
        annulus a;
        a.kind = draw(rng, 10) < 4 ? annulus_kind::flip_twist : annulus_kind::twist;
        a.direction = draw(rng, 2) ? twist_direction::positive : twist_direction::negative;
        a.period = draw(rng, 4) == 0 ? 2 : 1;
        d.annuli.push_back(a);
        return static_cast<int>(d.annuli.size()) - 1;
    };
    while (!pool.empty()) {
        // prefer a pair spanning two current pieces of the gluing graph
        std::size_t first = 0;
        std::size_t second = pool.size();
        for (std::size_t k = 1; k < pool.size(); ++k)
            if (uf.find(component_node(pool[k])) != uf.find(component_node(pool[first]))) {
                second = k;
                break;
            }
        if (second == pool.size()) second = 1 + draw(rng, pool.size() - 1);
        gluing_endpoint eb = take(second);
        gluing_endpoint ea = take(0);
        const int a_id = new_annulus();
        d.adjacency.push_back({{endpoint_kind::annulus_side, a_id, 0}, ea});
        d.adjacency.push_back({{endpoint_kind::annulus_side, a_id, 1}, eb});
        uf.unite(component_node(ea), component_node(eb));
    }

    // Euler characteristic fixes the genus; pad genus up to the minimum
    int chi = 0;
    for (const auto& f : d.fixed_components) chi += f.euler_characteristic();
    for (const auto& p : d.periodic_components) chi += p.euler_characteristic();
    for (const auto& p : d.pa_components) chi += p.euler_characteristic();
    int genus_total = (2 - chi) / 2;
    if (genus_total < 2) {
        const int bump = 2 - genus_total;
        if (!d.fixed_components.empty())
            d.fixed_components[0].genus += bump;
        else if (!d.periodic_components.empty())
            d.periodic_components[0].genus += bump;
        else
            d.pa_components[0].genus += bump;
        genus_total = 2;
    }
    d.total_genus = genus_total;

    // fixed point census of the pseudo-Anosov pieces
    for (std::size_t i = 0; i < d.pa_components.size(); ++i) {
        auto& p = d.pa_components[i];
        bool has_fixed_neighbor = false;
        for (const auto& glue : d.adjacency)
            for (const auto& [self, other] : {std::pair{glue.a, glue.b}, std::pair{glue.b, glue.a}})
                if (self.kind == endpoint_kind::pa_boundary && self.id == static_cast<int>(i) &&
                    other.kind == endpoint_kind::fixed_boundary)
                    has_fixed_neighbor = true;
        const int classes = static_cast<int>(draw(rng, 4));
        for (int k = 0; k < classes; ++k) {
            pa_nielsen_class cls;
            switch (draw(rng, 4)) {
                case 0:
                    cls.kind = pa_class_kind::IIIa;
                    cls.point_count = 1;
                    cls.index_per_point = draw(rng, 2) ? 1 : -1;
                    break;
                case 1:
                    cls.kind = pa_class_kind::IIIb;
                    cls.point_count = 1 + static_cast<std::int64_t>(draw(rng, 2));
                    cls.prongs = 3 + static_cast<int>(draw(rng, 3));
                    cls.index_per_point = 1 - *cls.prongs;
                    break;
                case 2:
                    cls.kind = pa_class_kind::IIIc;
                    cls.point_count = 1;
                    cls.index_per_point = 1;
                    cls.prongs = 3 + static_cast<int>(draw(rng, 3));
                    break;
                default:
                    cls.kind = pa_class_kind::IIId;
                    cls.point_count = 1 + static_cast<std::int64_t>(draw(rng, 2));
                    cls.index_per_point = -1;
                    cls.abuts_fixed_component = has_fixed_neighbor && draw(rng, 2) != 0;
                    break;
            }
            p.nielsen_classes.push_back(cls);
        }
    }

    if (draw(rng, 10) < 3) d.h1_trace = 2 - lefschetz_number(d);

    d.validate();
    return d;
}

} // namespace

decomposition random_decomposition(std::uint64_t seed, int size_budget) {
    // a draw can strand a component group once the direct contacts use up
    // its boundary slots; such draws are rejected and retried
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        try {
            return random_decomposition_attempt(subseed(seed, 0xD000 + attempt), size_budget);
        } catch (const input_error&) {
        }
    }
    throw invariant_error("random decomposition generator failed to produce valid data for seed " +
                          std::to_string(seed));
}

} // namespace floerfp
