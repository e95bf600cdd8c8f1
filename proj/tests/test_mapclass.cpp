#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "floerfp/mapclass.hpp"
#include "floerfp/mapclass_io.hpp"

using namespace floerfp;

namespace {

// genus-2 surface cut along one flip-twist annulus into two genus-1 pieces
// swapped by the map
decomposition flip_twist_swap() {
    decomposition d;
    d.total_genus = 2;
    d.annuli.push_back({annulus_kind::flip_twist, twist_direction::positive, 1});
    for (int i = 0; i < 2; ++i) {
        periodic_component p;
        p.genus = 1;
        p.boundary_count = 1;
        p.period = 2;
        p.orbit_size = 2;
        p.fixed_point_count = 0;
        d.periodic_components.push_back(p);
    }
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 0}, {endpoint_kind::periodic_boundary, 0, 0}});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 1}, {endpoint_kind::periodic_boundary, 1, 0}});
    d.h1_trace = 0; // the swap has traceless action on first homology
    return d;
}

decomposition identity_genus2() {
    decomposition d;
    d.total_genus = 2;
    fixed_component f;
    f.genus = 2;
    d.fixed_components.push_back(f);
    return d;
}

// one fixed piece joined to itself by annuli, optionally abutting
// pseudo-Anosov pieces through direct contacts
decomposition fixed_with_pa(std::vector<int> contact_prongs) {
    decomposition d;
    fixed_component f;
    f.genus = 1;
    f.boundaries.push_back({boundary_sign::plus, std::nullopt});
    f.boundaries.push_back({boundary_sign::plus, std::nullopt});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 0}, {endpoint_kind::fixed_boundary, 0, 0}});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 1}, {endpoint_kind::fixed_boundary, 0, 1}});
    d.annuli.push_back({annulus_kind::twist, twist_direction::positive, 1});
    int chi = -2; // the fixed piece before the contacts

    for (std::size_t k = 0; k < contact_prongs.size(); ++k) {
        f.boundaries.push_back({boundary_sign::plus, contact_prongs[k]});
        pa_component pa;
        pa.genus = 1;
        pa.boundary_prongs.push_back(contact_prongs[k]);
        d.pa_components.push_back(pa);
        d.adjacency.push_back({{endpoint_kind::pa_boundary, static_cast<int>(k), 0},
                               {endpoint_kind::fixed_boundary, 0, static_cast<int>(2 + k)}});
        chi += -1 - 1; // fixed piece loses one, the pA piece brings chi = -1
    }
    d.fixed_components.push_back(std::move(f));
    d.total_genus = (2 - chi) / 2;
    return d;
}

} // namespace

TEST_CASE("flip-twist swap: the corrected rank sees the two annulus fixed points") {
    const decomposition d = flip_twist_swap();
    CHECK(d.validate().empty());
    CHECK(d.flip_twist_annuli() == 1);

    const rank_breakdown b = hf_symp_rank(d);
    CHECK(b.sigma_a == 0);
    CHECK(b.periodic_lefschetz == 0);
    CHECK(b.flip_twist == 2);
    CHECK(b.pa_chain == 0);
    CHECK(b.total() == 2);

    CHECK(hf_symp_rank_uncorrected(d) == 0);
    CHECK(nielsen_number(d) == 2);
    CHECK(lefschetz_number(d) == 2);

    const fixed_point_report rep = verify_bound(d);
    CHECK(rep.all_ok());
    CHECK(rep.slack == 0);
}

TEST_CASE("identity-like input: whole-surface fixed component") {
    const decomposition d = identity_genus2();
    const auto warnings = d.validate();
    REQUIRE(warnings.size() == 1);
    CHECK(hf_symp_rank(d).total() == 6); // 1 + 4 + 1
    CHECK(nielsen_number(d) == 1);
    CHECK(lefschetz_number(d) == -2);
    CHECK(verify_bound(d).all_ok());
}

TEST_CASE("pseudo-Anosov pieces alone: indices add up") {
    decomposition d;
    d.total_genus = 2;
    pa_component p;
    p.genus = 2;
    for (int k = 0; k < 3; ++k) p.nielsen_classes.push_back({pa_class_kind::IIIa, 1, -1, {}, {}});
    d.pa_components.push_back(p);
    CHECK(d.validate().empty());
    CHECK(lefschetz_number(d) == -3);
    CHECK(nielsen_number(d) == 3);
    CHECK(hf_symp_rank(d).total() == 3);
    CHECK(verify_bound(d).all_ok());
}

TEST_CASE("fixed component classification") {
    SUBCASE("no pseudo-Anosov contact") {
        const decomposition d = fixed_with_pa({});
        const auto cls = classify_fixed(d);
        CHECK(cls.sigma_a == std::vector<int>{0});
        CHECK(cls.sigma_b.empty());
        CHECK(cls.sigma_c.empty());
    }
    SUBCASE("one contact with three prongs") {
        const decomposition d = fixed_with_pa({3});
        const auto cls = classify_fixed(d);
        CHECK(cls.sigma_a.empty());
        REQUIRE(cls.sigma_b.count(3));
        CHECK(cls.sigma_b.at(3) == std::vector<int>{0});
    }
    SUBCASE("two contacts with two and three prongs") {
        const decomposition d = fixed_with_pa({2, 3});
        const auto cls = classify_fixed(d);
        CHECK(cls.sigma_a.empty());
        CHECK(cls.sigma_b.empty());
        REQUIRE(cls.sigma_c.count(5));
        CHECK(cls.sigma_c.at(5) == std::vector<int>{0});
    }
}

TEST_CASE("the punctured piece drives the one-contact summand") {
    const decomposition d = fixed_with_pa({3});
    const rank_breakdown b = hf_symp_rank(d);
    // genus-1 piece with 3 boundary circles and one puncture, nothing collapsed:
    // h = (1, 2*1 + 4 - 1, 0) = 6; prong term (3-1)*1 = 2
    REQUIRE(b.sigma_b.count(3));
    CHECK(b.sigma_b.at(3).first == 6);
    CHECK(b.sigma_b.at(3).second == 2);
}

TEST_CASE("absorbed boundary classes leave the pseudo-Anosov census") {
    decomposition d = fixed_with_pa({3});
    d.pa_components[0].nielsen_classes.push_back({pa_class_kind::IIId, 2, -1, {}, true});
    d.pa_components[0].nielsen_classes.push_back({pa_class_kind::IIIa, 1, -1, {}, {}});
    CHECK(d.validate().empty());
    CHECK(hf_symp_rank(d).pa_chain == 1);      // only the interior class counts
    const std::int64_t with_abutting = nielsen_number(d);
    d.pa_components[0].nielsen_classes.pop_back();
    d.pa_components[0].nielsen_classes.pop_back();
    CHECK(nielsen_number(d) == with_abutting - 1);
}

TEST_CASE("essential classes: punctured-torus pieces count, annular pieces do not") {
    // T1 -- A1 -- C -- A2 -- T2 with T1, T2 of genus one and one boundary,
    // C an annular fixed piece
    decomposition d;
    d.total_genus = 2;
    for (int i = 0; i < 2; ++i) {
        fixed_component t;
        t.genus = 1;
        t.boundaries.push_back({boundary_sign::plus, std::nullopt});
        d.fixed_components.push_back(std::move(t));
    }
    fixed_component c;
    c.genus = 0;
    c.boundaries.push_back({boundary_sign::plus, std::nullopt});
    c.boundaries.push_back({boundary_sign::plus, std::nullopt});
    d.fixed_components.push_back(std::move(c));
    d.annuli.push_back({annulus_kind::twist, twist_direction::positive, 1});
    d.annuli.push_back({annulus_kind::twist, twist_direction::negative, 1});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 0}, {endpoint_kind::fixed_boundary, 0, 0}});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 0, 1}, {endpoint_kind::fixed_boundary, 2, 0}});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 1, 0}, {endpoint_kind::fixed_boundary, 2, 1}});
    d.adjacency.push_back({{endpoint_kind::annulus_side, 1, 1}, {endpoint_kind::fixed_boundary, 1, 0}});
    CHECK(d.validate().empty());

    // only the two pieces with nonzero Euler characteristic carry an
    // essential class
    CHECK(nielsen_number(d) == 2);
    CHECK(lefschetz_number(d) == -2);
    CHECK(hf_symp_rank(d).total() == 3 + 3 + 2);
    CHECK(verify_bound(d).all_ok());
}

TEST_CASE("validation rejects inconsistent data") {
    SUBCASE("Euler characteristic mismatch") {
        decomposition d = flip_twist_swap();
        d.total_genus = 3;
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("Euler characteristic"), input_error);
    }
    SUBCASE("unglued boundary") {
        decomposition d = flip_twist_swap();
        d.periodic_components[0].boundary_count = 2;
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("unglued"), input_error);
    }
    SUBCASE("endpoint glued twice") {
        decomposition d = flip_twist_swap();
        d.adjacency.push_back(d.adjacency.front());
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("glued twice"), input_error);
    }
    SUBCASE("orbit members cannot carry fixed points") {
        decomposition d = flip_twist_swap();
        d.periodic_components[0].fixed_point_count = 1;
        CHECK_THROWS_AS(d.validate(), input_error);
    }
    SUBCASE("prong mismatch across a contact") {
        decomposition d = fixed_with_pa({3});
        d.fixed_components[0].boundaries[2].prongs = 4;
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("prong"), input_error);
    }
    SUBCASE("positive Euler characteristic pieces are not essential") {
        decomposition d;
        d.total_genus = 2;
        fixed_component disk;
        disk.genus = 0;
        disk.boundaries.push_back({boundary_sign::plus, std::nullopt});
        d.fixed_components.push_back(disk);
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("essential"), input_error);
    }
    SUBCASE("disconnected decompositions are rejected") {
        decomposition d = flip_twist_swap();
        // second copy of everything, not connected to the first
        d.annuli.push_back(d.annuli[0]);
        for (int i = 0; i < 2; ++i) d.periodic_components.push_back(d.periodic_components[0]);
        d.adjacency.push_back({{endpoint_kind::annulus_side, 1, 0}, {endpoint_kind::periodic_boundary, 2, 0}});
        d.adjacency.push_back({{endpoint_kind::annulus_side, 1, 1}, {endpoint_kind::periodic_boundary, 3, 0}});
        d.total_genus = 3; // matches the Euler characteristic sum of both pieces
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("connected"), input_error);
    }
    SUBCASE("homological cross-check per periodic component") {
        decomposition d = flip_twist_swap();
        d.periodic_components[0].orbit_size = 1;
        d.periodic_components[1].orbit_size = 1;
        d.periodic_components[0].h1_trace = 5; // forces a negative count
        d.h1_trace.reset();
        CHECK_THROWS_AS(d.validate(), input_error);
    }
    SUBCASE("global homological cross-check") {
        decomposition d = flip_twist_swap();
        d.h1_trace = 1;
        CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("h1_trace"), input_error);
    }
}

TEST_CASE("json round trip and schema strictness") {
    const decomposition d = flip_twist_swap();
    const auto j = decomposition_to_json(d);
    const decomposition back = decomposition_from_json(j);
    CHECK(decomposition_to_json(back) == j);
    CHECK(back.validate().empty());

    auto bad = j;
    bad["surprise"] = 1;
    CHECK_THROWS_WITH_AS(decomposition_from_json(bad), doctest::Contains("unknown field"), input_error);

    auto missing = j;
    missing.erase("annuli");
    CHECK_THROWS_WITH_AS(decomposition_from_json(missing), doctest::Contains("missing field"), input_error);

    auto bad_kind = j;
    bad_kind["annuli"][0]["kind"] = "spiral";
    CHECK_THROWS_AS(decomposition_from_json(bad_kind), input_error);
}

TEST_CASE("random decompositions are deterministic and valid") {
    const decomposition a = random_decomposition(0);
    const decomposition b = random_decomposition(0);
    CHECK(decomposition_to_json(a) == decomposition_to_json(b));

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const decomposition d = random_decomposition(seed);
        CHECK_NOTHROW(d.validate());
    }
}

TEST_CASE("randomized identities hold with zero violations") {
    int with_flip_twists = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const decomposition d = random_decomposition(seed);
        const fixed_point_report rep = verify_bound(d);
        CAPTURE(seed);
        CHECK(rep.nielsen_bounded);
        CHECK(rep.correction_matches);
        CHECK(rep.annulus_lefschetz_matches);
        CHECK(rep.lefschetz_consistent);
        CHECK(rep.rank_corrected - rep.rank_uncorrected == 2 * d.flip_twist_annuli());
        if (d.flip_twist_annuli() > 0) ++with_flip_twists;
    }
    CHECK(with_flip_twists >= 200); // the generator keeps the corrected term exercised
}

TEST_CASE("relabeling components does not change the evaluation") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        decomposition d = random_decomposition(seed);
        if (d.periodic_components.size() < 2) continue;
        decomposition swapped = d;
        std::swap(swapped.periodic_components[0], swapped.periodic_components[1]);
        for (auto& glue : swapped.adjacency)
            for (auto* e : {&glue.a, &glue.b})
                if (e->kind == endpoint_kind::periodic_boundary && e->id < 2) e->id = 1 - e->id;
        // the swap must keep boundary counts compatible with the adjacency
        bool compatible = true;
        for (const auto& glue : swapped.adjacency)
            for (const auto* e : {&glue.a, &glue.b})
                if (e->kind == endpoint_kind::periodic_boundary &&
                    e->sub >= swapped.periodic_components[static_cast<std::size_t>(e->id)].boundary_count)
                    compatible = false;
        if (!compatible) continue;
        CHECK(hf_symp_rank(swapped).total() == hf_symp_rank(d).total());
        CHECK(nielsen_number(swapped) == nielsen_number(d));
        CHECK(lefschetz_number(swapped) == lefschetz_number(d));
    }
}
