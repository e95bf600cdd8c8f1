#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floerfp/common.hpp"

namespace floerfp {

// Combinatorial data of a perturbed standard-form diffeomorphism of a
// closed oriented surface: invariant annuli carrying (flip-)twist maps, and
// complementary pieces that are pointwise fixed, periodic, or
// pseudo-Anosov, glued along their boundaries.

enum class annulus_kind { twist, flip_twist };
enum class twist_direction { positive, negative };

struct annulus {
    annulus_kind kind = annulus_kind::twist;
    twist_direction direction = twist_direction::positive;
    int period = 1; // smallest l with the l-th iterate mapping the annulus to itself

    // a preserved flip-twist annulus carries exactly two fixed points
    bool carries_fixed_points() const { return kind == annulus_kind::flip_twist && period == 1; }
};

enum class boundary_sign { minus, plus };

struct fixed_boundary {
    boundary_sign sign = boundary_sign::plus;
    std::optional<int> prongs; // present exactly when glued to a pseudo-Anosov boundary
};

struct fixed_component {
    int genus = 0;
    std::vector<fixed_boundary> boundaries;

    int euler_characteristic() const { return 2 - 2 * genus - static_cast<int>(boundaries.size()); }
    int collapsed_count() const;
};

struct periodic_component {
    int genus = 0;
    int boundary_count = 0;
    int period = 1;     // l >= 2, or l == 1 for a non-identity periodic map
    int orbit_size = 1; // components permuted in an orbit of size > 1 carry no fixed points
    std::int64_t fixed_point_count = 0;
    std::optional<std::int64_t> h1_trace; // enables the homological cross-check

    int euler_characteristic() const { return 2 - 2 * genus - boundary_count; }
};

enum class pa_class_kind { IIIa, IIIb, IIIc, IIId };

// One Nielsen class of fixed points inside a pseudo-Anosov component.  The
// class has uniform index; interior regular classes (IIIa) and rotated
// singular classes (IIIc) are singletons.
struct pa_nielsen_class {
    pa_class_kind kind = pa_class_kind::IIIa;
    std::int64_t point_count = 1;
    std::int64_t index_per_point = -1;
    std::optional<int> prongs;                  // IIIb / IIIc
    std::optional<bool> abuts_fixed_component;  // IIId

    // boundary fixed points next to a fixed component are bookkept with the
    // fixed component, not with the pseudo-Anosov piece
    bool absorbed_by_fixed_component() const {
        return kind == pa_class_kind::IIId && abuts_fixed_component.value_or(false);
    }
};

struct pa_component {
    int genus = 0;
    std::vector<int> boundary_prongs; // one prong count per boundary circle
    std::vector<pa_nielsen_class> nielsen_classes;

    int euler_characteristic() const { return 2 - 2 * genus - static_cast<int>(boundary_prongs.size()); }
};

enum class endpoint_kind { annulus_side, fixed_boundary, periodic_boundary, pa_boundary };

struct gluing_endpoint {
    endpoint_kind kind = endpoint_kind::annulus_side;
    int id = 0;  // index into the corresponding list
    int sub = 0; // annulus side (0/1) or boundary index

    bool operator==(const gluing_endpoint&) const = default;
    bool operator<(const gluing_endpoint& o) const;
};

struct gluing {
    gluing_endpoint a, b;
};

struct decomposition {
    int total_genus = 0;
    std::vector<fixed_component> fixed_components;
    std::vector<periodic_component> periodic_components;
    std::vector<pa_component> pa_components;
    std::vector<annulus> annuli;
    std::vector<gluing> adjacency;
    std::optional<std::int64_t> h1_trace; // trace of the whole-surface action on H_1

    // Structural validation: index ranges, perfect matching of boundaries
    // and annulus sides, prong agreement, Euler characteristic bookkeeping,
    // connectivity, orbit and homological consistency.  Returns warnings
    // for accepted borderline inputs.
    std::vector<std::string> validate() const;

    int flip_twist_annuli() const; // n_f: preserved flip-twist annuli
    // attached pseudo-Anosov prong counts per boundary of one fixed component,
    // in boundary order; entries only for boundaries glued to pA pieces
    std::vector<std::pair<int, int>> pa_contacts(int fixed_index) const; // (boundary, prongs)
};

// Partition of the fixed components: pieces meeting no pseudo-Anosov
// component, pieces meeting one at a boundary with p prongs, and pieces
// meeting at least two with q prongs in total.
struct fixed_classification {
    std::vector<int> sigma_a;
    std::map<int, std::vector<int>> sigma_b; // p -> component indices
    std::map<int, std::vector<int>> sigma_c; // q -> component indices
};

fixed_classification classify_fixed(const decomposition& d);

// Total rank of the symplectic Floer homology of the mapping class,
// evaluated summand by summand.  The pieces meeting one pseudo-Anosov
// component enter through their once-punctured homology; the flip-twist
// term contributes two generators per preserved flip-twist annulus.
struct rank_breakdown {
    std::int64_t sigma_a = 0;
    std::map<int, std::pair<std::int64_t, std::int64_t>> sigma_b; // p -> (homology, prong term)
    std::map<int, std::pair<std::int64_t, std::int64_t>> sigma_c; // q -> (homology, prong term)
    std::int64_t periodic_lefschetz = 0;
    std::int64_t flip_twist = 0;
    std::int64_t pa_chain = 0;

    std::int64_t total() const;
};

rank_breakdown hf_symp_rank(const decomposition& d);

// The same evaluation without the flip-twist term.
std::int64_t hf_symp_rank_uncorrected(const decomposition& d);

// Sum of fixed point indices: Euler characteristics of fixed components,
// +1 per perturbed periodic fixed point, +2 per preserved flip-twist
// annulus, and the class indices of the pseudo-Anosov pieces.
std::int64_t lefschetz_number(const decomposition& d);

// Number of essential Nielsen classes.
std::int64_t nielsen_number(const decomposition& d);

struct fixed_point_report {
    std::int64_t nielsen = 0;
    std::int64_t rank_corrected = 0;
    std::int64_t rank_uncorrected = 0;
    std::int64_t lefschetz = 0;
    std::int64_t lefschetz_by_class = 0;
    std::int64_t slack = 0;
    std::vector<std::pair<std::string, std::int64_t>> class_indices; // label -> total index
    bool nielsen_bounded = false;      // nielsen <= corrected rank
    bool correction_matches = false;   // corrected - uncorrected == 2 n_f
    bool annulus_lefschetz_matches = false; // Lefschetz number on the annuli == 2 n_f
    bool lefschetz_consistent = false; // per-class sum equals component sum

    bool all_ok() const {
        return nielsen_bounded && correction_matches && annulus_lefschetz_matches && lefschetz_consistent;
    }
};

fixed_point_report verify_bound(const decomposition& d);

// Deterministic generator of valid decompositions for randomized testing.
decomposition random_decomposition(std::uint64_t seed, int size_budget = 3);

} // namespace floerfp
