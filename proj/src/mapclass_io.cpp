#include "floerfp/mapclass_io.hpp"

#include <fstream>
#include <set>

namespace floerfp {

namespace {

using nlohmann::json;

void expect_fields(const json& j, const std::string& where, const std::set<std::string>& required,
                   const std::set<std::string>& optional) {
    if (!j.is_object()) throw input_error(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!required.count(key) && !optional.count(key))
            throw input_error(where + ": unknown field '" + key + "'");
    for (const auto& key : required)
        if (!j.contains(key)) throw input_error(where + ": missing field '" + key + "'");
}

std::int64_t get_int(const json& j, const std::string& where, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw input_error(where + ": field '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& where, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_string()) throw input_error(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

const json& get_array(const json& j, const std::string& where, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_array()) throw input_error(where + ": field '" + key + "' must be an array");
    return v;
}

gluing_endpoint endpoint_from_json(const json& j, const std::string& where) {
    expect_fields(j, where, {"kind", "id"}, {"side", "boundary"});
    gluing_endpoint e;
    const std::string kind = get_string(j, where, "kind");
    e.id = static_cast<int>(get_int(j, where, "id"));
    if (kind == "annulus") {
        e.kind = endpoint_kind::annulus_side;
        if (!j.contains("side")) throw input_error(where + ": annulus endpoint needs 'side'");
        if (j.contains("boundary")) throw input_error(where + ": annulus endpoint takes 'side', not 'boundary'");
        e.sub = static_cast<int>(get_int(j, where, "side"));
        return e;
    }
    if (kind == "fixed")
        e.kind = endpoint_kind::fixed_boundary;
    else if (kind == "periodic")
        e.kind = endpoint_kind::periodic_boundary;
    else if (kind == "pa")
        e.kind = endpoint_kind::pa_boundary;
    else
        throw input_error(where + ": unknown endpoint kind '" + kind + "'");
    if (!j.contains("boundary")) throw input_error(where + ": component endpoint needs 'boundary'");
    if (j.contains("side")) throw input_error(where + ": component endpoint takes 'boundary', not 'side'");
    e.sub = static_cast<int>(get_int(j, where, "boundary"));
    return e;
}

json endpoint_to_json(const gluing_endpoint& e) {
    nlohmann::ordered_json j;
    switch (e.kind) {
        case endpoint_kind::annulus_side:
            j["kind"] = "annulus";
            j["id"] = e.id;
            j["side"] = e.sub;
            return j;
        case endpoint_kind::fixed_boundary: j["kind"] = "fixed"; break;
        case endpoint_kind::periodic_boundary: j["kind"] = "periodic"; break;
        case endpoint_kind::pa_boundary: j["kind"] = "pa"; break;
    }
    j["id"] = e.id;
    j["boundary"] = e.sub;
    return j;
}

} // namespace

decomposition decomposition_from_json(const json& j) {
    expect_fields(j, "decomposition",
                  {"total_genus", "fixed_components", "periodic_components", "pa_components", "annuli",
                   "adjacency"},
                  {"h1_trace"});
    decomposition d;
    d.total_genus = static_cast<int>(get_int(j, "decomposition", "total_genus"));
    if (j.contains("h1_trace")) d.h1_trace = get_int(j, "decomposition", "h1_trace");

    std::size_t index = 0;
    for (const auto& aj : get_array(j, "decomposition", "annuli")) {
        const std::string where = "annuli[" + std::to_string(index++) + "]";
        expect_fields(aj, where, {"kind", "direction", "period"}, {});
        annulus a;
        const std::string kind = get_string(aj, where, "kind");
        if (kind == "twist")
            a.kind = annulus_kind::twist;
        else if (kind == "flip_twist")
            a.kind = annulus_kind::flip_twist;
        else
            throw input_error(where + ": kind must be 'twist' or 'flip_twist'");
        const std::string dir = get_string(aj, where, "direction");
        if (dir == "positive")
            a.direction = twist_direction::positive;
        else if (dir == "negative")
            a.direction = twist_direction::negative;
        else
            throw input_error(where + ": direction must be 'positive' or 'negative'");
        a.period = static_cast<int>(get_int(aj, where, "period"));
        d.annuli.push_back(a);
    }

    index = 0;
    for (const auto& fj : get_array(j, "decomposition", "fixed_components")) {
        const std::string where = "fixed_components[" + std::to_string(index++) + "]";
        expect_fields(fj, where, {"genus", "boundaries"}, {});
        fixed_component f;
        f.genus = static_cast<int>(get_int(fj, where, "genus"));
        std::size_t bidx = 0;
        for (const auto& bj : get_array(fj, where, "boundaries")) {
            const std::string bwhere = where + ".boundaries[" + std::to_string(bidx++) + "]";
            expect_fields(bj, bwhere, {"sign"}, {"prongs"});
            fixed_boundary b;
            const std::string sign = get_string(bj, bwhere, "sign");
            if (sign == "minus")
                b.sign = boundary_sign::minus;
            else if (sign == "plus")
                b.sign = boundary_sign::plus;
            else
                throw input_error(bwhere + ": sign must be 'minus' or 'plus'");
            if (bj.contains("prongs")) b.prongs = static_cast<int>(get_int(bj, bwhere, "prongs"));
            f.boundaries.push_back(b);
        }
        d.fixed_components.push_back(std::move(f));
    }

    index = 0;
    for (const auto& pj : get_array(j, "decomposition", "periodic_components")) {
        const std::string where = "periodic_components[" + std::to_string(index++) + "]";
        expect_fields(pj, where, {"genus", "boundary_count", "period", "orbit_size", "fixed_point_count"},
                      {"h1_trace"});
        periodic_component p;
        p.genus = static_cast<int>(get_int(pj, where, "genus"));
        p.boundary_count = static_cast<int>(get_int(pj, where, "boundary_count"));
        p.period = static_cast<int>(get_int(pj, where, "period"));
        p.orbit_size = static_cast<int>(get_int(pj, where, "orbit_size"));
        p.fixed_point_count = get_int(pj, where, "fixed_point_count");
        if (pj.contains("h1_trace")) p.h1_trace = get_int(pj, where, "h1_trace");
        d.periodic_components.push_back(p);
    }

    index = 0;
    for (const auto& pj : get_array(j, "decomposition", "pa_components")) {
        const std::string where = "pa_components[" + std::to_string(index++) + "]";
        expect_fields(pj, where, {"genus", "boundary_prongs", "nielsen_classes"}, {});
        pa_component p;
        p.genus = static_cast<int>(get_int(pj, where, "genus"));
        for (const auto& v : get_array(pj, where, "boundary_prongs")) {
            if (!v.is_number_integer()) throw input_error(where + ": boundary_prongs must be integers");
            p.boundary_prongs.push_back(v.get<int>());
        }
        std::size_t cidx = 0;
        for (const auto& cj : get_array(pj, where, "nielsen_classes")) {
            const std::string cwhere = where + ".nielsen_classes[" + std::to_string(cidx++) + "]";
            expect_fields(cj, cwhere, {"kind", "point_count", "index_per_point"},
                          {"prongs", "abuts_fixed_component"});
            pa_nielsen_class cls;
            const std::string kind = get_string(cj, cwhere, "kind");
            if (kind == "IIIa")
                cls.kind = pa_class_kind::IIIa;
            else if (kind == "IIIb")
                cls.kind = pa_class_kind::IIIb;
            else if (kind == "IIIc")
                cls.kind = pa_class_kind::IIIc;
            else if (kind == "IIId")
                cls.kind = pa_class_kind::IIId;
            else
                throw input_error(cwhere + ": kind must be one of IIIa, IIIb, IIIc, IIId");
            cls.point_count = get_int(cj, cwhere, "point_count");
            cls.index_per_point = get_int(cj, cwhere, "index_per_point");
            if (cj.contains("prongs")) cls.prongs = static_cast<int>(get_int(cj, cwhere, "prongs"));
            if (cj.contains("abuts_fixed_component")) {
                if (!cj.at("abuts_fixed_component").is_boolean())
                    throw input_error(cwhere + ": abuts_fixed_component must be a boolean");
                cls.abuts_fixed_component = cj.at("abuts_fixed_component").get<bool>();
            }
            p.nielsen_classes.push_back(cls);
        }
        d.pa_components.push_back(std::move(p));
    }

    index = 0;
    for (const auto& gj : get_array(j, "decomposition", "adjacency")) {
        const std::string where = "adjacency[" + std::to_string(index++) + "]";
        expect_fields(gj, where, {"a", "b"}, {});
        d.adjacency.push_back({endpoint_from_json(gj.at("a"), where + ".a"),
                               endpoint_from_json(gj.at("b"), where + ".b")});
    }
    return d;
}

nlohmann::ordered_json decomposition_to_json(const decomposition& d) {
    nlohmann::ordered_json j;
    j["total_genus"] = d.total_genus;
    if (d.h1_trace) j["h1_trace"] = *d.h1_trace;
    j["annuli"] = nlohmann::ordered_json::array();
    for (const auto& a : d.annuli) {
        nlohmann::ordered_json aj;
        aj["kind"] = a.kind == annulus_kind::twist ? "twist" : "flip_twist";
        aj["direction"] = a.direction == twist_direction::positive ? "positive" : "negative";
        aj["period"] = a.period;
        j["annuli"].push_back(aj);
    }
    j["fixed_components"] = nlohmann::ordered_json::array();
    for (const auto& f : d.fixed_components) {
        nlohmann::ordered_json fj;
        fj["genus"] = f.genus;
        fj["boundaries"] = nlohmann::ordered_json::array();
        for (const auto& b : f.boundaries) {
            nlohmann::ordered_json bj;
            bj["sign"] = b.sign == boundary_sign::minus ? "minus" : "plus";
            if (b.prongs) bj["prongs"] = *b.prongs;
            fj["boundaries"].push_back(bj);
        }
        j["fixed_components"].push_back(fj);
    }
    j["periodic_components"] = nlohmann::ordered_json::array();
    for (const auto& p : d.periodic_components) {
        nlohmann::ordered_json pj;
        pj["genus"] = p.genus;
        pj["boundary_count"] = p.boundary_count;
        pj["period"] = p.period;
        pj["orbit_size"] = p.orbit_size;
        pj["fixed_point_count"] = p.fixed_point_count;
        if (p.h1_trace) pj["h1_trace"] = *p.h1_trace;
        j["periodic_components"].push_back(pj);
    }
    j["pa_components"] = nlohmann::ordered_json::array();
    for (const auto& p : d.pa_components) {
        nlohmann::ordered_json pj;
        pj["genus"] = p.genus;
        pj["boundary_prongs"] = p.boundary_prongs;
        pj["nielsen_classes"] = nlohmann::ordered_json::array();
        for (const auto& cls : p.nielsen_classes) {
            nlohmann::ordered_json cj;
            switch (cls.kind) {
                case pa_class_kind::IIIa: cj["kind"] = "IIIa"; break;
                case pa_class_kind::IIIb: cj["kind"] = "IIIb"; break;
                case pa_class_kind::IIIc: cj["kind"] = "IIIc"; break;
                case pa_class_kind::IIId: cj["kind"] = "IIId"; break;
            }
            cj["point_count"] = cls.point_count;
            cj["index_per_point"] = cls.index_per_point;
            if (cls.prongs) cj["prongs"] = *cls.prongs;
            if (cls.abuts_fixed_component) cj["abuts_fixed_component"] = *cls.abuts_fixed_component;
            pj["nielsen_classes"].push_back(cj);
        }
        j["pa_components"].push_back(pj);
    }
    j["adjacency"] = nlohmann::ordered_json::array();
    for (const auto& glue : d.adjacency) {
        nlohmann::ordered_json gj;
        gj["a"] = endpoint_to_json(glue.a);
        gj["b"] = endpoint_to_json(glue.b);
        j["adjacency"].push_back(gj);
    }
    return j;
}

decomposition load_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open decomposition file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error(path + ": " + e.what());
    }
    try {
        return decomposition_from_json(j);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

} // namespace floerfp
