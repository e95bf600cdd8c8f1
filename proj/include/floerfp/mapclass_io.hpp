#pragma once

#include <string>

#include "floerfp/mapclass.hpp"

#include <json.hpp>

namespace floerfp {

// Strict schema: unknown fields are rejected, optional fields are
// h1_trace (top level and per periodic component), prongs on fixed
// boundaries (required exactly for boundaries glued to pseudo-Anosov
// pieces), and the class fields tied to their kinds.
decomposition decomposition_from_json(const nlohmann::json& j);
nlohmann::ordered_json decomposition_to_json(const decomposition& d);

decomposition load_decomposition_file(const std::string& path);

} // namespace floerfp
