#pragma once

#include "logf1/chow.hpp"
#include "logf1/complex.hpp"
#include "logf1/log.hpp"
#include "logf1/sbl.hpp"
#include "logf1/scheme.hpp"

#include <json.hpp>

#include <string>

namespace logf1 {

using Json = nlohmann::ordered_json;

// Integers go out as JSON numbers when they fit in 64 bits and as decimal strings otherwise.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j, const std::string& where);
Json vector_to_json(const IntVector& v);

// {"rank": int, "rays": [[int,...],...], "maximal_cones": [[ray_index,...],...]}
Json fan_to_json(const Fan& f);
// Throws InputError on schema violations, non-primitive or repeated rays, bad indices.
Fan fan_from_json(const Json& j);

// Fan schema plus exactly one of "boundary_rays" or "open_maximal_cones". Output falls back
// to "open_cones" (ray index lists) when Δ is neither of those shapes.
Json log_pair_to_json(const LogFanPair& p);
LogFanPair log_pair_from_json(const Json& j);

Json steps_to_json(const std::vector<StarSubdivisionStep>& steps);
Json diagram_to_json(const CnrDiagram& d);
Json atlas_to_json(const Atlas& a);
Json group_to_json(const FPAbelianGroup& g);

// Parses a file; InputError carries the byte position on syntax errors.
Json read_json_file(const std::string& path);

}  // namespace logf1
