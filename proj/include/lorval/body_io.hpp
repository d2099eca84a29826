#pragma once

#include <string>

#include "json.hpp"
#include "lorval/bodies.hpp"

namespace lorval {

using Json = nlohmann::json;

Json body_to_json(const ConvexBody& K);
ConvexBody body_from_json(const Json& j);
ConvexBody load_body(const std::string& path);

// {"atoms": [[beta, mass], ...], "density": {"samples": [...]}} with the
// samples on a uniform grid over [-pi/2, pi/2]
ZonalMeasure measure_from_json(const Json& j);
ZonalMeasure load_measure(const std::string& path);

Json read_json_file(const std::string& path);

}  // namespace lorval
