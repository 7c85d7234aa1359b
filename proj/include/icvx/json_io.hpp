#pragma once

#include <string>

#include "json.hpp"

#include "icvx/instance.hpp"

namespace icvx {

using json = nlohmann::ordered_json;

json fn_to_json(const ConvexFn& f);
/// `path` prefixes error messages.
ConvexFn fn_from_json(const json& j, int dim, const std::string& path);

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, int dim, const std::string& path);

/// Finite values as numbers, infinities as the strings "+inf" / "-inf".
json ext_to_json(const ExtReal& v);
json ext_to_json(const ExtValue& v);

}  // namespace icvx
