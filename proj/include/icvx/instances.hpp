#pragma once

#include <string>
#include <vector>

#include "icvx/instance.hpp"

namespace icvx {

/// karney, padded_finite_qp, onedim_tail, minimax_abs.
std::vector<std::string> builtin_names();
/// Throws Error for an unknown name.
Instance builtin(const std::string& name);

/// Parses an instance document. Errors carry the line (syntax) or the field
/// path (schema), e.g. "constraints.prefix[1].a: expected 2 numbers".
Instance parse_instance(const std::string& text);
/// Canonical document: fixed field order, dense arrays, 2-space indent.
std::string serialize_instance(const Instance& inst);

/// "builtin:NAME" or a path to a JSON file.
Instance load_instance(const std::string& ref);

}  // namespace icvx
