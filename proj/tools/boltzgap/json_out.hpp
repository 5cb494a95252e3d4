#pragma once

#include <string>

#include <json.hpp>

namespace boltzgap::cli {

using Json = nlohmann::ordered_json;

/// Pretty printer that writes every floating-point value with %.17g and
/// non-finite values as null.
std::string dump_json(const Json& j);

}  // namespace boltzgap::cli
