#pragma once

#include <string>

#include <json.hpp>

namespace plap {

/// Compact JSON text with insertion-ordered keys and every floating-point
/// number printed with 17 significant digits, so identical inputs give
/// byte-identical output. Non-finite numbers are written as null.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace plap
