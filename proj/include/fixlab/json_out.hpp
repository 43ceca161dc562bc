#pragma once

#include <string>

#include <json.hpp>

namespace fixlab {

/// Serializes an ordered JSON document with a fixed layout: keys in
/// insertion order, floats printed as %.17g so identical values always
/// produce identical bytes. NaN or infinity anywhere in the tree raises
/// NumericError (outputs must never contain them).
std::string dump_deterministic(const nlohmann::ordered_json& doc, int indent = 2);

// Single-line form used in CSV headers.
std::string dump_compact(const nlohmann::ordered_json& doc);

// %.17g rendering used for every floating-point cell (JSON and CSV).
std::string format_double(double v);

}  // namespace fixlab
