#pragma once

#include <string>

#include "json.hpp"

namespace varlip::harness {

using Json = nlohmann::ordered_json;

// Serialises with every floating-point value at 17 significant digits and
// non-finite values as null. Key order is insertion order.
std::string dump_json(const Json& value, int indent = 2);

// Floating-point text used by every output file.
std::string format_double(double v);

}  // namespace varlip::harness
