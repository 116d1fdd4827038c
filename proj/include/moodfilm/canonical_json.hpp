#pragma once

#include <string>

#include "json.hpp"

namespace moodfilm {

// Fixed three-decimal rendering with trailing zeros trimmed; "-0" becomes "0".
// Throws std::invalid_argument for NaN or infinity.
std::string format_number(double value);

// Compact JSON, object keys in byte order, floats through format_number,
// integers verbatim, single trailing newline.
std::string canonical_dump(const nlohmann::json& value);

}  // namespace moodfilm
