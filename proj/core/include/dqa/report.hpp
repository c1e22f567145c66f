#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace dqa {

// FNV-1a, printed as 16 hex digits; used to fingerprint inputs in reports.
std::string content_hash(const std::string& bytes);

// Canonical serialization: sorted keys, no whitespace variance. nlohmann
// objects already iterate sorted; this pins the format in one place.
std::string canon_dump(const nlohmann::json& j, int indent = -1);

}  // namespace dqa
