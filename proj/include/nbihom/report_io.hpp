#pragma once

#include <string>

#include <json.hpp>

#include "nbihom/report.hpp"

namespace nbihom {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json report_to_json(const Report& r);
nlohmann::json check_to_json(const CheckResult& c);
Status overall_status(const Report& r);

// Indented "key: value" rendering of a JSON value (object keys sorted).
std::string render_text(const nlohmann::json& j);

std::string sha256_hex(const std::string& bytes);

}  // namespace nbihom
