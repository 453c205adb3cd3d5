#pragma once

#include <json.hpp>
#include <string>

#include "freeshear/basis.hpp"
#include "freeshear/field.hpp"
#include "freeshear/profiles.hpp"

namespace freeshear::detail {

nlohmann::json profile_to_json(const ShearProfile& profile);
/// path prefixes error messages, e.g. "profile".
ShearProfile profile_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json truncation_to_json(const Truncation& t);
Truncation truncation_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace freeshear::detail
