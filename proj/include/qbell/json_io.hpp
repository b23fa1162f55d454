#pragma once

#include <string>

#include <json.hpp>

#include "qbell/nsbox.hpp"

namespace qbell::json_io {

nlohmann::json box_to_json(const nsbox::BoxDistribution& box);
nsbox::BoxDistribution box_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const nsbox::GuessingProfile& profile);
nsbox::GuessingProfile profile_from_json(const nlohmann::json& j);

/// Parse the file as JSON; throws std::runtime_error with the path on failure.
nlohmann::json load_json_file(const std::string& path);

} // namespace qbell::json_io
