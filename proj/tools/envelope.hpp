#pragma once

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace twinsieve::cli {

using Json = nlohmann::ordered_json;

/// {command, parameters, results, engine_version}
struct Envelope {
    std::string command;
    Json parameters = Json::object();
    Json results = Json::object();
    /// Name of the array in `results` that becomes one CSV row per element.
    /// Empty when the payload is a single record.
    std::string list_key;

    Json to_json() const;
};

std::string_view engine_version() noexcept;

/// Header row, then one row per element of results[list_key] (or a single
/// row). Top-level scalars repeat on every row; nested objects flatten to
/// dotted names; other scalar arrays are joined with ';'; null is empty.
std::string to_csv(const Envelope& envelope);

/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

} // namespace twinsieve::cli
