#pragma once

#include <string>

#include "json.hpp"
#include "varlp/halfline.hpp"
#include "varlp/stepfn.hpp"

namespace varlp {

using Json = nlohmann::json;

/// {"pieces":[{"len":..,"f":..,"p":..}, ...]}; "p" defaults to 1.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Like the instance format with an extra "w" per piece (default 1) and no
/// unit-sum constraint on the lengths.
Json halfline_to_json(const HalfLineInstance& inst);
HalfLineInstance halfline_from_json(const Json& j);

/// Throws ParseError when the file cannot be opened or parsed.
Json read_json_file(const std::string& path);
Instance read_instance_file(const std::string& path);
HalfLineInstance read_halfline_file(const std::string& path);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace varlp
