#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nsbox/box.hpp"

namespace nsbox {

// Box documents:
//   { "inputs_a": [..], "inputs_b": [..], "outputs_a": [..], "outputs_b": [..],
//     "table": [ {"x": .., "y": .., "a": .., "b": .., "p": "num/den"}, ... ] }
// Entries are written in lexicographic (x, y, a, b) order, zeros included.

nlohmann::ordered_json box_to_json(const BipartiteBox& box);
BipartiteBox box_from_json(const nlohmann::json& doc);

/// Parses a JSON document; malformed text or fields raise ParseError.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::filesystem::path& path);

BipartiteBox read_box(const std::filesystem::path& path);
void write_box(const std::filesystem::path& path, const BipartiteBox& box);

/// Helpers shared by the other document readers.
Alphabet alphabet_from_json(const nlohmann::json& doc, const char* field);
std::string label_from_json(const nlohmann::json& value, const std::string& where);
Rational rational_from_json(const nlohmann::json& value, const std::string& where);

}  // namespace nsbox
