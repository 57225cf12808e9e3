#include "nsbox/box_io.hpp"

#include <fstream>
#include <sstream>

#include "nsbox/errors.hpp"

namespace nsbox {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json box_to_json(const BipartiteBox& box) {
  ordered_json doc;
  doc["inputs_a"] = box.inputs_a().labels();
  doc["inputs_b"] = box.inputs_b().labels();
  doc["outputs_a"] = box.outputs_a().labels();
  doc["outputs_b"] = box.outputs_b().labels();
  ordered_json table = ordered_json::array();
  const auto& s = box.scenario();
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y)
      for (std::size_t a = 0; a < s.outputs_a.size(); ++a)
        for (std::size_t b = 0; b < s.outputs_b.size(); ++b) {
          ordered_json e;
          e["x"] = s.inputs_a[x];
          e["y"] = s.inputs_b[y];
          e["a"] = s.outputs_a[a];
          e["b"] = s.outputs_b[b];
          e["p"] = to_string(box(x, y, a, b));
          table.push_back(std::move(e));
        }
  doc["table"] = std::move(table);
  return doc;
}

std::string label_from_json(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw ParseError(where, "expected a string or integer symbol");
}

Rational rational_from_json(const json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where, "expected a \"num/den\" string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
}

Alphabet alphabet_from_json(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(field, "missing field");
  const auto& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError(field, "expected an array of symbols");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    labels.push_back(label_from_json(arr[i], std::string(field) + "[" + std::to_string(i) + "]"));
  }
  try {
    return Alphabet(std::move(labels));
  } catch (const StructuralError& e) {
    throw ParseError(field, e.what());
  }
}

BipartiteBox box_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "box document must be a JSON object");
  Scenario scenario{alphabet_from_json(doc, "inputs_a"), alphabet_from_json(doc, "inputs_b"),
                    alphabet_from_json(doc, "outputs_a"), alphabet_from_json(doc, "outputs_b")};
  if (!doc.contains("table") || !doc.at("table").is_array()) {
    throw ParseError("table", "missing or not an array");
  }
  std::vector<TableEntry> entries;
  const auto& table = doc.at("table");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string where = "table[" + std::to_string(i) + "]";
    const auto& e = table[i];
    if (!e.is_object()) throw ParseError(where, "expected an object");
    for (const char* key : {"x", "y", "a", "b", "p"}) {
      if (!e.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
    }
    entries.push_back(TableEntry{label_from_json(e["x"], where + ".x"),
                                 label_from_json(e["y"], where + ".y"),
                                 label_from_json(e["a"], where + ".a"),
                                 label_from_json(e["b"], where + ".b"),
                                 rational_from_json(e["p"], where + ".p")});
  }
  return BipartiteBox::from_entries(std::move(scenario), entries);
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

BipartiteBox read_box(const std::filesystem::path& path) {
  return box_from_json(read_json_file(path));
}

void write_box(const std::filesystem::path& path, const BipartiteBox& box) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << box_to_json(box).dump(2) << "\n";
}

}  // namespace nsbox
