#include "nsbox/boolean_function.hpp"

#include <fstream>
#include <sstream>

#include "nsbox/errors.hpp"

namespace nsbox {

std::uint64_t parse_bits(std::string_view bits, int width) {
  if (static_cast<int>(bits.size()) != width) {
    throw DomainError("bitstring '" + std::string(bits) + "' has length " + std::to_string(bits.size()) +
                      ", expected " + std::to_string(width));
  }
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("'" + std::string(bits) + "' is not a bitstring");
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

std::string format_bits(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

void BooleanFunction::check_widths(int alice_bits, int bob_bits) {
  if (alice_bits < 0 || bob_bits < 0 || alice_bits + bob_bits > kMaxBits) {
    throw DomainError("input widths l=" + std::to_string(alice_bits) + ", m=" + std::to_string(bob_bits) +
                      " out of range");
  }
}

BooleanFunction::BooleanFunction(int alice_bits, int bob_bits, std::vector<std::uint8_t> truth_table)
    : l_(alice_bits), m_(bob_bits), table_(std::move(truth_table)) {
  check_widths(l_, m_);
  if (table_.size() != (std::size_t{1} << (l_ + m_))) {
    throw StructuralError("truth table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(std::size_t{1} << (l_ + m_)));
  }
  for (auto bit : table_) {
    if (bit > 1) throw StructuralError("truth table entries must be 0 or 1");
  }
}

BooleanFunction BooleanFunction::from_code(int alice_bits, int bob_bits, std::uint64_t code) {
  if (alice_bits + bob_bits > 6) throw DomainError("from_code supports l + m <= 6");
  check_widths(alice_bits, bob_bits);
  std::vector<std::uint8_t> table(std::size_t{1} << (alice_bits + bob_bits));
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<std::uint8_t>((code >> i) & 1U);
  return BooleanFunction(alice_bits, bob_bits, std::move(table));
}

BooleanFunction BooleanFunction::constant(int alice_bits, int bob_bits, bool value) {
  check_widths(alice_bits, bob_bits);
  return BooleanFunction(alice_bits, bob_bits,
                         std::vector<std::uint8_t>(std::size_t{1} << (alice_bits + bob_bits), value ? 1 : 0));
}

int BooleanFunction::at(std::uint64_t x, std::uint64_t y) const {
  if (x >= alice_inputs() || y >= bob_inputs()) throw DomainError("input out of range for the function");
  return (*this)(x, y);
}

BooleanFunction BooleanFunction::complement() const {
  std::vector<std::uint8_t> flipped(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) flipped[i] = static_cast<std::uint8_t>(table_[i] ^ 1U);
  return BooleanFunction(l_, m_, std::move(flipped));
}

BooleanFunction and_function() {
  return BooleanFunction::from_predicate(1, 1, [](auto x, auto y) { return (x & y) != 0; });
}
BooleanFunction or_function() {
  return BooleanFunction::from_predicate(1, 1, [](auto x, auto y) { return (x | y) != 0; });
}
BooleanFunction xor_function() {
  return BooleanFunction::from_predicate(1, 1, [](auto x, auto y) { return (x ^ y) != 0; });
}

BooleanFunction parse_truth_table(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int l = 0, m = 0;
  std::vector<std::uint8_t> bits;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    if (!have_header) {
      std::vector<std::string> parts;
      while (tokens >> token) parts.push_back(token);
      if (parts.empty()) continue;
      const std::string where = "line " + std::to_string(line_no);
      if (parts.size() != 2) throw ParseError(where, "header must be 'l m'");
      try {
        std::size_t used = 0;
        l = std::stoi(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("l");
        m = std::stoi(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("m");
      } catch (const std::exception&) {
        throw ParseError(where, "header must hold two integers 'l m'");
      }
      if (l < 0 || m < 0 || l + m > BooleanFunction::kMaxBits) throw ParseError(where, "widths out of range");
      have_header = true;
      continue;
    }
    while (tokens >> token) {
      for (char c : token) {
        if (c != '0' && c != '1') {
          throw ParseError("line " + std::to_string(line_no), std::string("unexpected character '") + c + "'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      }
    }
  }
  if (!have_header) throw ParseError("", "empty truth table: missing 'l m' header");
  const std::size_t expected = std::size_t{1} << (l + m);
  if (bits.size() != expected) {
    throw ParseError("", "expected " + std::to_string(expected) + " bits, found " + std::to_string(bits.size()));
  }
  return BooleanFunction(l, m, std::move(bits));
}

BooleanFunction parse_truth_table_text(const std::string& text) {
  std::istringstream in(text);
  return parse_truth_table(in);
}

BooleanFunction read_truth_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  try {
    return parse_truth_table(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.what());
  }
}

std::string format_truth_table(const BooleanFunction& f) {
  std::string out = std::to_string(f.alice_bits()) + " " + std::to_string(f.bob_bits()) + "\n";
  for (auto bit : f.truth_table()) out.push_back(static_cast<char>('0' + bit));
  out.push_back('\n');
  return out;
}

}  // namespace nsbox
