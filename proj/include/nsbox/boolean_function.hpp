#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace nsbox {

/// Parses a big-endian bitstring ("10" -> 2). Throws DomainError if the
/// length differs from `width` or a character is not 0/1.
std::uint64_t parse_bits(std::string_view bits, int width);
std::string format_bits(std::uint64_t value, int width);

/// f : {0,1}^l x {0,1}^m -> {0,1}, stored as a truth table indexed
/// (x << m) | y, i.e. lexicographic in (x, y) with big-endian bitstrings.
class BooleanFunction {
 public:
  static constexpr int kMaxBits = 24;

  BooleanFunction(int alice_bits, int bob_bits, std::vector<std::uint8_t> truth_table);

  template <typename Fn>
  static BooleanFunction from_predicate(int alice_bits, int bob_bits, Fn&& fn) {
    check_widths(alice_bits, bob_bits);
    std::vector<std::uint8_t> table(std::size_t{1} << (alice_bits + bob_bits));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << alice_bits); ++x)
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << bob_bits); ++y)
        table[(x << bob_bits) | y] = fn(x, y) ? 1 : 0;
    return BooleanFunction(alice_bits, bob_bits, std::move(table));
  }

  /// Function whose truth-table bit i is bit i of `code`; needs l + m <= 6.
  static BooleanFunction from_code(int alice_bits, int bob_bits, std::uint64_t code);
  static BooleanFunction constant(int alice_bits, int bob_bits, bool value);

  int alice_bits() const { return l_; }
  int bob_bits() const { return m_; }
  std::uint64_t alice_inputs() const { return std::uint64_t{1} << l_; }
  std::uint64_t bob_inputs() const { return std::uint64_t{1} << m_; }
  const std::vector<std::uint8_t>& truth_table() const { return table_; }

  /// Unchecked evaluation on integer-encoded inputs.
  int operator()(std::uint64_t x, std::uint64_t y) const { return table_[(x << m_) | y]; }
  /// Range-checked evaluation; throws DomainError.
  int at(std::uint64_t x, std::uint64_t y) const;

  BooleanFunction complement() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  static void check_widths(int alice_bits, int bob_bits);

  int l_;
  int m_;
  std::vector<std::uint8_t> table_;
};

BooleanFunction and_function();  // x * y on single bits
BooleanFunction or_function();
BooleanFunction xor_function();

// Truth-table files: a header line "l m", then 2^(l+m) bits in lexicographic
// (x, y) order, whitespace-separated or run together. '#' starts a comment.
BooleanFunction parse_truth_table(std::istream& in);
BooleanFunction parse_truth_table_text(const std::string& text);
BooleanFunction read_truth_table(const std::filesystem::path& path);
std::string format_truth_table(const BooleanFunction& f);

}  // namespace nsbox
