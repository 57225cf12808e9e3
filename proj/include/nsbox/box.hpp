#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox {

enum class Party { alice, bob };

const char* to_string(Party party);

/// Ordered finite set of distinct symbols. Bitstring alphabets are generated
/// in lexicographic order, which coincides with big-endian integer order.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  /// All bitstrings of the given length; length 0 yields the single empty label.
  static Alphabet bitstrings(int length);
  /// Labels "0", "1", ..., "n-1".
  static Alphabet integers(std::size_t count);

  std::size_t size() const { return labels_.size(); }
  const std::string& operator[](std::size_t index) const { return labels_[index]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> find(const std::string& label) const;
  /// Throws StructuralError for an unknown label.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Alphabets of a bipartite scenario: Alice's and Bob's inputs and outputs.
struct Scenario {
  Alphabet inputs_a;
  Alphabet inputs_b;
  Alphabet outputs_a;
  Alphabet outputs_b;

  std::size_t table_size() const {
    return inputs_a.size() * inputs_b.size() * outputs_a.size() * outputs_b.size();
  }
  /// Flat index of (x, y, a, b); iteration order is lexicographic in that tuple.
  std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    return ((x * inputs_b.size() + y) * outputs_a.size() + a) * outputs_b.size() + b;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct TableEntry {
  std::string x, y, a, b;
  Rational p;
};

/// Conditional distribution table P[a,b|x,y] with exact rational entries.
/// Immutable once built. The table is always complete; normalization is a
/// property checked by check_normalized, not enforced here.
class BipartiteBox {
 public:
  BipartiteBox(Scenario scenario, std::vector<Rational> table);

  /// Builds from labelled records. Missing or duplicate tuples and unknown
  /// symbols raise StructuralError naming the tuple.
  static BipartiteBox from_entries(Scenario scenario, const std::vector<TableEntry>& entries);

  /// Fills the table from fn(x, y, a, b) over alphabet indices.
  template <typename Fn>
  static BipartiteBox generate(Scenario scenario, Fn&& fn) {
    std::vector<Rational> table;
    table.reserve(scenario.table_size());
    for (std::size_t x = 0; x < scenario.inputs_a.size(); ++x)
      for (std::size_t y = 0; y < scenario.inputs_b.size(); ++y)
        for (std::size_t a = 0; a < scenario.outputs_a.size(); ++a)
          for (std::size_t b = 0; b < scenario.outputs_b.size(); ++b)
            table.emplace_back(fn(x, y, a, b));
    return BipartiteBox(std::move(scenario), std::move(table));
  }

  const Scenario& scenario() const { return scenario_; }
  const Alphabet& inputs_a() const { return scenario_.inputs_a; }
  const Alphabet& inputs_b() const { return scenario_.inputs_b; }
  const Alphabet& outputs_a() const { return scenario_.outputs_a; }
  const Alphabet& outputs_b() const { return scenario_.outputs_b; }
  std::span<const Rational> table() const { return table_; }

  const Rational& operator()(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    return table_[scenario_.index(x, y, a, b)];
  }
  /// Lookup by symbol; unknown symbols raise StructuralError.
  const Rational& at(const std::string& x, const std::string& y, const std::string& a,
                     const std::string& b) const;

  friend bool operator==(const BipartiteBox&, const BipartiteBox&) = default;

 private:
  Scenario scenario_;
  std::vector<Rational> table_;
};

/// True iff every entry lies in [0,1] and every (x,y) slice sums to exactly 1.
bool check_normalized(const BipartiteBox& box);

/// One failed equality of the no-signalling condition. For side == alice the
/// marginal of Alice's `output` at input `fixed_input` differs between Bob's
/// inputs input_pair.first and input_pair.second (and symmetrically for Bob).
struct Violation {
  Party side;
  std::size_t output;
  std::size_t fixed_input;
  std::pair<std::size_t, std::size_t> input_pair;
  Rational lhs_marginal;
  Rational rhs_marginal;
};

struct NoSignallingReport {
  bool holds = true;
  std::vector<Violation> violations;
};

/// Exhaustive exact check. Requires a normalized box (PreconditionError otherwise).
NoSignallingReport check_no_signalling(const BipartiteBox& box);

/// Human-readable form of a violation using the box's labels.
std::string describe(const Violation& violation, const BipartiteBox& box);

/// Pr[output | x, y] for one party, summing over the other party's outputs.
Rational marginal(const BipartiteBox& box, Party side, std::size_t output, std::size_t x,
                  std::size_t y);
Rational marginal(const BipartiteBox& box, Party side, const std::string& output,
                  const std::string& x, const std::string& y);

/// Entrywise convex combination. Weights must be nonnegative and sum to 1.
BipartiteBox mix(std::span<const std::pair<BipartiteBox, Rational>> weighted);
BipartiteBox mix(const BipartiteBox& first, const BipartiteBox& second, const Rational& lambda);

/// Local deterministic box a = alice[x], b = bob[y] (output indices).
BipartiteBox deterministic_box(const Scenario& scenario, std::span<const std::size_t> alice,
                               std::span<const std::size_t> bob);

}  // namespace nsbox
