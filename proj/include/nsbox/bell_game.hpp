#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "nsbox/box.hpp"

namespace nsbox {

/// Input distribution pi(x, y) plus a winning predicate V(a, b, x, y).
/// Both tables share the scenario's lexicographic ordering.
class BellGame {
 public:
  /// `input_dist` is indexed x * |Y| + y; `predicate` uses Scenario::index.
  /// pi must be nonnegative and sum to exactly 1 (DomainError otherwise).
  BellGame(Scenario scenario, std::vector<Rational> input_dist, std::vector<std::uint8_t> predicate);

  template <typename Pred>
  static BellGame from_predicate(Scenario scenario, std::vector<Rational> input_dist, Pred&& pred) {
    std::vector<std::uint8_t> table;
    table.reserve(scenario.table_size());
    for (std::size_t x = 0; x < scenario.inputs_a.size(); ++x)
      for (std::size_t y = 0; y < scenario.inputs_b.size(); ++y)
        for (std::size_t a = 0; a < scenario.outputs_a.size(); ++a)
          for (std::size_t b = 0; b < scenario.outputs_b.size(); ++b)
            table.push_back(pred(a, b, x, y) ? 1 : 0);
    return BellGame(std::move(scenario), std::move(input_dist), std::move(table));
  }

  /// Uniform distribution over |X| * |Y| input pairs.
  static std::vector<Rational> uniform_inputs(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  const Rational& input_probability(std::size_t x, std::size_t y) const {
    return input_dist_[x * scenario_.inputs_b.size() + y];
  }
  bool wins(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return predicate_[scenario_.index(x, y, a, b)] != 0;
  }

 private:
  Scenario scenario_;
  std::vector<Rational> input_dist_;
  std::vector<std::uint8_t> predicate_;
};

/// Binary alphabets, uniform inputs, predicate a xor b == x and y.
BellGame chsh_game();

/// Exact winning probability sum_{x,y} pi(x,y) sum_{a,b} V(a,b,x,y) P[a,b|x,y].
Rational game_value(const BellGame& game, const BipartiteBox& box);

/// Same value computed on a floating-point table in Scenario::index order.
template <typename Scalar>
Scalar game_value(const BellGame& game, std::span<const Scalar> table) {
  const auto& s = game.scenario();
  Scalar total(0);
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y) {
      Scalar won(0);
      for (std::size_t a = 0; a < s.outputs_a.size(); ++a)
        for (std::size_t b = 0; b < s.outputs_b.size(); ++b)
          if (game.wins(a, b, x, y)) won += table[s.index(x, y, a, b)];
      total += static_cast<Scalar>(to_double(game.input_probability(x, y))) * won;
    }
  return total;
}

/// Local deterministic strategy a = alice[x], b = bob[y] (output indices).
struct DeterministicStrategy {
  std::vector<std::size_t> alice;
  std::vector<std::size_t> bob;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

struct ClassicalValue {
  Rational value;
  DeterministicStrategy strategy;
};

/// Largest count of deterministic strategies classical_value will enumerate.
inline constexpr std::uint64_t kMaxDeterministicStrategies = std::uint64_t{1} << 24;

/// Maximum of game_value over all deterministic local strategies, enumerated
/// exhaustively with g and h in lexicographic order; the first maximizer wins
/// ties. Throws DomainError when |A|^|X| * |B|^|Y| exceeds 2^24.
ClassicalValue classical_value(const BellGame& game);

BipartiteBox strategy_box(const BellGame& game, const DeterministicStrategy& strategy);

// Game documents mirror box documents: alphabets, then
//   "input_dist": [{"x", "y", "p": "num/den"}],
//   "predicate":  [{"a", "b", "x", "y"}]  (satisfied tuples only).
nlohmann::ordered_json game_to_json(const BellGame& game);
BellGame game_from_json(const nlohmann::json& doc);
BellGame read_game(const std::filesystem::path& path);

}  // namespace nsbox
