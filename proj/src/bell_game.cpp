#include "nsbox/bell_game.hpp"

#include "nsbox/box_io.hpp"
#include "nsbox/errors.hpp"

namespace nsbox {

BellGame::BellGame(Scenario scenario, std::vector<Rational> input_dist,
                   std::vector<std::uint8_t> predicate)
    : scenario_(std::move(scenario)), input_dist_(std::move(input_dist)), predicate_(std::move(predicate)) {
  if (input_dist_.size() != scenario_.inputs_a.size() * scenario_.inputs_b.size()) {
    throw StructuralError("input distribution size does not match the input alphabets");
  }
  if (predicate_.size() != scenario_.table_size()) {
    throw StructuralError("predicate table size does not match the alphabets");
  }
  Rational total = 0;
  for (const auto& p : input_dist_) {
    if (p < 0) throw DomainError("negative input probability " + format_exact(p));
    total += p;
  }
  if (total != 1) throw DomainError("input distribution sums to " + format_exact(total) + ", not 1");
}

std::vector<Rational> BellGame::uniform_inputs(const Scenario& scenario) {
  const std::size_t n = scenario.inputs_a.size() * scenario.inputs_b.size();
  return std::vector<Rational>(n, Rational(1, static_cast<long>(n)));
}

BellGame chsh_game() {
  Scenario s{Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1),
             Alphabet::bitstrings(1)};
  auto pi = BellGame::uniform_inputs(s);
  return BellGame::from_predicate(std::move(s), std::move(pi),
                                  [](auto a, auto b, auto x, auto y) { return (a ^ b) == (x & y); });
}

Rational game_value(const BellGame& game, const BipartiteBox& box) {
  const auto& s = game.scenario();
  if (!(box.scenario() == s)) throw StructuralError("game and box alphabets differ");
  Rational total = 0;
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y) {
      Rational won = 0;
      for (std::size_t a = 0; a < s.outputs_a.size(); ++a)
        for (std::size_t b = 0; b < s.outputs_b.size(); ++b)
          if (game.wins(a, b, x, y)) won += box(x, y, a, b);
      total += game.input_probability(x, y) * won;
    }
  return total;
}

namespace {

// Advances `digits` as a base-`radix` counter, most significant digit first.
bool next_assignment(std::vector<std::size_t>& digits, std::size_t radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

std::uint64_t strategy_count(std::size_t outputs, std::size_t inputs) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < inputs; ++i) {
    if (count > kMaxDeterministicStrategies / outputs + 1) return kMaxDeterministicStrategies + 1;
    count *= outputs;
  }
  return count;
}

}  // namespace

ClassicalValue classical_value(const BellGame& game) {
  const auto& s = game.scenario();
  const std::size_t nx = s.inputs_a.size(), ny = s.inputs_b.size();
  const std::size_t na = s.outputs_a.size(), nb = s.outputs_b.size();
  const std::uint64_t ga = strategy_count(na, nx), hb = strategy_count(nb, ny);
  if (ga > kMaxDeterministicStrategies || hb > kMaxDeterministicStrategies ||
      ga * hb > kMaxDeterministicStrategies) {
    throw DomainError("classical_value: more than 2^24 deterministic strategies");
  }

  // Scale pi to integer weights over a common denominator so the inner loop
  // runs on integers; the maximizer is unchanged.
  Integer common = 1;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) common = lcm(common, denominator(game.input_probability(x, y)));
  std::vector<Integer> weight(nx * ny);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const Rational& p = game.input_probability(x, y);
      weight[x * ny + y] = numerator(p) * (common / denominator(p));
    }

  std::vector<std::size_t> g(nx, 0);
  Integer best = -1;
  DeterministicStrategy best_strategy;
  do {
    std::vector<std::size_t> h(ny, 0);
    do {
      Integer score = 0;
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
          if (game.wins(g[x], h[y], x, y)) score += weight[x * ny + y];
      if (score > best) {
        best = score;
        best_strategy = DeterministicStrategy{g, h};
      }
    } while (next_assignment(h, nb));
  } while (next_assignment(g, na));

  return ClassicalValue{Rational(best, common), std::move(best_strategy)};
}

BipartiteBox strategy_box(const BellGame& game, const DeterministicStrategy& strategy) {
  return deterministic_box(game.scenario(), strategy.alice, strategy.bob);
}

nlohmann::ordered_json game_to_json(const BellGame& game) {
  nlohmann::ordered_json doc;
  const auto& s = game.scenario();
  doc["inputs_a"] = s.inputs_a.labels();
  doc["inputs_b"] = s.inputs_b.labels();
  doc["outputs_a"] = s.outputs_a.labels();
  doc["outputs_b"] = s.outputs_b.labels();
  auto dist = nlohmann::ordered_json::array();
  auto pred = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y) {
      dist.push_back({{"x", s.inputs_a[x]}, {"y", s.inputs_b[y]},
                      {"p", to_string(game.input_probability(x, y))}});
    }
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y)
      for (std::size_t a = 0; a < s.outputs_a.size(); ++a)
        for (std::size_t b = 0; b < s.outputs_b.size(); ++b)
          if (game.wins(a, b, x, y)) {
            pred.push_back({{"a", s.outputs_a[a]}, {"b", s.outputs_b[b]}, {"x", s.inputs_a[x]},
                            {"y", s.inputs_b[y]}});
          }
  doc["input_dist"] = std::move(dist);
  doc["predicate"] = std::move(pred);
  return doc;
}

BellGame game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("", "game document must be a JSON object");
  Scenario s{alphabet_from_json(doc, "inputs_a"), alphabet_from_json(doc, "inputs_b"),
             alphabet_from_json(doc, "outputs_a"), alphabet_from_json(doc, "outputs_b")};
  auto lookup = [](const Alphabet& alphabet, const nlohmann::json& v, const std::string& where) {
    auto i = alphabet.find(label_from_json(v, where));
    if (!i) throw ParseError(where, "unknown symbol");
    return *i;
  };

  if (!doc.contains("input_dist") || !doc["input_dist"].is_array()) {
    throw ParseError("input_dist", "missing or not an array");
  }
  std::vector<Rational> pi(s.inputs_a.size() * s.inputs_b.size());
  std::vector<bool> seen(pi.size(), false);
  const auto& dist = doc["input_dist"];
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::string where = "input_dist[" + std::to_string(i) + "]";
    const auto& e = dist[i];
    if (!e.is_object() || !e.contains("x") || !e.contains("y") || !e.contains("p")) {
      throw ParseError(where, "expected {x, y, p}");
    }
    const std::size_t k = lookup(s.inputs_a, e["x"], where + ".x") * s.inputs_b.size() +
                          lookup(s.inputs_b, e["y"], where + ".y");
    if (seen[k]) throw ParseError(where, "duplicate input pair");
    seen[k] = true;
    pi[k] = rational_from_json(e["p"], where + ".p");
  }

  if (!doc.contains("predicate") || !doc["predicate"].is_array()) {
    throw ParseError("predicate", "missing or not an array");
  }
  std::vector<std::uint8_t> predicate(s.table_size(), 0);
  const auto& pred = doc["predicate"];
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const std::string where = "predicate[" + std::to_string(i) + "]";
    const auto& e = pred[i];
    if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("x") || !e.contains("y")) {
      throw ParseError(where, "expected {a, b, x, y}");
    }
    predicate[s.index(lookup(s.inputs_a, e["x"], where + ".x"), lookup(s.inputs_b, e["y"], where + ".y"),
                      lookup(s.outputs_a, e["a"], where + ".a"), lookup(s.outputs_b, e["b"], where + ".b"))] = 1;
  }
  return BellGame(std::move(s), std::move(pi), std::move(predicate));
}

BellGame read_game(const std::filesystem::path& path) { return game_from_json(read_json_file(path)); }

}  // namespace nsbox
