#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "nsbox/bell_game.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/ns_compute.hpp"
#include "oracles.hpp"

using namespace nsbox;

namespace {

Scenario binary() {
  return Scenario{Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1)};
}

BellGame random_game(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  Scenario s{Alphabet::integers(nx), Alphabet::integers(ny), Alphabet::integers(2), Alphabet::integers(2)};
  std::uniform_int_distribution<long> w(0, 6);
  std::vector<long> raw(nx * ny);
  long total = 0;
  for (auto& r : raw) total += (r = w(rng));
  if (total == 0) raw[0] = total = 1;
  std::vector<Rational> pi;
  for (auto r : raw) pi.emplace_back(r, total);
  std::uniform_int_distribution<int> bit(0, 1);
  return BellGame::from_predicate(s, pi, [&](auto...) { return bit(rng) == 1; });
}

}  // namespace

TEST_CASE("game_value on CHSH") {
  const auto chsh = chsh_game();
  CHECK(game_value(chsh, pr_box()) == 1);
  auto uniform = BipartiteBox::generate(binary(), [](auto...) { return Rational(1, 4); });
  CHECK(game_value(chsh, uniform) == Rational(1, 2));
  std::vector<std::size_t> zero{0, 0};
  CHECK(game_value(chsh, deterministic_box(binary(), zero, zero)) == Rational(3, 4));
  CHECK_THROWS_AS(game_value(chsh, make_fbox(BooleanFunction::constant(2, 1, false))), StructuralError);
}

TEST_CASE("classical_value") {
  SUBCASE("CHSH is 3/4") {
    const auto cv = classical_value(chsh_game());
    CHECK(cv.value == Rational(3, 4));
    // Lexicographically first maximizer: everyone outputs 0.
    CHECK(cv.strategy == DeterministicStrategy{{0, 0}, {0, 0}});
    CHECK(game_value(chsh_game(), strategy_box(chsh_game(), cv.strategy)) == cv.value);
  }
  SUBCASE("trivially winnable predicate") {
    auto s = binary();
    BellGame g = BellGame::from_predicate(s, BellGame::uniform_inputs(s), [](auto...) { return true; });
    CHECK(classical_value(g).value == 1);
  }
  SUBCASE("a xor b = x xor y is won by g(x)=x, h(y)=y") {
    auto s = binary();
    BellGame g = BellGame::from_predicate(s, BellGame::uniform_inputs(s),
                                          [](auto a, auto b, auto x, auto y) { return (a ^ b) == (x ^ y); });
    const auto cv = classical_value(g);
    CHECK(cv.value == 1);
    CHECK(cv.strategy == DeterministicStrategy{{0, 1}, {0, 1}});
  }
  SUBCASE("enumeration guard") {
    Scenario s{Alphabet::integers(13), Alphabet::integers(12), Alphabet::integers(2), Alphabet::integers(2)};
    BellGame g = BellGame::from_predicate(s, BellGame::uniform_inputs(s), [](auto...) { return true; });
    CHECK_THROWS_AS(classical_value(g), DomainError);
  }
}

TEST_CASE("property: classical_value agrees with an independent enumerator") {
  std::mt19937_64 rng(31);
  for (std::size_t nx = 1; nx <= 3; ++nx)
    for (std::size_t ny = 1; ny <= 3; ++ny)
      for (int trial = 0; trial < 8; ++trial) {
        const auto game = random_game(rng, nx, ny);
        const auto cv = classical_value(game);
        CHECK(cv.value == oracle::classical_value_by_boxes(game));
        CHECK(game_value(game, strategy_box(game, cv.strategy)) == cv.value);
      }
}

TEST_CASE("property: game_value is linear in the box") {
  std::mt19937_64 rng(17);
  const auto chsh = chsh_game();
  for (int trial = 0; trial < 100; ++trial) {
    auto b1 = testing::random_box(rng, binary());
    auto b2 = testing::random_box(rng, binary());
    auto lambda = testing::random_weight(rng);
    CHECK(game_value(chsh, mix(b1, b2, lambda)) ==
          lambda * game_value(chsh, b1) + (1 - lambda) * game_value(chsh, b2));
  }
}

TEST_CASE("input distribution must be a distribution") {
  auto s = binary();
  std::vector<Rational> bad(4, Rational(1, 3));
  CHECK_THROWS_AS(BellGame::from_predicate(s, bad, [](auto...) { return true; }), DomainError);
  std::vector<Rational> negative{Rational(1), Rational(1), Rational(-1, 2), Rational(-1, 2)};
  CHECK_THROWS_AS(BellGame::from_predicate(s, negative, [](auto...) { return true; }), DomainError);
}

TEST_CASE("game documents round-trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = random_game(rng, 2, 3);
    const auto back = game_from_json(nlohmann::json::parse(game_to_json(game).dump()));
    CHECK(game_to_json(back).dump() == game_to_json(game).dump());
  }
  const auto chsh = game_to_json(chsh_game());
  CHECK(chsh["predicate"].size() == 8);
  CHECK(chsh["input_dist"][0]["p"] == "1/4");
}
