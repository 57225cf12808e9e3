#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "nsbox/box.hpp"
#include "nsbox/box_io.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/ns_compute.hpp"

using namespace nsbox;

namespace {

Scenario binary() {
  return Scenario{Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1)};
}

BipartiteBox anti_pr_box() {
  return make_fbox(BooleanFunction::from_predicate(1, 1, [](auto x, auto y) { return (x & y) == 0; }));
}

}  // namespace

TEST_CASE("alphabet ordering and validation") {
  auto a = Alphabet::bitstrings(2);
  CHECK(a.labels() == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(Alphabet::bitstrings(0).labels() == std::vector<std::string>{""});
  CHECK_THROWS_AS(Alphabet({}), StructuralError);
  CHECK_THROWS_AS(Alphabet({"0", "0"}), StructuralError);
  CHECK_THROWS_AS(a.index_of("2"), StructuralError);
}

TEST_CASE("check_normalized") {
  CHECK(check_normalized(pr_box()));

  auto zeros = BipartiteBox::generate(binary(), [](auto...) { return Rational(0); });
  CHECK_FALSE(check_normalized(zeros));

  // One 1/2 replaced by 1/4 leaves that slice summing to 3/4.
  const auto pr = pr_box();
  std::vector<Rational> table(pr.table().begin(), pr.table().end());
  table[binary().index(0, 0, 0, 0)] = Rational(1, 4);
  CHECK_FALSE(check_normalized(BipartiteBox(binary(), table)));

  // Entries outside [0, 1] fail even if slices sum to 1.
  table = std::vector<Rational>(16, Rational(0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      table[binary().index(x, y, 0, 0)] = 2;
      table[binary().index(x, y, 1, 1)] = -1;
    }
  CHECK_FALSE(check_normalized(BipartiteBox(binary(), table)));
}

TEST_CASE("missing table entry is a structural error naming the tuple") {
  std::vector<TableEntry> entries;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          if (!(x == 1 && y == 0 && a == 1 && b == 1))
            entries.push_back({std::to_string(x), std::to_string(y), std::to_string(a), std::to_string(b), Rational(1, 4)});
  try {
    BipartiteBox::from_entries(binary(), entries);
    FAIL("expected StructuralError");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("x=1, y=0, a=1, b=1") != std::string::npos);
  }
  entries.push_back({"1", "0", "1", "1", Rational(1, 4)});
  CHECK(check_normalized(BipartiteBox::from_entries(binary(), entries)));
  entries.push_back({"1", "0", "1", "1", Rational(1, 4)});
  CHECK_THROWS_AS(BipartiteBox::from_entries(binary(), entries), StructuralError);
}

TEST_CASE("check_no_signalling") {
  SUBCASE("PR-box holds with all marginals 1/2") {
    auto report = check_no_signalling(pr_box());
    CHECK(report.holds);
    CHECK(report.violations.empty());
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t o = 0; o < 2; ++o) {
          CHECK(marginal(pr_box(), Party::alice, o, x, y) == Rational(1, 2));
          CHECK(marginal(pr_box(), Party::bob, o, x, y) == Rational(1, 2));
        }
  }
  SUBCASE("product of fair coins") {
    auto coins = BipartiteBox::generate(binary(), [](auto...) { return Rational(1, 4); });
    CHECK(check_no_signalling(coins).holds);
  }
  SUBCASE("signalling box P[a=y, b=0 | x, y] = 1") {
    auto box = BipartiteBox::generate(binary(), [](auto, auto y, auto a, auto b) {
      return Rational(a == y && b == 0 ? 1 : 0);
    });
    auto report = check_no_signalling(box);
    CHECK_FALSE(report.holds);
    REQUIRE_FALSE(report.violations.empty());
    const auto& v = report.violations.front();
    CHECK(v.side == Party::alice);
    CHECK(v.output == 0);
    CHECK(v.fixed_input == 0);
    CHECK(v.input_pair == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(v.lhs_marginal == 1);
    CHECK(v.rhs_marginal == 0);
    // Alice's marginal depends on y for both x and both a; Bob's never on x.
    CHECK(report.violations.size() == 4);
    for (const auto& each : report.violations) CHECK(each.side == Party::alice);
  }
  SUBCASE("non-normalized box is a precondition error") {
    auto zeros = BipartiteBox::generate(binary(), [](auto...) { return Rational(0); });
    CHECK_THROWS_AS(check_no_signalling(zeros), PreconditionError);
  }
  SUBCASE("single-input alphabets are vacuously no-signalling on that side") {
    Scenario s{Alphabet::bitstrings(0), Alphabet::bitstrings(1), Alphabet::bitstrings(1), Alphabet::bitstrings(1)};
    // Bob's output copies his input; Alice has nothing to signal with.
    auto box = BipartiteBox::generate(s, [](auto, auto y, auto a, auto b) {
      return Rational(a == 0 && b == y ? 1 : 0);
    });
    CHECK(check_no_signalling(box).holds);
  }
}

TEST_CASE("marginal") {
  CHECK(marginal(pr_box(), Party::alice, "0", "1", "0") == Rational(1, 2));
  std::vector<std::size_t> zero{0, 0};
  auto det = deterministic_box(binary(), zero, zero);
  CHECK(marginal(det, Party::alice, 0, 1, 1) == 1);
  CHECK(marginal(make_fbox(and_function()), Party::bob, "1", "1", "1") == Rational(1, 2));
  CHECK_THROWS_AS(marginal(pr_box(), Party::alice, "2", "0", "0"), StructuralError);
}

TEST_CASE("mix") {
  const std::pair<BipartiteBox, Rational> single[] = {{pr_box(), Rational(1)}};
  CHECK(mix(single) == pr_box());

  auto uniform = mix(pr_box(), anti_pr_box(), Rational(1, 2));
  for (const auto& p : uniform.table()) CHECK(p == Rational(1, 4));

  CHECK_THROWS_AS(mix(pr_box(), pr_box(), Rational(3, 2)), DomainError);
  const std::pair<BipartiteBox, Rational> short_weights[] = {{pr_box(), Rational(1, 2)}, {pr_box(), Rational(1, 4)}};
  CHECK_THROWS_AS(mix(short_weights), DomainError);
  CHECK_THROWS_AS(mix(pr_box(), make_fbox(BooleanFunction::constant(2, 1, false)), Rational(1, 2)), StructuralError);
}

TEST_CASE("property: mixtures of no-signalling boxes stay no-signalling") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto b1 = testing::random_ns_box(rng);
    auto b2 = testing::random_ns_box(rng);
    REQUIRE(check_no_signalling(b1).holds);
    REQUIRE(check_no_signalling(b2).holds);
    auto lambda = testing::random_weight(rng);
    CHECK(check_no_signalling(mix(b1, b2, lambda)).holds);
  }
}

TEST_CASE("property: marginals over one side sum to 1") {
  std::mt19937_64 rng(7);
  Scenario s{Alphabet::integers(3), Alphabet::integers(2), Alphabet::integers(3), Alphabet::integers(2)};
  for (int trial = 0; trial < 50; ++trial) {
    auto box = testing::random_box(rng, s);
    REQUIRE(check_normalized(box));
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        Rational sa = 0, sb = 0;
        for (std::size_t a = 0; a < 3; ++a) sa += marginal(box, Party::alice, a, x, y);
        for (std::size_t b = 0; b < 2; ++b) sb += marginal(box, Party::bob, b, x, y);
        CHECK(sa == 1);
        CHECK(sb == 1);
      }
  }
}

TEST_CASE("box documents round-trip bit-exactly") {
  std::mt19937_64 rng(11);
  Scenario s{Alphabet::integers(2), Alphabet::integers(3), Alphabet::integers(2), Alphabet::integers(2)};
  for (int trial = 0; trial < 20; ++trial) {
    auto box = testing::random_box(rng, s);
    auto text = box_to_json(box).dump();
    auto back = box_from_json(parse_json_text(text, "memory"));
    CHECK(back == box);
    CHECK(box_to_json(back).dump() == text);
  }
  auto doc = box_to_json(pr_box());
  CHECK(doc["table"][0]["p"] == "1/2");
  CHECK(doc["table"][1]["p"] == "0/1");
}

TEST_CASE("box document errors") {
  CHECK_THROWS_AS(parse_json_text("", "empty"), ParseError);
  CHECK_THROWS_AS(box_from_json(parse_json_text("[]", "x")), ParseError);
  auto doc = nlohmann::json::parse(box_to_json(pr_box()).dump());
  doc["table"][3]["p"] = "1/0";
  CHECK_THROWS_AS(box_from_json(doc), ParseError);
  doc["table"][3]["p"] = "abc";
  CHECK_THROWS_AS(box_from_json(doc), ParseError);
  doc["table"].erase(3);
  CHECK_THROWS_AS(box_from_json(doc), StructuralError);
}
