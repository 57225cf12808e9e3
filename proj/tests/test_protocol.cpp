#include <doctest.h>

#include <cmath>

#include "nsbox/amplify.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/transcript.hpp"
#include "nsbox/vandam.hpp"
#include "oracles.hpp"

using namespace nsbox;

TEST_CASE("reconcile") {
  SUBCASE("a = 0, b = 1") {
    ProtocolTranscript t;
    t.append({Party::alice, EventKind::output, LocalStep::none, -1, -1, 0});
    t.append({Party::bob, EventKind::output, LocalStep::none, -1, -1, 1});
    CHECK(reconcile(t) == 1);
    REQUIRE(t.reconciliation());
    CHECK(t.reconciliation()->a == 0);
    CHECK(t.reconciliation()->b == 1);
    CHECK_THROWS_AS(reconcile(t), StateError);
    CHECK_THROWS_AS(t.append({Party::alice, EventKind::box_call, LocalStep::none, 0, 0, 0}), StateError);
  }
  SUBCASE("missing output") {
    ProtocolTranscript t;
    t.append({Party::alice, EventKind::output, LocalStep::none, -1, -1, 0});
    CHECK_THROWS_AS(reconcile(t), StateError);
  }
  SUBCASE("second output from one party") {
    ProtocolTranscript t;
    t.append({Party::bob, EventKind::output, LocalStep::none, -1, -1, 0});
    CHECK_THROWS_AS(t.append({Party::bob, EventKind::output, LocalStep::none, -1, -1, 1}), StateError);
  }
  SUBCASE("PR-box run at (1, 1) always reconciles to 1") {
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
      auto t = run_fbox_protocol(and_function(), 1, 1, rng);
      CHECK(reconcile(t) == 1);
    }
  }
  SUBCASE("compiled run reconciles to f on every input of a 2+2-bit function") {
    const auto f = BooleanFunction::from_predicate(2, 2, [](auto x, auto y) { return (x + y) % 3 == 0; });
    const auto p = compile(f);
    Rng rng(10);
    for (std::uint64_t x = 0; x < 4; ++x)
      for (std::uint64_t y = 0; y < 4; ++y) {
        auto run = run_compiled(p, x, y, rng);
        CHECK(reconcile(run.transcript) == f(x, y));
      }
  }
}

TEST_CASE("transcript export is one tab-separated event per line") {
  Rng rng(1);
  auto t = run_fbox_protocol(and_function(), 1, 0, rng);
  reconcile(t);
  const auto text = format_transcript(t);
  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 5);
  CHECK(all[0].rfind("alice\tbox_call\tbox=0 in=1 out=", 0) == 0);
  CHECK(all[1].rfind("alice\toutput\tout=", 0) == 0);
  CHECK(all[2].rfind("bob\tbox_call\tbox=0 in=0 out=", 0) == 0);
  CHECK(all[4].rfind("both\treconcile\t", 0) == 0);
  CHECK(all[4].find("a^b=0") != std::string::npos);
}

TEST_CASE("majority_correctness") {
  const Rational p(17, 20);
  CHECK(majority_correctness(p, 1) == p);
  // Independent route: all 2^5 correct/incorrect patterns.
  CHECK(majority_correctness(p, 5) == oracle::majority_by_patterns(p, 5));
  // Hand evaluation: sum_{i=3..5} C(5,i) p^i q^(5-i) with p = 17/20.
  CHECK(majority_correctness(p, 5) == Rational(10 * 4913 * 9 + 5 * 83521 * 3 + 1419857, 3200000));
  for (unsigned k = 1; k <= 13; k += 2) {
    CHECK(majority_correctness(Rational(3, 5), k) == oracle::majority_by_patterns(Rational(3, 5), k));
  }
  CHECK_THROWS_AS(majority_correctness(p, 4), DomainError);
}

TEST_CASE("property: majority correctness is monotone in odd k") {
  for (const auto& p : {Rational(3, 5), Rational(3, 4), Rational(17, 20)}) {
    Rational previous = 0;
    for (unsigned k = 1; k <= 41; k += 2) {
      const Rational c = majority_correctness(p, k);
      CHECK(c >= previous);
      CHECK(c < 1);
      previous = c;
    }
  }
}

TEST_CASE("choose_k") {
  CHECK(choose_k(Rational(17, 20), Rational(3, 20)) == 1);

  auto search = [](const Rational& p, const Rational& eps) {
    unsigned k = 1;
    while (oracle::majority_by_patterns(p, k) < 1 - eps) k += 2;
    return k;
  };
  CHECK(choose_k(Rational(3, 4), Rational(1, 10)) == search(Rational(3, 4), Rational(1, 10)));
  CHECK(choose_k(Rational(17, 20), Rational(1, 1000)) == search(Rational(17, 20), Rational(1, 1000)));
  CHECK(choose_k(Rational(17, 20), Rational(1, 1000)) == 15);

  const unsigned k6 = choose_k(Rational(17, 20), Rational(1, 1000000));
  CHECK(k6 % 2 == 1);
  CHECK(majority_correctness(Rational(17, 20), k6) >= 1 - Rational(1, 1000000));
  CHECK(majority_correctness(Rational(17, 20), k6 - 2) < 1 - Rational(1, 1000000));

  CHECK_THROWS_AS(choose_k(Rational(1, 2), Rational(1, 10)), DomainError);
  CHECK_THROWS_AS(choose_k(Rational(3, 4), Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(choose_k(Rational(3, 4), Rational(0)), DomainError);
}

TEST_CASE("amplify") {
  const NoisyBoxSpec spec(and_function(), Rational(17, 20));
  SUBCASE("plan validation") {
    CHECK_THROWS_AS(AmplificationPlan(spec, 4, Rational(1, 10)), DomainError);
    CHECK_THROWS_AS(AmplificationPlan(spec, 0, Rational(1, 10)), DomainError);
    CHECK_THROWS_AS(AmplificationPlan(spec, 3, Rational(1, 2)), DomainError);
    CHECK(AmplificationPlan::for_target(spec, Rational(1, 1000)).k() == 15);
  }
  SUBCASE("k = 1 reports p") {
    Rng rng(1);
    CHECK(amplify(AmplificationPlan(spec, 1, Rational(1, 5)), 1, 1, rng).achieved_correctness == spec.p());
  }
  SUBCASE("identical seeds give identical runs") {
    const AmplificationPlan plan(spec, 9, Rational(1, 10));
    Rng a(123), b(123);
    for (int i = 0; i < 50; ++i) {
      const auto ra = amplify(plan, 1, 0, a);
      const auto rb = amplify(plan, 1, 0, b);
      CHECK(ra.bit == rb.bit);
      CHECK(ra.votes == rb.votes);
    }
  }
  SUBCASE("empirical correctness tracks the exact value") {
    const AmplificationPlan plan(spec, 5, Rational(1, 10));
    Rng rng(55);
    int correct = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t x = static_cast<std::uint64_t>(i % 2), y = static_cast<std::uint64_t>((i / 2) % 2);
      correct += amplify(plan, x, y, rng).bit == and_function()(x, y) ? 1 : 0;
    }
    CHECK(std::abs(correct / double(n) - to_double(majority_correctness(spec.p(), 5))) < 0.02);
  }
  SUBCASE("the Hoeffding estimate bounds the exact failure probability") {
    for (unsigned k = 1; k <= 41; k += 2) {
      CHECK(1 - to_double(majority_correctness(spec.p(), k)) <= hoeffding_failure_estimate(0.85, k) + 1e-15);
    }
  }
}
