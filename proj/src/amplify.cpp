#include "nsbox/amplify.hpp"

#include <cmath>

#include "nsbox/errors.hpp"
#include "nsbox/transcript.hpp"

namespace nsbox {

Rational majority_correctness(const Rational& p, unsigned k) {
  if (k % 2 == 0) throw DomainError("majority over an even number of trials");
  const Rational q = 1 - p;
  Rational total = 0;
  Integer binom = 1;  // C(k, i), built up from i = 0
  for (unsigned i = 0; i <= k; ++i) {
    if (i > 0) binom = binom * (k - i + 1) / i;
    if (2 * i > k) total += Rational(binom) * power(p, i) * power(q, k - i);
  }
  return total;
}

unsigned choose_k(const Rational& p, const Rational& epsilon) {
  if (!(p > Rational(1, 2) && p < 1)) throw DomainError("p must satisfy 1/2 < p < 1");
  if (!(epsilon > 0 && epsilon < Rational(1, 2))) throw DomainError("epsilon must satisfy 0 < epsilon < 1/2");
  const Rational target = 1 - epsilon;
  for (unsigned k = 1;; k += 2) {
    if (majority_correctness(p, k) >= target) return k;
  }
}

double hoeffding_failure_estimate(double p, unsigned k) {
  return std::exp(-2.0 * k * (p - 0.5) * (p - 0.5));
}

AmplificationPlan::AmplificationPlan(NoisyBoxSpec spec, unsigned k, Rational epsilon)
    : spec_(std::move(spec)), k_(k), epsilon_(std::move(epsilon)) {
  if (k_ == 0 || k_ % 2 == 0) throw DomainError("repetition count k must be odd and positive");
  if (!(epsilon_ > 0 && epsilon_ < Rational(1, 2))) throw DomainError("epsilon must satisfy 0 < epsilon < 1/2");
}

AmplificationPlan AmplificationPlan::for_target(NoisyBoxSpec spec, Rational epsilon) {
  const unsigned k = choose_k(spec.p(), epsilon);
  return AmplificationPlan(std::move(spec), k, std::move(epsilon));
}

AmplifyResult amplify(const AmplificationPlan& plan, std::uint64_t x, std::uint64_t y, Rng& rng) {
  const std::uint64_t base = rng();
  AmplifyResult result{0, majority_correctness(plan.spec().p(), plan.k()), {}};
  result.votes.reserve(plan.k());
  unsigned ones = 0;
  for (unsigned i = 0; i < plan.k(); ++i) {
    Rng trial(mix_seed(base + i));
    auto transcript = run_noisy_fbox_protocol(plan.spec(), x, y, trial);
    const int bit = reconcile(transcript);
    result.votes.push_back(bit);
    ones += static_cast<unsigned>(bit);
  }
  result.bit = 2 * ones > plan.k() ? 1 : 0;
  return result;
}

}  // namespace nsbox
