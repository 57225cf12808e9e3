#pragma once

#include <cstdint>
#include <vector>

#include "nsbox/ns_compute.hpp"
#include "nsbox/random.hpp"

namespace nsbox {

/// Probability that the majority of k independent trials, each correct with
/// probability p, is correct: sum_{i > k/2} C(k,i) p^i (1-p)^(k-i). k odd.
Rational majority_correctness(const Rational& p, unsigned k);

/// Smallest odd k with majority_correctness(p, k) >= 1 - epsilon.
/// Requires 1/2 < p < 1 and 0 < epsilon < 1/2 (DomainError otherwise).
unsigned choose_k(const Rational& p, const Rational& epsilon);

/// Hoeffding estimate exp(-2k (p - 1/2)^2) of the majority failure
/// probability. Informational only; choose_k uses the exact sum.
double hoeffding_failure_estimate(double p, unsigned k);

class AmplificationPlan {
 public:
  /// Throws DomainError for even or zero k, or epsilon outside (0, 1/2).
  AmplificationPlan(NoisyBoxSpec spec, unsigned k, Rational epsilon);
  /// Plan with k = choose_k(spec.p(), epsilon).
  static AmplificationPlan for_target(NoisyBoxSpec spec, Rational epsilon);

  const NoisyBoxSpec& spec() const { return spec_; }
  unsigned k() const { return k_; }
  const Rational& epsilon() const { return epsilon_; }

 private:
  NoisyBoxSpec spec_;
  unsigned k_;
  Rational epsilon_;
};

struct AmplifyResult {
  int bit;
  Rational achieved_correctness;
  std::vector<int> votes;  // reconciled bit of each repetition
};

/// Runs the noisy-box protocol k times with independently seeded generators
/// derived from one draw of `rng`, reconciles each run and takes the majority.
AmplifyResult amplify(const AmplificationPlan& plan, std::uint64_t x, std::uint64_t y, Rng& rng);

}  // namespace nsbox
