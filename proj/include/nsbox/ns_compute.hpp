#pragma once

#include <cstdint>
#include <string_view>

#include "nsbox/boolean_function.hpp"
#include "nsbox/box.hpp"
#include "nsbox/random.hpp"

namespace nsbox {

struct OutputPair {
  int a;
  int b;
};

/// Final step of the masking procedure: a <- r, b <- r xor value.
inline OutputPair assign_outputs(int r, int value) { return OutputPair{r, r ^ value}; }

/// Scenario with bitstring inputs of widths l and m and single-bit outputs.
Scenario fbox_scenario(const BooleanFunction& f);

/// P[a,b|x,y] = 1/2 if a xor b == f(x,y), else 0.
BipartiteBox make_fbox(const BooleanFunction& f);

/// The PR-box: make_fbox(and_function()).
BipartiteBox pr_box();

/// Draws a uniform mask r, computes f(x, y) and returns (r, r xor f(x, y)).
/// Inputs out of range (or bitstrings of the wrong length) raise DomainError.
OutputPair sample_fbox(const BooleanFunction& f, std::uint64_t x, std::uint64_t y, Rng& rng);
OutputPair sample_fbox(const BooleanFunction& f, std::string_view x, std::string_view y, Rng& rng);

/// f together with a per-input-pair correctness 1/2 < p < 1.
class NoisyBoxSpec {
 public:
  /// Throws DomainError unless 1/2 < p < 1 strictly.
  NoisyBoxSpec(BooleanFunction f, Rational p);

  const BooleanFunction& function() const { return f_; }
  const Rational& p() const { return p_; }

 private:
  BooleanFunction f_;
  Rational p_;
};

/// P[a,b|x,y] = p/2 if a xor b == f(x,y), else (1-p)/2. Equal to
/// mix(make_fbox(f), make_fbox(not f), p).
BipartiteBox make_noisy_fbox(const NoisyBoxSpec& spec);

/// With probability p samples the f-box, otherwise the complement box.
OutputPair sample_noisy_fbox(const NoisyBoxSpec& spec, std::uint64_t x, std::uint64_t y, Rng& rng);

/// Pr[a xor b == f(x,y)] read off a box with single-bit outputs.
Rational pair_correctness(const BipartiteBox& box, const BooleanFunction& f, std::uint64_t x,
                          std::uint64_t y);

}  // namespace nsbox
