#include "nsbox/ns_compute.hpp"

#include "nsbox/errors.hpp"

namespace nsbox {

Scenario fbox_scenario(const BooleanFunction& f) {
  return Scenario{Alphabet::bitstrings(f.alice_bits()), Alphabet::bitstrings(f.bob_bits()),
                  Alphabet::bitstrings(1), Alphabet::bitstrings(1)};
}

BipartiteBox make_fbox(const BooleanFunction& f) {
  const Rational half(1, 2);
  const Rational zero(0);
  return BipartiteBox::generate(fbox_scenario(f), [&](std::size_t x, std::size_t y, std::size_t a,
                                                      std::size_t b) {
    return static_cast<int>(a ^ b) == f(x, y) ? half : zero;
  });
}

BipartiteBox pr_box() { return make_fbox(and_function()); }

OutputPair sample_fbox(const BooleanFunction& f, std::uint64_t x, std::uint64_t y, Rng& rng) {
  const int value = f.at(x, y);
  const int r = random_bit(rng);
  return assign_outputs(r, value);
}

OutputPair sample_fbox(const BooleanFunction& f, std::string_view x, std::string_view y, Rng& rng) {
  return sample_fbox(f, parse_bits(x, f.alice_bits()), parse_bits(y, f.bob_bits()), rng);
}

NoisyBoxSpec::NoisyBoxSpec(BooleanFunction f, Rational p) : f_(std::move(f)), p_(std::move(p)) {
  if (!(p_ > Rational(1, 2) && p_ < 1)) {
    throw DomainError("correctness p = " + format_exact(p_) +
                      " must satisfy 1/2 < p < 1 strictly for every input pair");
  }
}

BipartiteBox make_noisy_fbox(const NoisyBoxSpec& spec) {
  const Rational right = spec.p() / 2;
  const Rational wrong = (1 - spec.p()) / 2;
  const auto& f = spec.function();
  return BipartiteBox::generate(fbox_scenario(f), [&](std::size_t x, std::size_t y, std::size_t a,
                                                      std::size_t b) {
    return static_cast<int>(a ^ b) == f(x, y) ? right : wrong;
  });
}

OutputPair sample_noisy_fbox(const NoisyBoxSpec& spec, std::uint64_t x, std::uint64_t y, Rng& rng) {
  const auto& f = spec.function();
  const int value = f.at(x, y);
  const bool correct = bernoulli(spec.p(), rng);
  return assign_outputs(random_bit(rng), correct ? value : value ^ 1);
}

Rational pair_correctness(const BipartiteBox& box, const BooleanFunction& f, std::uint64_t x,
                          std::uint64_t y) {
  if (box.outputs_a().size() != 2 || box.outputs_b().size() != 2) {
    throw StructuralError("pair_correctness needs single-bit outputs");
  }
  if (x >= box.inputs_a().size() || y >= box.inputs_b().size()) throw StructuralError("input out of range");
  const int value = f.at(x, y);
  Rational sum = 0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      if (static_cast<int>(a ^ b) == value) sum += box(x, y, a, b);
  return sum;
}

}  // namespace nsbox
