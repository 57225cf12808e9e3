#pragma once

// Test-only reference implementations. Each one takes a different route from
// the library code it checks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "nsbox/bell_game.hpp"
#include "nsbox/boolean_function.hpp"
#include "nsbox/halting.hpp"
#include "nsbox/rational.hpp"

namespace nsbox::oracle {

/// Full ANF of f over all l+m variables. Variable order: the combined index
/// v = (x << m) | y. Solved by forward substitution over the subset-ordered
/// lower-triangular system f(v) = XOR_{T subset of v} c_T.
inline std::vector<std::uint8_t> full_anf(const BooleanFunction& f) {
  const std::size_t n = f.truth_table().size();
  std::vector<std::uint8_t> c(n, 0);
  // Visit v in order of increasing popcount so every proper subset is solved.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [](std::size_t a, std::size_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::size_t v : order) {
    std::uint8_t acc = f.truth_table()[v];
    for (std::size_t t = 0; t < n; ++t) {
      if (t != v && (t & v) == t) acc ^= c[t];
    }
    c[v] = acc;
  }
  return c;
}

/// Bob-side coefficient g_S(x) derived from the full ANF.
inline std::uint8_t bob_coefficient(const BooleanFunction& f, const std::vector<std::uint8_t>& anf,
                                    std::uint64_t s, std::uint64_t x) {
  const int m = f.bob_bits();
  std::uint8_t acc = 0;
  for (std::size_t t = 0; t < anf.size(); ++t) {
    if (!anf[t]) continue;
    const std::uint64_t ty = t & ((std::uint64_t{1} << m) - 1);
    const std::uint64_t tx = t >> m;
    if (ty == s && (x & tx) == tx) acc ^= 1;
  }
  return acc;
}

/// Number of nonempty Bob monomials carrying a nonzero Alice coefficient.
inline std::size_t bob_box_count(const BooleanFunction& f) {
  const auto anf = full_anf(f);
  const std::uint64_t mask = (std::uint64_t{1} << f.bob_bits()) - 1;
  std::vector<bool> present(std::size_t{1} << f.bob_bits(), false);
  for (std::size_t t = 0; t < anf.size(); ++t)
    if (anf[t] && (t & mask) != 0) present[t & mask] = true;
  std::size_t count = 0;
  for (bool p : present) count += p ? 1 : 0;
  return count;
}

inline std::size_t alice_box_count(const BooleanFunction& f) {
  const auto anf = full_anf(f);
  const int m = f.bob_bits();
  std::vector<bool> present(std::size_t{1} << f.alice_bits(), false);
  for (std::size_t t = 0; t < anf.size(); ++t)
    if (anf[t] && (t >> m) != 0) present[t >> m] = true;
  std::size_t count = 0;
  for (bool p : present) count += p ? 1 : 0;
  return count;
}

/// Majority correctness by summing the probability of every one of the 2^k
/// correct/incorrect patterns that has a strict majority of correct trials.
inline Rational majority_by_patterns(const Rational& p, unsigned k) {
  const Rational q = 1 - p;
  Rational total = 0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
    if (2 * static_cast<unsigned>(std::popcount(pattern)) <= k) continue;
    Rational prob = 1;
    for (unsigned i = 0; i < k; ++i) prob *= ((pattern >> i) & 1U) ? p : q;
    total += prob;
  }
  return total;
}

/// Classical value by decoding every strategy index into digits and scoring
/// the induced deterministic box through the exact game_value path.
inline Rational classical_value_by_boxes(const BellGame& game) {
  const auto& s = game.scenario();
  const std::size_t nx = s.inputs_a.size(), ny = s.inputs_b.size();
  const std::size_t na = s.outputs_a.size(), nb = s.outputs_b.size();
  std::size_t gcount = 1, hcount = 1;
  for (std::size_t i = 0; i < nx; ++i) gcount *= na;
  for (std::size_t i = 0; i < ny; ++i) hcount *= nb;
  Rational best = -1;
  for (std::size_t gi = 0; gi < gcount; ++gi) {
    std::vector<std::size_t> g(nx);
    for (std::size_t x = 0, r = gi; x < nx; ++x, r /= na) g[x] = r % na;
    for (std::size_t hi = 0; hi < hcount; ++hi) {
      std::vector<std::size_t> h(ny);
      for (std::size_t y = 0, r = hi; y < ny; ++y, r /= nb) h[y] = r % nb;
      const Rational v = game_value(game, deterministic_box(s, g, h));
      if (v > best) best = v;
    }
  }
  return best;
}

/// Second counter-machine interpreter: recursive single-step function over
/// an explicit state tuple. Returns the step count at which the program
/// halts, or -1 if it is still running after `bound` steps.
struct MachineState {
  std::size_t pc;
  std::uint64_t r[4];
};

inline bool step_once(const TinyProgram& prog, MachineState& st) {
  if (st.pc == prog.size()) return false;
  const auto& ins = prog[st.pc];
  if (ins.op == Opcode::halt) return false;
  if (ins.op == Opcode::inc) {
    st.r[ins.reg] += 1;
    st.pc += 1;
  } else if (ins.op == Opcode::dec) {
    st.r[ins.reg] = st.r[ins.reg] == 0 ? 0 : st.r[ins.reg] - 1;
    st.pc += 1;
  } else if (ins.op == Opcode::jz) {
    st.pc = st.r[ins.reg] == 0 ? ins.target : st.pc + 1;
  } else {
    st.pc = ins.target;
  }
  return true;
}

inline long long halting_step(const TinyProgram& prog, std::uint64_t input, std::uint64_t bound) {
  MachineState st{0, {input, 0, 0, 0}};
  for (std::uint64_t step = 1; step <= bound; ++step) {
    if (!step_once(prog, st)) return static_cast<long long>(step);
  }
  return -1;
}

}  // namespace nsbox::oracle
