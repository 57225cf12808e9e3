#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "nsbox/boolean_function.hpp"
#include "nsbox/random.hpp"
#include "nsbox/transcript.hpp"

namespace nsbox {

/// Which party's variables the monomials range over.
///  bob:   f(x,y) = XOR_S g_S(x) * y^S   (Alice evaluates coefficients)
///  alice: f(x,y) = XOR_S h_S(y) * x^S   (Bob evaluates coefficients)
///  min:   whichever of the two needs fewer PR-boxes; bob on ties.
enum class DecompositionSide { bob, alice, min };

const char* to_string(DecompositionSide side);
DecompositionSide parse_side(const std::string& text);

/// One monomial over the decomposed party's bits. `mask` uses the same bit
/// positions as that party's integer-encoded input, so the monomial is
/// ((input & mask) == mask). `coefficient` is a truth table over the other
/// party's inputs.
struct AnfTerm {
  std::uint64_t mask;
  std::vector<std::uint8_t> coefficient;

  friend bool operator==(const AnfTerm&, const AnfTerm&) = default;
};

/// Algebraic normal form of f in the decomposed party's variables. Only
/// nonempty monomials with a nonzero coefficient are kept in `terms`, in
/// ascending mask order; the empty-monomial coefficient lives in `constant`.
struct AnfForm {
  int alice_bits = 0;
  int bob_bits = 0;
  DecompositionSide side = DecompositionSide::bob;
  std::vector<std::uint8_t> constant;
  std::vector<AnfTerm> terms;

  /// Evaluates XOR of all terms at (x, y).
  int evaluate(std::uint64_t x, std::uint64_t y) const;

  Party coefficient_party() const { return side == DecompositionSide::alice ? Party::bob : Party::alice; }
  Party monomial_party() const { return side == DecompositionSide::alice ? Party::alice : Party::bob; }
};

/// GF(2) Moebius transform over the chosen side: coefficient_S(u) is the XOR
/// of f over all assignments of the decomposed variables supported inside S.
AnfForm anf_decompose(const BooleanFunction& f, DecompositionSide side = DecompositionSide::bob);

enum class PlanOp : std::uint8_t {
  eval_constant,     // wire <- constant(own input)
  eval_coefficient,  // wire <- coefficient_term(own input)
  eval_monomial,     // wire <- monomial_term(own input)
  box_call,          // wire <- box_term(wire)
  accumulate,        // acc ^= wire
  output,            // emit acc
};

struct PlanStep {
  PlanOp op;
  std::size_t term = 0;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

/// PR-box protocol computing f: one fresh PR-box per term of the ANF.
struct CompiledProtocol {
  BooleanFunction f;
  AnfForm anf;
  std::size_t box_count = 0;
  std::vector<PlanStep> alice_plan;
  std::vector<PlanStep> bob_plan;

  const std::vector<PlanStep>& plan_of(Party party) const {
    return party == Party::alice ? alice_plan : bob_plan;
  }
};

CompiledProtocol compile(const BooleanFunction& f, DecompositionSide side = DecompositionSide::bob);

struct ProtocolRun {
  int a;
  int b;
  ProtocolTranscript transcript;
};

/// Executes both plans against `protocol.box_count` fresh PR-boxes. Each
/// party's process sees only its own input; the boxes are the only shared
/// object. The returned transcript is not yet reconciled.
ProtocolRun run_compiled(const CompiledProtocol& protocol, std::uint64_t x, std::uint64_t y, Rng& rng);

// Protocol documents:
//   { "l", "m", "side", "truth_table": "0110..", "box_count",
//     "constant": "01..", "terms": [{"mask", "coefficient": "01.."}],
//     "alice_plan": [{"op", "term"}], "bob_plan": [...] }
nlohmann::ordered_json protocol_to_json(const CompiledProtocol& protocol);
CompiledProtocol protocol_from_json(const nlohmann::json& doc);

}  // namespace nsbox
