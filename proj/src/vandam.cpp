#include "nsbox/vandam.hpp"

#include <optional>

#include "nsbox/errors.hpp"
#include "nsbox/ns_compute.hpp"

namespace nsbox {

const char* to_string(DecompositionSide side) {
  switch (side) {
    case DecompositionSide::bob: return "bob";
    case DecompositionSide::alice: return "alice";
    case DecompositionSide::min: return "min";
  }
  return "?";
}

DecompositionSide parse_side(const std::string& text) {
  if (text == "bob") return DecompositionSide::bob;
  if (text == "alice") return DecompositionSide::alice;
  if (text == "min") return DecompositionSide::min;
  throw DomainError("side must be one of alice, bob, min (got '" + text + "')");
}

int AnfForm::evaluate(std::uint64_t x, std::uint64_t y) const {
  const bool bob_side = side != DecompositionSide::alice;
  const std::uint64_t coeff_input = bob_side ? x : y;
  const std::uint64_t mono_input = bob_side ? y : x;
  int value = constant[coeff_input];
  for (const auto& t : terms) {
    if ((mono_input & t.mask) == t.mask) value ^= t.coefficient[coeff_input];
  }
  return value;
}

namespace {

AnfForm decompose_one_side(const BooleanFunction& f, DecompositionSide side) {
  const bool bob_side = side == DecompositionSide::bob;
  const int mono_bits = bob_side ? f.bob_bits() : f.alice_bits();
  const std::uint64_t n_mono = std::uint64_t{1} << mono_bits;
  const std::uint64_t n_coeff = bob_side ? f.alice_inputs() : f.bob_inputs();

  // coeffs[S][u]: coefficient of monomial S at the coefficient party's input u.
  std::vector<std::vector<std::uint8_t>> coeffs(n_mono, std::vector<std::uint8_t>(n_coeff));
  std::vector<std::uint8_t> v(n_mono);
  for (std::uint64_t u = 0; u < n_coeff; ++u) {
    for (std::uint64_t z = 0; z < n_mono; ++z) v[z] = static_cast<std::uint8_t>(bob_side ? f(u, z) : f(z, u));
    for (int i = 0; i < mono_bits; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t z = 0; z < n_mono; ++z)
        if (z & bit) v[z] ^= v[z ^ bit];
    }
    for (std::uint64_t s = 0; s < n_mono; ++s) coeffs[s][u] = v[s];
  }

  AnfForm form;
  form.alice_bits = f.alice_bits();
  form.bob_bits = f.bob_bits();
  form.side = side;
  form.constant = std::move(coeffs[0]);
  for (std::uint64_t s = 1; s < n_mono; ++s) {
    bool nonzero = false;
    for (auto c : coeffs[s]) nonzero = nonzero || c != 0;
    if (nonzero) form.terms.push_back(AnfTerm{s, std::move(coeffs[s])});
  }
  return form;
}

std::vector<PlanStep> coefficient_plan(const AnfForm& anf) {
  std::vector<PlanStep> plan;
  bool has_constant = false;
  for (auto c : anf.constant) has_constant = has_constant || c != 0;
  if (has_constant) {
    plan.push_back({PlanOp::eval_constant, 0});
    plan.push_back({PlanOp::accumulate, 0});
  }
  for (std::size_t i = 0; i < anf.terms.size(); ++i) {
    plan.push_back({PlanOp::eval_coefficient, i});
    plan.push_back({PlanOp::box_call, i});
    plan.push_back({PlanOp::accumulate, i});
  }
  plan.push_back({PlanOp::output, 0});
  return plan;
}

std::vector<PlanStep> monomial_plan(const AnfForm& anf) {
  std::vector<PlanStep> plan;
  for (std::size_t i = 0; i < anf.terms.size(); ++i) {
    plan.push_back({PlanOp::eval_monomial, i});
    plan.push_back({PlanOp::box_call, i});
    plan.push_back({PlanOp::accumulate, i});
  }
  plan.push_back({PlanOp::output, 0});
  return plan;
}

// PR-boxes that resolve as the parties reach them. The first caller receives
// the uniform mask r; the second receives the share completing
// a xor b = (input_a and input_b).
class PrBoxPool {
 public:
  PrBoxPool(std::size_t count, Rng& rng) : slots_(count), rng_(rng) {}

  int call(std::size_t box, Party party, int input) {
    if (box >= slots_.size()) throw StateError("plan references box " + std::to_string(box) + " out of range");
    Slot& s = slots_[box];
    if (!s.first) {
      s.first = party;
      s.first_input = input;
      s.mask = random_bit(rng_);
      return s.mask;
    }
    if (*s.first == party || s.resolved) {
      throw StateError(std::string(to_string(party)) + " used box " + std::to_string(box) + " twice");
    }
    s.resolved = true;
    const int product = s.first_input & input;
    const OutputPair out = assign_outputs(s.mask, product);
    return *s.first == Party::alice ? out.b : out.a;
  }

 private:
  struct Slot {
    std::optional<Party> first;
    int first_input = 0;
    int mask = 0;
    bool resolved = false;
  };
  std::vector<Slot> slots_;
  Rng& rng_;
};

// One party's sequential process. It is constructed from the public protocol
// and its own input only.
class PartyProcess {
 public:
  PartyProcess(Party party, const AnfForm& anf, std::uint64_t own_input)
      : party_(party), anf_(anf), input_(own_input) {}

  int run(const std::vector<PlanStep>& plan, PrBoxPool& boxes, std::vector<Event>& log) {
    int wire = 0;
    int acc = 0;
    std::optional<int> emitted;
    for (const auto& step : plan) {
      switch (step.op) {
        case PlanOp::eval_constant:
          require(anf_.coefficient_party(), "eval_constant");
          wire = anf_.constant[input_];
          log.push_back({party_, EventKind::local_compute, LocalStep::constant, -1, -1, wire});
          break;
        case PlanOp::eval_coefficient:
          require(anf_.coefficient_party(), "eval_coefficient");
          wire = term(step).coefficient[input_];
          log.push_back({party_, EventKind::local_compute, LocalStep::coefficient,
                         static_cast<std::int64_t>(step.term), -1, wire});
          break;
        case PlanOp::eval_monomial: {
          require(anf_.monomial_party(), "eval_monomial");
          const auto mask = term(step).mask;
          wire = (input_ & mask) == mask ? 1 : 0;
          log.push_back({party_, EventKind::local_compute, LocalStep::monomial,
                         static_cast<std::int64_t>(step.term), -1, wire});
          break;
        }
        case PlanOp::box_call: {
          const int in = wire;
          wire = boxes.call(step.term, party_, in);
          log.push_back({party_, EventKind::box_call, LocalStep::none, static_cast<std::int64_t>(step.term), in, wire});
          break;
        }
        case PlanOp::accumulate:
          acc ^= wire;
          log.push_back({party_, EventKind::local_compute, LocalStep::accumulate, -1, -1, acc});
          break;
        case PlanOp::output:
          if (emitted) throw StateError(std::string(to_string(party_)) + " plan emits twice");
          emitted = acc;
          log.push_back({party_, EventKind::output, LocalStep::none, -1, -1, acc});
          break;
      }
    }
    if (!emitted) throw StateError(std::string(to_string(party_)) + " plan never emits an output");
    return *emitted;
  }

 private:
  void require(Party role, const char* op) const {
    if (party_ != role) throw StateError(std::string(to_string(party_)) + " cannot execute " + op);
  }
  const AnfTerm& term(const PlanStep& step) const {
    if (step.term >= anf_.terms.size()) throw StateError("plan references a missing term");
    return anf_.terms[step.term];
  }

  Party party_;
  const AnfForm& anf_;
  std::uint64_t input_;
};

}  // namespace

AnfForm anf_decompose(const BooleanFunction& f, DecompositionSide side) {
  if (side != DecompositionSide::min) return decompose_one_side(f, side);
  AnfForm bob = decompose_one_side(f, DecompositionSide::bob);
  AnfForm alice = decompose_one_side(f, DecompositionSide::alice);
  return alice.terms.size() < bob.terms.size() ? std::move(alice) : std::move(bob);
}

CompiledProtocol compile(const BooleanFunction& f, DecompositionSide side) {
  CompiledProtocol p{f, anf_decompose(f, side), 0, {}, {}};
  p.box_count = p.anf.terms.size();
  auto coeff = coefficient_plan(p.anf);
  auto mono = monomial_plan(p.anf);
  if (p.anf.coefficient_party() == Party::alice) {
    p.alice_plan = std::move(coeff);
    p.bob_plan = std::move(mono);
  } else {
    p.alice_plan = std::move(mono);
    p.bob_plan = std::move(coeff);
  }
  return p;
}

ProtocolRun run_compiled(const CompiledProtocol& protocol, std::uint64_t x, std::uint64_t y, Rng& rng) {
  if (x >= protocol.f.alice_inputs() || y >= protocol.f.bob_inputs()) {
    throw DomainError("input length does not match the compiled function");
  }
  PrBoxPool boxes(protocol.box_count, rng);
  std::vector<Event> alice_log, bob_log;
  const int a = PartyProcess(Party::alice, protocol.anf, x).run(protocol.alice_plan, boxes, alice_log);
  const int b = PartyProcess(Party::bob, protocol.anf, y).run(protocol.bob_plan, boxes, bob_log);
  return ProtocolRun{a, b, ProtocolTranscript(std::move(alice_log), std::move(bob_log))};
}

namespace {

const char* op_name(PlanOp op) {
  switch (op) {
    case PlanOp::eval_constant: return "eval_constant";
    case PlanOp::eval_coefficient: return "eval_coefficient";
    case PlanOp::eval_monomial: return "eval_monomial";
    case PlanOp::box_call: return "box_call";
    case PlanOp::accumulate: return "accumulate";
    case PlanOp::output: return "output";
  }
  return "?";
}

PlanOp op_from_name(const std::string& name, const std::string& where) {
  for (auto op : {PlanOp::eval_constant, PlanOp::eval_coefficient, PlanOp::eval_monomial, PlanOp::box_call,
                  PlanOp::accumulate, PlanOp::output}) {
    if (name == op_name(op)) return op;
  }
  throw ParseError(where, "unknown plan op '" + name + "'");
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::vector<std::uint8_t> bits_from_json(const nlohmann::json& v, std::size_t length, const std::string& where) {
  if (!v.is_string()) throw ParseError(where, "expected a 0/1 string");
  const auto s = v.get<std::string>();
  if (s.size() != length) throw ParseError(where, "expected " + std::to_string(length) + " bits");
  std::vector<std::uint8_t> bits;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError(where, "expected a 0/1 string");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

nlohmann::ordered_json plan_to_json(const std::vector<PlanStep>& plan) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : plan) arr.push_back({{"op", op_name(s.op)}, {"term", s.term}});
  return arr;
}

std::vector<PlanStep> plan_from_json(const nlohmann::json& doc, const char* field, std::size_t terms) {
  if (!doc.contains(field) || !doc[field].is_array()) throw ParseError(field, "missing or not an array");
  std::vector<PlanStep> plan;
  for (std::size_t i = 0; i < doc[field].size(); ++i) {
    const std::string where = std::string(field) + "[" + std::to_string(i) + "]";
    const auto& e = doc[field][i];
    if (!e.is_object() || !e.contains("op") || !e["op"].is_string()) throw ParseError(where, "expected {op, term}");
    PlanStep step{op_from_name(e["op"].get<std::string>(), where + ".op"), 0};
    if (e.contains("term")) {
      if (!e["term"].is_number_unsigned()) throw ParseError(where + ".term", "expected a nonnegative integer");
      step.term = e["term"].get<std::size_t>();
    }
    const bool uses_term = step.op == PlanOp::eval_coefficient || step.op == PlanOp::eval_monomial ||
                           step.op == PlanOp::box_call;
    if (uses_term && step.term >= terms) throw ParseError(where + ".term", "term index out of range");
    plan.push_back(step);
  }
  return plan;
}

}  // namespace

nlohmann::ordered_json protocol_to_json(const CompiledProtocol& p) {
  nlohmann::ordered_json doc;
  doc["l"] = p.f.alice_bits();
  doc["m"] = p.f.bob_bits();
  doc["side"] = to_string(p.anf.side);
  doc["truth_table"] = bits_string(p.f.truth_table());
  doc["box_count"] = p.box_count;
  doc["constant"] = bits_string(p.anf.constant);
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : p.anf.terms) terms.push_back({{"mask", t.mask}, {"coefficient", bits_string(t.coefficient)}});
  doc["terms"] = std::move(terms);
  doc["alice_plan"] = plan_to_json(p.alice_plan);
  doc["bob_plan"] = plan_to_json(p.bob_plan);
  return doc;
}

CompiledProtocol protocol_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("", "protocol document must be a JSON object");
  for (const char* key : {"l", "m", "side", "truth_table", "constant", "terms", "alice_plan", "bob_plan"}) {
    if (!doc.contains(key)) throw ParseError(key, "missing field");
  }
  if (!doc["l"].is_number_unsigned() || !doc["m"].is_number_unsigned()) {
    throw ParseError("l/m", "expected nonnegative integers");
  }
  const int l = doc["l"].get<int>();
  const int m = doc["m"].get<int>();
  if (l + m > BooleanFunction::kMaxBits) throw ParseError("l/m", "widths out of range");
  BooleanFunction f(l, m, bits_from_json(doc["truth_table"], std::size_t{1} << (l + m), "truth_table"));

  AnfForm anf;
  anf.alice_bits = l;
  anf.bob_bits = m;
  if (!doc["side"].is_string()) throw ParseError("side", "expected a string");
  try {
    anf.side = parse_side(doc["side"].get<std::string>());
  } catch (const DomainError& e) {
    throw ParseError("side", e.what());
  }
  if (anf.side == DecompositionSide::min) throw ParseError("side", "a compiled protocol records alice or bob");
  const bool bob_side = anf.side == DecompositionSide::bob;
  const std::size_t coeff_len = std::size_t{1} << (bob_side ? l : m);
  const int mono_bits = bob_side ? m : l;
  anf.constant = bits_from_json(doc["constant"], coeff_len, "constant");
  if (!doc["terms"].is_array()) throw ParseError("terms", "expected an array");
  for (std::size_t i = 0; i < doc["terms"].size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const auto& t = doc["terms"][i];
    if (!t.is_object() || !t.contains("mask") || !t["mask"].is_number_unsigned() || !t.contains("coefficient")) {
      throw ParseError(where, "expected {mask, coefficient}");
    }
    const auto mask = t["mask"].get<std::uint64_t>();
    if (mask == 0 || mask >= (std::uint64_t{1} << mono_bits)) throw ParseError(where + ".mask", "mask out of range");
    anf.terms.push_back(AnfTerm{mask, bits_from_json(t["coefficient"], coeff_len, where + ".coefficient")});
  }
  for (std::uint64_t x = 0; x < f.alice_inputs(); ++x)
    for (std::uint64_t y = 0; y < f.bob_inputs(); ++y)
      if (anf.evaluate(x, y) != f(x, y)) throw ParseError("terms", "decomposition does not reproduce truth_table");

  CompiledProtocol p{std::move(f), std::move(anf), 0, {}, {}};
  p.box_count = p.anf.terms.size();
  p.alice_plan = plan_from_json(doc, "alice_plan", p.box_count);
  p.bob_plan = plan_from_json(doc, "bob_plan", p.box_count);
  if (doc.contains("box_count") && doc["box_count"] != p.box_count) {
    throw ParseError("box_count", "does not match the number of terms");
  }
  return p;
}

}  // namespace nsbox
