#include "nsbox/box.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nsbox/errors.hpp"

namespace nsbox {

const char* to_string(Party party) { return party == Party::alice ? "alice" : "bob"; }

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw StructuralError("alphabet must be non-empty");
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) throw StructuralError("duplicate alphabet label '" + label + "'");
  }
}

Alphabet Alphabet::bitstrings(int length) {
  if (length < 0 || length > 24) throw DomainError("bitstring length out of range");
  std::vector<std::string> labels;
  labels.reserve(std::size_t{1} << length);
  for (std::size_t v = 0; v < (std::size_t{1} << length); ++v) {
    std::string s(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i) {
      if ((v >> (length - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
    }
    labels.push_back(std::move(s));
  }
  return Alphabet(std::move(labels));
}

Alphabet Alphabet::integers(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

std::optional<std::size_t> Alphabet::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Alphabet::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw StructuralError("unknown symbol '" + label + "'");
}

BipartiteBox::BipartiteBox(Scenario scenario, std::vector<Rational> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (table_.size() != scenario_.table_size()) {
    throw StructuralError("table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(scenario_.table_size()));
  }
}

BipartiteBox BipartiteBox::from_entries(Scenario scenario, const std::vector<TableEntry>& entries) {
  const std::size_t n = scenario.table_size();
  std::vector<Rational> table(n);
  std::vector<bool> filled(n, false);
  for (const auto& e : entries) {
    auto tuple = "(x=" + e.x + ", y=" + e.y + ", a=" + e.a + ", b=" + e.b + ")";
    auto x = scenario.inputs_a.find(e.x);
    auto y = scenario.inputs_b.find(e.y);
    auto a = scenario.outputs_a.find(e.a);
    auto b = scenario.outputs_b.find(e.b);
    if (!x || !y || !a || !b) throw StructuralError("unknown symbol in table entry " + tuple);
    const std::size_t i = scenario.index(*x, *y, *a, *b);
    if (filled[i]) throw StructuralError("duplicate table entry " + tuple);
    filled[i] = true;
    table[i] = e.p;
  }
  for (std::size_t x = 0; x < scenario.inputs_a.size(); ++x)
    for (std::size_t y = 0; y < scenario.inputs_b.size(); ++y)
      for (std::size_t a = 0; a < scenario.outputs_a.size(); ++a)
        for (std::size_t b = 0; b < scenario.outputs_b.size(); ++b)
          if (!filled[scenario.index(x, y, a, b)]) {
            throw StructuralError("missing table entry (x=" + scenario.inputs_a[x] +
                                  ", y=" + scenario.inputs_b[y] + ", a=" + scenario.outputs_a[a] +
                                  ", b=" + scenario.outputs_b[b] + ")");
          }
  return BipartiteBox(std::move(scenario), std::move(table));
}

const Rational& BipartiteBox::at(const std::string& x, const std::string& y, const std::string& a,
                                 const std::string& b) const {
  return (*this)(inputs_a().index_of(x), inputs_b().index_of(y), outputs_a().index_of(a),
                 outputs_b().index_of(b));
}

bool check_normalized(const BipartiteBox& box) {
  const auto& s = box.scenario();
  for (std::size_t x = 0; x < s.inputs_a.size(); ++x) {
    for (std::size_t y = 0; y < s.inputs_b.size(); ++y) {
      Rational sum = 0;
      for (std::size_t a = 0; a < s.outputs_a.size(); ++a) {
        for (std::size_t b = 0; b < s.outputs_b.size(); ++b) {
          const Rational& p = box(x, y, a, b);
          if (p < 0 || p > 1) return false;
          sum += p;
        }
      }
      if (sum != 1) return false;
    }
  }
  return true;
}

Rational marginal(const BipartiteBox& box, Party side, std::size_t output, std::size_t x,
                  std::size_t y) {
  const auto& s = box.scenario();
  const auto& own = side == Party::alice ? s.outputs_a : s.outputs_b;
  if (x >= s.inputs_a.size() || y >= s.inputs_b.size() || output >= own.size()) {
    throw StructuralError("marginal index out of range");
  }
  Rational sum = 0;
  if (side == Party::alice) {
    for (std::size_t b = 0; b < s.outputs_b.size(); ++b) sum += box(x, y, output, b);
  } else {
    for (std::size_t a = 0; a < s.outputs_a.size(); ++a) sum += box(x, y, a, output);
  }
  return sum;
}

Rational marginal(const BipartiteBox& box, Party side, const std::string& output,
                  const std::string& x, const std::string& y) {
  const auto& own = side == Party::alice ? box.outputs_a() : box.outputs_b();
  return marginal(box, side, own.index_of(output), box.inputs_a().index_of(x),
                  box.inputs_b().index_of(y));
}

namespace {

// Alice side: fixed x, compare across Bob's inputs. Bob side: fixed y, across x.
void collect_violations(const BipartiteBox& box, Party side, std::vector<Violation>& out) {
  const auto& s = box.scenario();
  const bool alice = side == Party::alice;
  const std::size_t n_fixed = alice ? s.inputs_a.size() : s.inputs_b.size();
  const std::size_t n_remote = alice ? s.inputs_b.size() : s.inputs_a.size();
  const std::size_t n_out = alice ? s.outputs_a.size() : s.outputs_b.size();
  std::vector<Rational> margins(n_remote);
  for (std::size_t fixed = 0; fixed < n_fixed; ++fixed) {
    for (std::size_t o = 0; o < n_out; ++o) {
      for (std::size_t r = 0; r < n_remote; ++r) {
        margins[r] = alice ? marginal(box, side, o, fixed, r) : marginal(box, side, o, r, fixed);
      }
      for (std::size_t r1 = 0; r1 < n_remote; ++r1) {
        for (std::size_t r2 = r1 + 1; r2 < n_remote; ++r2) {
          if (margins[r1] != margins[r2]) {
            out.push_back(Violation{side, o, fixed, {r1, r2}, margins[r1], margins[r2]});
          }
        }
      }
    }
  }
}

}  // namespace

NoSignallingReport check_no_signalling(const BipartiteBox& box) {
  if (!check_normalized(box)) {
    throw PreconditionError("no-signalling check requires a normalized box");
  }
  NoSignallingReport report;
  collect_violations(box, Party::alice, report.violations);
  collect_violations(box, Party::bob, report.violations);
  report.holds = report.violations.empty();
  return report;
}

std::string describe(const Violation& v, const BipartiteBox& box) {
  const bool alice = v.side == Party::alice;
  const auto& fixed = alice ? box.inputs_a() : box.inputs_b();
  const auto& remote = alice ? box.inputs_b() : box.inputs_a();
  const auto& out = alice ? box.outputs_a() : box.outputs_b();
  const char* o = alice ? "a" : "b";
  const char* f = alice ? "x" : "y";
  const char* r = alice ? "y" : "x";
  std::ostringstream os;
  os << to_string(v.side) << ": " << o << "=" << out[v.output] << ", " << f << "="
     << fixed[v.fixed_input] << ", (" << r << "=" << remote[v.input_pair.first] << ", " << r
     << "=" << remote[v.input_pair.second] << "): " << format_exact(v.lhs_marginal)
     << " != " << format_exact(v.rhs_marginal);
  return os.str();
}

BipartiteBox mix(std::span<const std::pair<BipartiteBox, Rational>> weighted) {
  if (weighted.empty()) throw StructuralError("mix of an empty list");
  const Scenario& scenario = weighted.front().first.scenario();
  Rational total = 0;
  for (const auto& [box, w] : weighted) {
    if (!(box.scenario() == scenario)) throw StructuralError("mix: alphabet mismatch");
    if (w < 0) throw DomainError("mix: negative weight " + format_exact(w));
    total += w;
  }
  if (total != 1) throw DomainError("mix: weights sum to " + format_exact(total) + ", not 1");
  std::vector<Rational> table(scenario.table_size());
  for (const auto& [box, w] : weighted) {
    auto src = box.table();
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += w * src[i];
  }
  return BipartiteBox(scenario, std::move(table));
}

BipartiteBox mix(const BipartiteBox& first, const BipartiteBox& second, const Rational& lambda) {
  const std::pair<BipartiteBox, Rational> parts[] = {{first, lambda}, {second, 1 - lambda}};
  return mix(parts);
}

BipartiteBox deterministic_box(const Scenario& scenario, std::span<const std::size_t> alice,
                               std::span<const std::size_t> bob) {
  if (alice.size() != scenario.inputs_a.size() || bob.size() != scenario.inputs_b.size()) {
    throw StructuralError("deterministic strategy does not match the alphabets");
  }
  for (auto a : alice)
    if (a >= scenario.outputs_a.size()) throw StructuralError("strategy output out of range");
  for (auto b : bob)
    if (b >= scenario.outputs_b.size()) throw StructuralError("strategy output out of range");
  return BipartiteBox::generate(scenario, [&](std::size_t x, std::size_t y, std::size_t a,
                                              std::size_t b) {
    return Rational(alice[x] == a && bob[y] == b ? 1 : 0);
  });
}

}  // namespace nsbox
