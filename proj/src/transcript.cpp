#include "nsbox/transcript.hpp"

#include <sstream>

#include "nsbox/errors.hpp"

namespace nsbox {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::local_compute: return "local_compute";
    case EventKind::box_call: return "box_call";
    case EventKind::output: return "output";
  }
  return "?";
}

std::string Event::payload() const {
  std::ostringstream os;
  switch (kind) {
    case EventKind::local_compute:
      switch (step) {
        case LocalStep::constant: os << "constant value=" << value; break;
        case LocalStep::coefficient: os << "coefficient term=" << term << " value=" << value; break;
        case LocalStep::monomial: os << "monomial term=" << term << " value=" << value; break;
        case LocalStep::accumulate: os << "xor acc=" << value; break;
        case LocalStep::none: os << "value=" << value; break;
      }
      break;
    case EventKind::box_call: os << "box=" << term << " in=" << input << " out=" << value; break;
    case EventKind::output: os << "out=" << value; break;
  }
  return os.str();
}

ProtocolTranscript::ProtocolTranscript(std::vector<Event> alice, std::vector<Event> bob) {
  events_.reserve(alice.size() + bob.size());
  for (auto& e : alice) append(e);
  for (auto& e : bob) append(e);
}

void ProtocolTranscript::append(const Event& event) {
  if (reconciliation_) throw StateError("transcript already reconciled");
  if (event.kind == EventKind::output && output_of(event.party)) {
    throw StateError(std::string(to_string(event.party)) + " already produced an output");
  }
  events_.push_back(event);
}

std::optional<int> ProtocolTranscript::output_of(Party party) const {
  for (const auto& e : events_) {
    if (e.party == party && e.kind == EventKind::output) return e.value;
  }
  return std::nullopt;
}

int reconcile(ProtocolTranscript& transcript) {
  if (transcript.reconciliation_) throw StateError("transcript already reconciled");
  auto a = transcript.output_of(Party::alice);
  auto b = transcript.output_of(Party::bob);
  if (!a) throw StateError("alice has not produced an output");
  if (!b) throw StateError("bob has not produced an output");
  transcript.reconciliation_ = Reconciliation{*a, *b, *a ^ *b};
  return *a ^ *b;
}

void write_transcript(std::ostream& out, const ProtocolTranscript& transcript) {
  for (const auto& e : transcript.events()) {
    out << to_string(e.party) << '\t' << to_string(e.kind) << '\t' << e.payload() << '\n';
  }
  if (const auto& r = transcript.reconciliation()) {
    out << "both\treconcile\ta=" << r->a << " b=" << r->b << " a^b=" << r->value << '\n';
  }
}

std::string format_transcript(const ProtocolTranscript& transcript) {
  std::ostringstream os;
  write_transcript(os, transcript);
  return os.str();
}

namespace {

ProtocolTranscript single_box_transcript(std::uint64_t x, std::uint64_t y, OutputPair out) {
  std::vector<Event> alice{
      Event{Party::alice, EventKind::box_call, LocalStep::none, 0, static_cast<std::int64_t>(x), out.a},
      Event{Party::alice, EventKind::output, LocalStep::none, -1, -1, out.a}};
  std::vector<Event> bob{
      Event{Party::bob, EventKind::box_call, LocalStep::none, 0, static_cast<std::int64_t>(y), out.b},
      Event{Party::bob, EventKind::output, LocalStep::none, -1, -1, out.b}};
  return ProtocolTranscript(std::move(alice), std::move(bob));
}

}  // namespace

ProtocolTranscript run_fbox_protocol(const BooleanFunction& f, std::uint64_t x, std::uint64_t y, Rng& rng) {
  return single_box_transcript(x, y, sample_fbox(f, x, y, rng));
}

ProtocolTranscript run_noisy_fbox_protocol(const NoisyBoxSpec& spec, std::uint64_t x, std::uint64_t y,
                                           Rng& rng) {
  return single_box_transcript(x, y, sample_noisy_fbox(spec, x, y, rng));
}

}  // namespace nsbox
