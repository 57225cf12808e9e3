#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/ns_compute.hpp"

namespace nsbox {

// No kind exists for a message between the parties.
enum class EventKind : std::uint8_t { local_compute, box_call, output };

enum class LocalStep : std::uint8_t { none, constant, coefficient, monomial, accumulate };

const char* to_string(EventKind kind);

struct Event {
  Party party;
  EventKind kind;
  LocalStep step = LocalStep::none;
  std::int64_t term = -1;   // term or box index, when relevant
  std::int64_t input = -1;  // box input
  int value = -1;           // computed bit, box output, or emitted output

  std::string payload() const;
};

struct Reconciliation {
  int a;
  int b;
  int value;
};

/// Ordered event log of one two-party run plus the final a xor b.
class ProtocolTranscript {
 public:
  ProtocolTranscript() = default;
  /// Concatenates per-party logs (Alice's first). Throws StateError if a
  /// party emits more than one output.
  ProtocolTranscript(std::vector<Event> alice, std::vector<Event> bob);

  void append(const Event& event);

  std::span<const Event> events() const { return events_; }
  const std::optional<Reconciliation>& reconciliation() const { return reconciliation_; }
  std::optional<int> output_of(Party party) const;

 private:
  friend int reconcile(ProtocolTranscript& transcript);

  std::vector<Event> events_;
  std::optional<Reconciliation> reconciliation_;
};

/// The "meet later" step: returns a xor b and records it. Throws StateError
/// if either output is missing or the transcript is already reconciled.
int reconcile(ProtocolTranscript& transcript);

/// One event per line, "party<TAB>kind<TAB>payload"; reconciliation last.
void write_transcript(std::ostream& out, const ProtocolTranscript& transcript);
std::string format_transcript(const ProtocolTranscript& transcript);

/// Alice and Bob share one f-box and output what it returns; unreconciled.
ProtocolTranscript run_fbox_protocol(const BooleanFunction& f, std::uint64_t x, std::uint64_t y, Rng& rng);
ProtocolTranscript run_noisy_fbox_protocol(const NoisyBoxSpec& spec, std::uint64_t x, std::uint64_t y,
                                           Rng& rng);

}  // namespace nsbox
