#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsbox/boolean_function.hpp"
#include "nsbox/box.hpp"

namespace nsbox {

// A four-register counter machine. Only the step-bounded halting predicate
// H_T(x, y) = "program x halts on input y within T steps" is built here; the
// unbounded predicate is not computable and has no representation in code.

enum class Opcode : std::uint8_t { inc, dec, jz, jmp, halt };

inline constexpr int kRegisterCount = 4;

struct ProgramInstruction {
  Opcode op = Opcode::halt;
  int reg = 0;              // inc, dec, jz
  std::size_t target = 0;   // jz, jmp

  friend bool operator==(const ProgramInstruction&, const ProgramInstruction&) = default;
};

/// Validated instruction list: registers in 0..3, jump targets in
/// [0, size()]. Jumping to size() (or falling off the end) halts.
class TinyProgram {
 public:
  explicit TinyProgram(std::vector<ProgramInstruction> instructions);

  static TinyProgram halt_only();

  std::size_t size() const { return code_.size(); }
  const ProgramInstruction& operator[](std::size_t pc) const { return code_[pc]; }
  const std::vector<ProgramInstruction>& instructions() const { return code_; }

  friend bool operator==(const TinyProgram&, const TinyProgram&) = default;

 private:
  std::vector<ProgramInstruction> code_;
};

enum class HaltStatus { halted, running };

struct Execution {
  HaltStatus status;
  std::uint64_t steps;  // steps executed, including the halting step
  std::array<std::uint64_t, kRegisterCount> registers;
};

/// Loads `input` into r0, runs at most `step_bound` steps. Every executed
/// instruction costs one step; reaching address size() counts as executing
/// an implicit HALT. DEC on zero leaves the register at zero.
Execution interpret(const TinyProgram& program, std::uint64_t input, std::uint64_t step_bound);
Execution interpret(const TinyProgram& program, std::string_view input_bits, std::uint64_t step_bound);

// Program text: one instruction per line, "INC r0", "DEC r1", "JZ r2 5",
// "JMP 0", "HALT"; '#' starts a comment, blank lines are skipped.
TinyProgram parse_program(std::string_view text);
std::string format_program(const TinyProgram& program);

/// Decodes a `width`-bit program, read as 4-bit words, most significant first;
/// leftover bits below a whole word are ignored. Word layout `oo aa`:
///   00 rr  INC r        01 rr  DEC r
///   10 tt  JZ r0 tt     11 tt  JMP tt, except 11 11 = HALT
/// A jump target beyond the program length makes the encoding invalid; invalid
/// encodings and widths below one word decode to the single-HALT program.
TinyProgram decode_program(std::uint64_t bits, int width);

struct BoundedHaltingSpec {
  std::uint64_t step_bound = 1;
  int program_bits = 4;
  int input_bits = 2;
};

inline constexpr int kMaxHaltingTableBits = 16;

/// f(x, y) = [decode_program(x) halts on y within step_bound steps].
BooleanFunction bounded_halting_function(const BoundedHaltingSpec& spec);

/// make_fbox of bounded_halting_function. Throws DomainError when
/// program_bits + input_bits exceeds 16 or step_bound is zero.
BipartiteBox bounded_halting_fbox(const BoundedHaltingSpec& spec);

}  // namespace nsbox
