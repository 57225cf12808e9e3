#include "nsbox/halting.hpp"

#include <cctype>
#include <sstream>

#include "nsbox/errors.hpp"
#include "nsbox/ns_compute.hpp"

namespace nsbox {

TinyProgram::TinyProgram(std::vector<ProgramInstruction> instructions) : code_(std::move(instructions)) {
  for (std::size_t pc = 0; pc < code_.size(); ++pc) {
    const auto& ins = code_[pc];
    const bool uses_reg = ins.op == Opcode::inc || ins.op == Opcode::dec || ins.op == Opcode::jz;
    const bool jumps = ins.op == Opcode::jz || ins.op == Opcode::jmp;
    if (uses_reg && (ins.reg < 0 || ins.reg >= kRegisterCount)) {
      throw StructuralError("instruction " + std::to_string(pc) + ": register out of range");
    }
    if (jumps && ins.target > code_.size()) {
      throw StructuralError("instruction " + std::to_string(pc) + ": jump target out of range");
    }
  }
}

TinyProgram TinyProgram::halt_only() { return TinyProgram({ProgramInstruction{Opcode::halt, 0, 0}}); }

Execution interpret(const TinyProgram& program, std::uint64_t input, std::uint64_t step_bound) {
  if (step_bound < 1) throw DomainError("step bound must be at least 1");
  Execution run{HaltStatus::running, 0, {input, 0, 0, 0}};
  std::size_t pc = 0;
  while (run.steps < step_bound) {
    ++run.steps;
    if (pc >= program.size()) {
      run.status = HaltStatus::halted;
      return run;
    }
    const auto& ins = program[pc];
    switch (ins.op) {
      case Opcode::inc:
        ++run.registers[ins.reg];
        ++pc;
        break;
      case Opcode::dec:
        if (run.registers[ins.reg] > 0) --run.registers[ins.reg];
        ++pc;
        break;
      case Opcode::jz:
        pc = run.registers[ins.reg] == 0 ? ins.target : pc + 1;
        break;
      case Opcode::jmp:
        pc = ins.target;
        break;
      case Opcode::halt:
        run.status = HaltStatus::halted;
        return run;
    }
  }
  return run;
}

Execution interpret(const TinyProgram& program, std::string_view input_bits, std::uint64_t step_bound) {
  if (input_bits.size() > 64) throw DomainError("input wider than 64 bits");
  return interpret(program, parse_bits(input_bits, static_cast<int>(input_bits.size())), step_bound);
}

namespace {

int parse_register(const std::string& token, const std::string& where) {
  if (token.size() == 2 && (token[0] == 'r' || token[0] == 'R') && token[1] >= '0' &&
      token[1] < '0' + kRegisterCount) {
    return token[1] - '0';
  }
  throw ParseError(where, "expected a register r0..r3, got '" + token + "'");
}

std::size_t parse_address(const std::string& token, const std::string& where) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(where, "expected an instruction address, got '" + token + "'");
  }
  return std::stoul(token);
}

}  // namespace

TinyProgram parse_program(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<ProgramInstruction> code;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> t;
    for (std::string tok; tokens >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    std::string op = t[0];
    for (auto& c : op) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto arity = [&](std::size_t n) {
      if (t.size() != n + 1) throw ParseError(where, op + " takes " + std::to_string(n) + " operand(s)");
    };
    if (op == "INC" || op == "DEC") {
      arity(1);
      code.push_back({op == "INC" ? Opcode::inc : Opcode::dec, parse_register(t[1], where), 0});
    } else if (op == "JZ") {
      arity(2);
      code.push_back({Opcode::jz, parse_register(t[1], where), parse_address(t[2], where)});
    } else if (op == "JMP") {
      arity(1);
      code.push_back({Opcode::jmp, 0, parse_address(t[1], where)});
    } else if (op == "HALT") {
      arity(0);
      code.push_back({Opcode::halt, 0, 0});
    } else {
      throw ParseError(where, "unknown instruction '" + t[0] + "'");
    }
  }
  try {
    return TinyProgram(std::move(code));
  } catch (const StructuralError& e) {
    throw ParseError("", e.what());
  }
}

std::string format_program(const TinyProgram& program) {
  std::ostringstream os;
  for (const auto& ins : program.instructions()) {
    switch (ins.op) {
      case Opcode::inc: os << "INC r" << ins.reg; break;
      case Opcode::dec: os << "DEC r" << ins.reg; break;
      case Opcode::jz: os << "JZ r" << ins.reg << ' ' << ins.target; break;
      case Opcode::jmp: os << "JMP " << ins.target; break;
      case Opcode::halt: os << "HALT"; break;
    }
    os << '\n';
  }
  return os.str();
}

TinyProgram decode_program(std::uint64_t bits, int width) {
  if (width < 0 || width > 64) throw DomainError("program width out of range");
  const int words = width / 4;
  if (words == 0) return TinyProgram::halt_only();
  std::vector<ProgramInstruction> code;
  for (int w = 0; w < words; ++w) {
    const int shift = width - 4 * (w + 1);
    const auto word = static_cast<unsigned>((bits >> shift) & 0xFU);
    const unsigned op = word >> 2, arg = word & 3U;
    switch (op) {
      case 0: code.push_back({Opcode::inc, static_cast<int>(arg), 0}); break;
      case 1: code.push_back({Opcode::dec, static_cast<int>(arg), 0}); break;
      case 2: code.push_back({Opcode::jz, 0, arg}); break;
      default:
        code.push_back(arg == 3 ? ProgramInstruction{Opcode::halt, 0, 0} : ProgramInstruction{Opcode::jmp, 0, arg});
        break;
    }
  }
  for (const auto& ins : code) {
    if ((ins.op == Opcode::jz || ins.op == Opcode::jmp) && ins.target > code.size()) return TinyProgram::halt_only();
  }
  return TinyProgram(std::move(code));
}

namespace {

void check_spec(const BoundedHaltingSpec& spec) {
  if (spec.step_bound < 1) throw DomainError("step bound must be at least 1");
  if (spec.program_bits < 0 || spec.input_bits < 0) throw DomainError("widths must be nonnegative");
  if (spec.program_bits + spec.input_bits > kMaxHaltingTableBits) {
    throw DomainError("program_bits + input_bits exceeds " + std::to_string(kMaxHaltingTableBits));
  }
}

}  // namespace

BooleanFunction bounded_halting_function(const BoundedHaltingSpec& spec) {
  check_spec(spec);
  return BooleanFunction::from_predicate(spec.program_bits, spec.input_bits, [&](std::uint64_t x, std::uint64_t y) {
    return interpret(decode_program(x, spec.program_bits), y, spec.step_bound).status == HaltStatus::halted;
  });
}

BipartiteBox bounded_halting_fbox(const BoundedHaltingSpec& spec) {
  return make_fbox(bounded_halting_function(spec));
}

}  // namespace nsbox
