#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nsbox/amplify.hpp"
#include "nsbox/bell_game.hpp"
#include "nsbox/box_io.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/halting.hpp"
#include "nsbox/ns_compute.hpp"
#include "nsbox/quantum.hpp"
#include "nsbox/transcript.hpp"
#include "nsbox/vandam.hpp"

namespace nsbox::cli {

std::string data_dir() {
#ifdef NSBOX_DATA_DIR
  return NSBOX_DATA_DIR;
#else
  return "data";
#endif
}

namespace {

std::string exact_and_decimal(const Rational& r) {
  return format_exact(r) + " (" + format_decimal(r) + ")";
}

std::string decimal10(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

int cmd_verify(const std::string& box_file, std::ostream& out) {
  const BipartiteBox box = read_box(box_file);
  if (!check_normalized(box)) {
    out << "normalized: FAILED\n";
    out << "no-signalling: not checked (box is not normalized)\n";
    return kExitViolation;
  }
  out << "normalized: OK\n";
  const auto report = check_no_signalling(box);
  if (report.holds) {
    out << "no-signalling: OK\n";
    return kExitOk;
  }
  out << "no-signalling: VIOLATED (" << report.violations.size() << " violations)\n";
  for (const auto& v : report.violations) out << "  " << describe(v, box) << "\n";
  return kExitViolation;
}

BellGame load_game(const std::string& name) {
  if (name == "chsh") return chsh_game();
  return read_game(name);
}

void print_strategy(std::ostream& out, const BellGame& game, const DeterministicStrategy& s) {
  const auto& sc = game.scenario();
  out << "alice strategy:";
  for (std::size_t x = 0; x < s.alice.size(); ++x) out << " x=" << sc.inputs_a[x] << "->a=" << sc.outputs_a[s.alice[x]];
  out << "\nbob strategy:";
  for (std::size_t y = 0; y < s.bob.size(); ++y) out << " y=" << sc.inputs_b[y] << "->b=" << sc.outputs_b[s.bob[y]];
  out << "\n";
}

int cmd_game(const std::string& game_name, const std::string& strategy, double tolerance, std::ostream& out) {
  const BellGame game = load_game(game_name);
  out << "game: " << game_name << "\nstrategy: " << strategy << "\n";
  if (strategy == "classical") {
    const auto cv = classical_value(game);
    out << "value: " << exact_and_decimal(cv.value) << "\n";
    print_strategy(out, game, cv.strategy);
    return kExitOk;
  }
  if (strategy == "pr") {
    out << "value: " << exact_and_decimal(game_value(game, pr_box())) << "\n";
    return kExitOk;
  }
  if (strategy == "quantum-builtin") {
    const auto q = optimal_chsh_strategy<double>();
    const auto probs = outcome_probabilities(q);
    const auto rationalized = box_from_quantum(q, tolerance);
    if (!(rationalized.box.scenario() == game.scenario())) throw StructuralError("game and box alphabets differ");
    out << "value: " << decimal10(game_value<double>(game, probs)) << "\n";
    out << "rationalized value: " << exact_and_decimal(game_value(game, rationalized.box)) << "\n";
    out << "max rationalization error: " << rationalized.max_error << "\n";
    return kExitOk;
  }
  if (strategy.rfind("box:", 0) == 0) {
    const BipartiteBox box = read_box(strategy.substr(4));
    if (!check_normalized(box)) throw PreconditionError("strategy box is not normalized");
    out << "value: " << exact_and_decimal(game_value(game, box)) << "\n";
    return kExitOk;
  }
  throw DomainError("unknown strategy '" + strategy + "' (classical, quantum-builtin, pr, box:<file>)");
}

int cmd_fbox(const std::string& function_file, const std::string& p_text, const std::string& out_path,
             std::ostream& out) {
  const BooleanFunction f = read_truth_table(function_file);
  std::optional<NoisyBoxSpec> noisy;
  if (!p_text.empty()) noisy.emplace(f, parse_rational(p_text));
  const BipartiteBox box = noisy ? make_noisy_fbox(*noisy) : make_fbox(f);
  out << "function: l=" << f.alice_bits() << " m=" << f.bob_bits() << "\n";
  if (noisy) out << "correctness p: " << exact_and_decimal(noisy->p()) << "\n";
  const auto report = check_no_signalling(box);
  out << "normalized: " << (check_normalized(box) ? "OK" : "FAILED") << "\n";
  out << "no-signalling: " << (report.holds ? "OK" : "VIOLATED") << "\n";
  bool uniform = true;
  for (std::size_t x = 0; x < box.inputs_a().size(); ++x)
    for (std::size_t y = 0; y < box.inputs_b().size(); ++y)
      for (std::size_t o = 0; o < 2; ++o)
        uniform = uniform && marginal(box, Party::alice, o, x, y) == Rational(1, 2) &&
                  marginal(box, Party::bob, o, x, y) == Rational(1, 2);
  out << "uniform marginals: " << (uniform ? "OK" : "FAILED") << "\n";
  if (!out_path.empty()) {
    write_box(out_path, box);
    out << "wrote " << out_path << "\n";
  }
  return report.holds && uniform ? kExitOk : kExitViolation;
}

int cmd_compile(const std::string& function_file, const std::string& side, const std::string& out_path, bool check,
                std::uint64_t seed, std::ostream& out) {
  const BooleanFunction f = read_truth_table(function_file);
  const CompiledProtocol protocol = compile(f, parse_side(side));
  out << "function: l=" << f.alice_bits() << " m=" << f.bob_bits() << "\n";
  out << "side: " << to_string(protocol.anf.side) << "\n";
  out << "box_count: " << protocol.box_count << "\n";
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw Error("cannot write " + out_path);
    file << protocol_to_json(protocol).dump(2) << "\n";
    out << "wrote " << out_path << "\n";
  }
  if (!check) return kExitOk;
  Rng rng(seed);
  std::uint64_t good = 0;
  const std::uint64_t total = f.alice_inputs() * f.bob_inputs();
  for (std::uint64_t x = 0; x < f.alice_inputs(); ++x)
    for (std::uint64_t y = 0; y < f.bob_inputs(); ++y) {
      auto run = run_compiled(protocol, x, y, rng);
      if (reconcile(run.transcript) == f(x, y)) ++good;
    }
  out << "check: " << (good == total ? "OK" : "FAILED") << " (" << good << "/" << total << " inputs)\n";
  return good == total ? kExitOk : kExitViolation;
}

int cmd_run(const std::string& function_file, const std::string& x_bits, const std::string& y_bits,
            const std::string& side, std::uint64_t seed, std::ostream& out) {
  const BooleanFunction f = read_truth_table(function_file);
  const std::uint64_t x = parse_bits(x_bits, f.alice_bits());
  const std::uint64_t y = parse_bits(y_bits, f.bob_bits());
  Rng rng(seed);
  auto run = run_compiled(compile(f, parse_side(side)), x, y, rng);
  const int value = reconcile(run.transcript);
  write_transcript(out, run.transcript);
  out << "f(x,y) = " << f(x, y) << "\n";
  return value == f(x, y) ? kExitOk : kExitViolation;
}

int cmd_amplify(const std::string& function_file, const std::string& p_text, const std::string& eps_text,
                std::uint64_t trials, std::uint64_t seed, const std::string& csv_path, std::ostream& out) {
  const BooleanFunction f = read_truth_table(function_file);
  NoisyBoxSpec spec(f, parse_rational(p_text));
  const Rational epsilon = parse_rational(eps_text);
  const auto plan = AmplificationPlan::for_target(spec, epsilon);

  Rng rng(seed);
  const std::uint64_t pairs = f.alice_inputs() * f.bob_inputs();
  std::uint64_t correct = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t pair = t % pairs;
    const std::uint64_t x = pair / f.bob_inputs(), y = pair % f.bob_inputs();
    if (amplify(plan, x, y, rng).bit == f(x, y)) ++correct;
  }
  const double empirical = trials == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(trials);
  const Rational achieved = majority_correctness(spec.p(), plan.k());

  out << "p: " << exact_and_decimal(spec.p()) << "\n";
  out << "epsilon: " << exact_and_decimal(epsilon) << "\n";
  out << "k: " << plan.k() << "\n";
  out << "achieved_correctness: " << exact_and_decimal(achieved) << "\n";
  out << "empirical_correctness: " << decimal10(empirical) << " (" << correct << "/" << trials << " trials)\n";
  out << "\n k  exact_correctness  hoeffding_failure_bound\n";
  for (unsigned k = 1; k <= plan.k(); k += 2) {
    out << std::setw(3) << k << "  " << std::setw(17) << format_decimal(majority_correctness(spec.p(), k)) << "  "
        << decimal10(hoeffding_failure_estimate(to_double(spec.p()), k)) << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot write " + csv_path);
    csv << "k,achieved_correctness,achieved_decimal,hoeffding_failure_bound,empirical_correctness,trials\n";
    for (unsigned k = 1; k <= plan.k(); k += 2) {
      const Rational c = majority_correctness(spec.p(), k);
      csv << k << "," << to_string(c) << "," << format_decimal(c) << ","
          << decimal10(hoeffding_failure_estimate(to_double(spec.p()), k)) << ",";
      if (k == plan.k()) csv << decimal10(empirical) << "," << trials;
      else csv << ",";
      csv << "\n";
    }
    out << "wrote " << csv_path << "\n";
  }
  return kExitOk;
}

int cmd_halting(const BoundedHaltingSpec& spec, const std::string& program_file, const std::string& input_bits,
                std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  if (!program_file.empty()) {
    std::ifstream in(program_file);
    if (!in) throw ParseError(program_file, "cannot open file");
    std::stringstream text;
    text << in.rdbuf();
    const TinyProgram program = parse_program(text.str());
    const auto run = interpret(program, input_bits.empty() ? std::string("0") : input_bits, spec.step_bound);
    out << "program: " << program.size() << " instructions\n";
    out << "verdict: " << (run.status == HaltStatus::halted ? "halted" : "running") << " after " << run.steps
        << " steps (bound " << spec.step_bound << ")\n";
    return kExitOk;
  }

  const BooleanFunction f = bounded_halting_function(spec);
  const BipartiteBox box = make_fbox(f);
  const auto report = check_no_signalling(box);
  out << "program_bits: " << spec.program_bits << "\ninput_bits: " << spec.input_bits
      << "\nstep_bound: " << spec.step_bound << "\n";
  out << "no-signalling: " << (report.holds ? "OK" : "VIOLATED") << "\n";

  Rng rng(seed);
  std::uint64_t agree = 0, halting = 0;
  const std::uint64_t total = f.alice_inputs() * f.bob_inputs();
  for (std::uint64_t x = 0; x < f.alice_inputs(); ++x)
    for (std::uint64_t y = 0; y < f.bob_inputs(); ++y) {
      const bool halted =
          interpret(decode_program(x, spec.program_bits), y, spec.step_bound).status == HaltStatus::halted;
      auto transcript = run_fbox_protocol(f, x, y, rng);
      if (reconcile(transcript) == (halted ? 1 : 0)) ++agree;
      if (halted) ++halting;
    }
  out << "halting pairs: " << halting << "/" << total << "\n";
  out << "reconciled: " << agree << "/" << total << " pairs agree with the interpreter\n";
  if (!out_path.empty()) {
    write_box(out_path, box);
    out << "wrote " << out_path << "\n";
  }
  return report.holds && agree == total ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact no-signalling boxes, Bell games and PR-box protocols"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::uint64_t trials = 10000;
  std::string csv_path, side = "bob", out_path, p_text, eps_text = "1/1000", x_bits, y_bits;
  std::string file, strategy, program_file, input_bits;
  bool check = false;
  double tolerance = 1e-6;
  BoundedHaltingSpec halting_spec{100, 4, 2};

  auto* verify = app.add_subcommand("verify", "Check normalization and no-signalling of a box file");
  verify->add_option("box_file", file, "Box document (JSON)")->required();

  auto* game = app.add_subcommand("game", "Evaluate a Bell game under a strategy");
  game->add_option("game", file, "'chsh' or a game document")->required();
  game->add_option("strategy", strategy, "classical | quantum-builtin | pr | box:<file>")->required();
  game->add_option("--tolerance", tolerance, "Rationalization tolerance for quantum boxes");

  auto* fbox = app.add_subcommand("fbox", "Build the no-signalling box computing a function");
  fbox->add_option("function_file", file, "Truth-table file")->required();
  fbox->add_option("--p", p_text, "Correctness for a noisy box, e.g. 17/20");
  fbox->add_option("--out", out_path, "Write the box document here");

  auto* comp = app.add_subcommand("compile", "Compile a function into a PR-box protocol");
  comp->add_option("function_file", file, "Truth-table file")->required();
  comp->add_option("--side", side, "alice | bob | min")->check(CLI::IsMember({"alice", "bob", "min"}));
  comp->add_option("--out", out_path, "Write the protocol document here");
  comp->add_flag("--check", check, "Run the protocol on every input and compare with f");
  comp->add_option("--seed", seed, "Random seed");

  auto* run = app.add_subcommand("run", "Run a compiled protocol once and print its transcript");
  run->add_option("function_file", file, "Truth-table file")->required();
  run->add_option("--x", x_bits, "Alice's input bits")->required();
  run->add_option("--y", y_bits, "Bob's input bits")->required();
  run->add_option("--side", side, "alice | bob | min")->check(CLI::IsMember({"alice", "bob", "min"}));
  run->add_option("--seed", seed, "Random seed");

  auto* amp = app.add_subcommand("amplify", "Majority amplification of a noisy box");
  amp->add_option("function_file", file, "Truth-table file")->required();
  amp->add_option("--p", p_text, "Per-pair correctness, 1/2 < p < 1")->required();
  amp->add_option("--epsilon", eps_text, "Target failure probability");
  amp->add_option("--trials", trials, "Empirical trials");
  amp->add_option("--seed", seed, "Random seed");
  amp->add_option("--csv", csv_path, "Write a CSV table here");

  auto* halt = app.add_subcommand("halting", "Step-bounded halting predicate as a no-signalling box");
  halt->add_option("--program-bits", halting_spec.program_bits, "Program encoding width");
  halt->add_option("--input-bits", halting_spec.input_bits, "Input width");
  halt->add_option("--T,--steps", halting_spec.step_bound, "Step bound");
  halt->add_option("--program", program_file, "Interpret this program text instead");
  halt->add_option("--input", input_bits, "Input bits for --program");
  halt->add_option("--seed", seed, "Random seed");
  halt->add_option("--out", out_path, "Write the box document here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(file, out);
    if (game->parsed()) return cmd_game(file, strategy, tolerance, out);
    if (fbox->parsed()) return cmd_fbox(file, p_text, out_path, out);
    if (comp->parsed()) return cmd_compile(file, side, out_path, check, seed, out);
    if (run->parsed()) return cmd_run(file, x_bits, y_bits, side, seed, out);
    if (amp->parsed()) return cmd_amplify(file, p_text, eps_text, trials, seed, csv_path, out);
    if (halt->parsed()) return cmd_halting(halting_spec, program_file, input_bits, seed, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nsbox::cli
