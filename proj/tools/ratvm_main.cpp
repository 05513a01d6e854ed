// ratvm — dual-engine interpreter for the accumulator assembly language.
//
//   ratvm run <file> [--engine naive|threaded] [--acc N] [--step-limit N]
//   ratvm thread <file>
//   ratvm unify "<lhs> = <rhs>" [--mode herbrand|rational]
//   ratvm bench [--suite paper|quick] [--repeats N] [--csv PATH]
//
// Exit codes: 0 ok, 1 source/parse error, 2 runtime error, 3 unification
// failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ratvm/bench.hpp"
#include "ratvm/interp_naive.hpp"
#include "ratvm/interp_threaded.hpp"
#include "ratvm/program.hpp"
#include "ratvm/term.hpp"
#include "ratvm/threaded.hpp"

namespace {

using namespace ratvm;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Parses and validates; prints every diagnostic to stderr on failure.
std::optional<Program> load_program(const std::string& path) {
  std::optional<std::string> text = read_file(path);
  if (!text) {
    std::cerr << "cannot read " << path << '\n';
    return std::nullopt;
  }
  ParseResult parsed = parse_program(*text);
  if (!parsed.ok()) {
    for (const SourceError& e : parsed.errors) {
      std::cerr << path << ": " << to_string(e) << '\n';
    }
    return std::nullopt;
  }
  std::vector<SourceError> bad = validate(*parsed.program);
  if (!bad.empty()) {
    for (const SourceError& e : bad) {
      std::cerr << path << ": " << to_string(e) << '\n';
    }
    return std::nullopt;
  }
  parsed.program->name = path;
  return std::move(parsed.program);
}

std::optional<Value> parse_acc(const std::string& text) {
  std::string digits = text;
  if (!digits.empty() && digits.front() == '+') {
    digits.erase(digits.begin());
  }
  try {
    return Value(digits);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

int cmd_run(const std::string& file, const std::string& engine,
            const std::string& acc_text,
            std::optional<std::uint64_t> step_limit) {
  std::optional<Value> acc = parse_acc(acc_text);
  if (!acc) {
    std::cerr << "--acc expects a decimal integer, got '" << acc_text << "'\n";
    return 1;
  }
  std::optional<Program> p = load_program(file);
  if (!p) {
    return 1;
  }
  RunResult result;
  if (engine == "naive") {
    result = run_naive(*p, *acc, step_limit);
  } else {
    ThreadedProgram tp = thread_program(*p);
    result = run_threaded(tp, *acc, step_limit);
  }
  if (const auto* err = std::get_if<RuntimeError>(&result)) {
    std::cerr << file << ": " << to_string(err->kind) << " at instruction "
              << err->at;
    if (!err->detail.empty()) {
      std::cerr << " (" << err->detail << ")";
    }
    std::cerr << '\n';
    return 2;
  }
  std::cout << std::get<MachineOutcome>(result).acc_out.get_str() << '\n';
  return 0;
}

int cmd_thread(const std::string& file) {
  std::optional<Program> p = load_program(file);
  if (!p) {
    return 1;
  }
  std::cout << dump_threaded(thread_program(*p)) << '\n';
  return 0;
}

int cmd_unify(const std::string& equation, const std::string& mode) {
  TermGraph g;
  ParsedEquation eq = parse_term_equation(g, equation);
  if (!eq.ok()) {
    std::cerr << to_string(*eq.error) << '\n';
    return 1;
  }
  UnifyOutcome out = mode == "herbrand"
                         ? unify_herbrand(g, eq.lhs, eq.rhs, BindingStore{})
                         : unify_rational(g, eq.lhs, eq.rhs, BindingStore{});
  if (!out.ok()) {
    std::cout << to_string(out.reason) << '\n';
    return 3;
  }
  // One line per bound variable, in first-appearance order. Each line is
  // rendered independently, so anchor numbers restart at #1 per line.
  for (const auto& [name, node] : eq.variables) {
    if (!out.store->is_bound(node)) {
      continue;
    }
    std::cout << name << " = " << print_term(g, node, *out.store) << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& suite_name, int repeats,
              const std::string& csv_path) {
  const std::vector<bench::SuiteEntry> suite =
      suite_name == "paper" ? bench::paper_suite() : bench::quick_suite();
  std::ofstream csv(csv_path);
  if (!csv) {
    std::cerr << "cannot open " << csv_path << " for writing\n";
    return 1;
  }
  csv << bench::csv_header() << '\n';
  for (const bench::SuiteEntry& entry : suite) {
    const Program p = bench::embedded_program(entry.program);
    const Value input(entry.input);
    const auto [naive, threaded] =
        bench::measure_pair(p, entry.program, input, repeats);
    csv << bench::csv_row(naive) << '\n' << bench::csv_row(threaded) << '\n';
    char line[160];
    std::snprintf(line, sizeof line,
                  "%-9s input=%-6ld naive=%10.3f ms  threaded=%10.3f ms  "
                  "speedup=%.2f",
                  entry.program.c_str(), entry.input, naive.wall_time_ms,
                  threaded.wall_time_ms,
                  naive.wall_time_ms / threaded.wall_time_ms);
    std::cout << line << std::endl; // flush per row: long cells, live output
  }
  std::cout << "wrote " << csv_path << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-engine interpreter for an accumulator assembly language"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a program file");
  std::string run_file;
  std::string run_engine = "threaded";
  std::string run_acc = "0";
  std::uint64_t run_limit = 0;
  run->add_option("file", run_file, "program file")->required();
  run->add_option("--engine", run_engine, "execution engine")
      ->check(CLI::IsMember({"naive", "threaded"}))
      ->capture_default_str();
  run->add_option("--acc", run_acc,
                  "initial accumulator (decimal, any precision)")
      ->capture_default_str();
  auto* limit_opt =
      run->add_option("--step-limit", run_limit, "abort after N instructions");

  auto* thread = app.add_subcommand("thread", "print a program's threaded form");
  std::string thread_file;
  thread->add_option("file", thread_file, "program file")->required();

  auto* unify = app.add_subcommand("unify", "solve one term equation");
  std::string unify_eq;
  std::string unify_mode = "rational";
  unify->add_option("equation", unify_eq, "equation, e.g. \"f(X) = f(a)\"")
      ->required();
  unify->add_option("--mode", unify_mode, "occurs-check (herbrand) or not")
      ->check(CLI::IsMember({"herbrand", "rational"}))
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark grid");
  std::string suite = "paper";
  int repeats = 5;
  std::string csv_path = "bench.csv";
  bench_cmd->add_option("--suite", suite, "input grid")
      ->check(CLI::IsMember({"paper", "quick"}))
      ->capture_default_str();
  bench_cmd->add_option("--repeats", repeats, "timed runs per cell (median)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "output CSV path")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    std::optional<std::uint64_t> limit;
    if (limit_opt->count() > 0) {
      limit = run_limit;
    }
    return cmd_run(run_file, run_engine, run_acc, limit);
  }
  if (*thread) {
    return cmd_thread(thread_file);
  }
  if (*unify) {
    return cmd_unify(unify_eq, unify_mode);
  }
  return cmd_bench(suite, repeats, csv_path);
}
