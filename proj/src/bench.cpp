#include "ratvm/bench.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "ratvm/interp_naive.hpp"
#include "ratvm/interp_threaded.hpp"
#include "ratvm/threaded.hpp"

namespace ratvm::bench {

namespace {

// Sources are kept byte-identical to the files under asm/; a test pins that.
const std::string kSquareSrc =
    R"(; square: acc_out = acc_in^2, by summing the first acc_in odd numbers
sto accum
load 1
sto factor
load 0
sto result
load accum
jez end
sto ind
loop: load result
add factor
sto result
load factor
add 2
sto factor
load ind
sub 1
sto ind
jnez loop
end: load result
)";

const std::string kFiboSrc =
    R"(; fibo: acc_out = fib(acc_in), with fib(1) = fib(2) = 1
jnez calculate
load 0
sto curr
jmp end
calculate: sto ind
load 0
sto prev
load 1
sto curr
start_loop: load ind
sub 1
sto ind
jez end
load curr
sto inter
add prev
sto curr
load inter
sto prev
jmp start_loop
end: load curr
)";

const std::string kFactorialSrc =
    R"(; factorial: acc_out = acc_in!, multiplication spelled as repeated addition
sto accum
load 1
sto res
load accum
sub 1
sto n
jez exit
o_loop: load res
sto add
load n
sto ind
jez dec_idx
i_loop: load res
add add
sto res
load ind
sub 1
sto ind
jnez i_loop
dec_idx: load n
sub 1
sto n
jnez o_loop
exit: load res
)";

double run_once_ms(const Program& p, Engine engine, const Value& input,
                   RunResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (engine == Engine::naive) {
    out = run_naive(p, input);
  } else {
    // Translation is inside the timed region: a one-shot query pays for it.
    ThreadedProgram tp = thread_program(p);
    out = run_threaded(tp, input);
  }
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

const char* to_string(Engine e) {
  return e == Engine::naive ? "naive" : "threaded";
}

std::string value_digest(const Value& v) {
  std::string digits = mpz_class(abs(v)).get_str();
  std::string out = sgn(v) < 0 ? "-" : "";
  out += std::to_string(digits.size());
  out += ':';
  if (digits.size() <= 16) {
    out += digits;
  } else {
    out += digits.substr(0, 8);
    out += "...";
    out += digits.substr(digits.size() - 8);
  }
  return out;
}

std::string csv_header() {
  return "program,engine,input,wall_time_ms,steps,scan_comparisons,digest";
}

std::string csv_row(const BenchRecord& r) {
  char ms[64];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_time_ms);
  std::string out = r.program;
  out += ',';
  out += to_string(r.engine);
  out += ',';
  out += r.input.get_str();
  out += ',';
  out += ms;
  out += ',';
  out += std::to_string(r.steps);
  out += ',';
  out += std::to_string(r.scan_comparisons);
  out += ',';
  out += r.digest;
  return out;
}

std::vector<SuiteEntry> paper_suite() {
  std::vector<SuiteEntry> suite;
  for (long n = 40000; n <= 65000; n += 5000) {
    suite.push_back({"square", n});
  }
  for (long n = 20000; n <= 35000; n += 5000) {
    suite.push_back({"fibo", n});
  }
  for (long n = 300; n <= 550; n += 50) {
    suite.push_back({"factorial", n});
  }
  return suite;
}

std::vector<SuiteEntry> quick_suite() {
  std::vector<SuiteEntry> suite = paper_suite();
  for (auto& entry : suite) {
    entry.input /= 10;
  }
  return suite;
}

const std::vector<std::string>& embedded_names() {
  static const std::vector<std::string> names{"square", "fibo", "factorial"};
  return names;
}

const std::string& embedded_source(const std::string& program) {
  if (program == "square") {
    return kSquareSrc;
  }
  if (program == "fibo") {
    return kFiboSrc;
  }
  if (program == "factorial") {
    return kFactorialSrc;
  }
  throw std::out_of_range("unknown benchmark program: " + program);
}

Program embedded_program(const std::string& program) {
  ParseResult parsed = parse_program(embedded_source(program));
  assert(parsed.ok());
  Program p = std::move(*parsed.program);
  p.name = program;
  return p;
}

namespace {

// One timed run appended to `times`; the first (warmup) run is untimed and
// fills the deterministic columns instead.
void sample(const Program& p, const std::string& name, const Value& input,
            bool warmup, BenchRecord& rec, std::vector<double>& times) {
  RunResult result;
  const double ms = run_once_ms(p, rec.engine, input, result);
  if (const auto* err = std::get_if<RuntimeError>(&result)) {
    throw std::logic_error("benchmark program '" + name + "' failed: " +
                           std::string(to_string(err->kind)) +
                           " at instruction " + std::to_string(err->at));
  }
  if (warmup) {
    const auto& out = std::get<MachineOutcome>(result);
    rec.steps = out.steps;
    rec.scan_comparisons = out.scan_comparisons;
    rec.digest = value_digest(out.acc_out);
  } else {
    times.push_back(ms);
  }
}

double median(std::vector<double>& times) {
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

BenchRecord make_record(const std::string& name, Engine engine,
                        const Value& input) {
  BenchRecord rec;
  rec.program = name;
  rec.engine = engine;
  rec.input = input;
  return rec;
}

} // namespace

BenchRecord measure(const Program& p, const std::string& name, Engine engine,
                    const Value& input, int repeats) {
  assert(repeats > 0);
  BenchRecord rec = make_record(name, engine, input);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  for (int i = 0; i <= repeats; ++i) {
    sample(p, name, input, i == 0, rec, times);
  }
  rec.wall_time_ms = median(times);
  return rec;
}

std::pair<BenchRecord, BenchRecord> measure_pair(const Program& p,
                                                 const std::string& name,
                                                 const Value& input,
                                                 int repeats) {
  assert(repeats > 0);
  BenchRecord naive = make_record(name, Engine::naive, input);
  BenchRecord threaded = make_record(name, Engine::threaded, input);
  std::vector<double> naive_times, threaded_times;
  naive_times.reserve(static_cast<std::size_t>(repeats));
  threaded_times.reserve(static_cast<std::size_t>(repeats));
  for (int i = 0; i <= repeats; ++i) {
    sample(p, name, input, i == 0, naive, naive_times);
    sample(p, name, input, i == 0, threaded, threaded_times);
  }
  naive.wall_time_ms = median(naive_times);
  threaded.wall_time_ms = median(threaded_times);
  return {std::move(naive), std::move(threaded)};
}

} // namespace ratvm::bench
