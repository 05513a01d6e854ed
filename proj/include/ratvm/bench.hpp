#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ratvm/program.hpp"
#include "ratvm/value.hpp"

namespace ratvm::bench {

enum class Engine { naive, threaded };

const char* to_string(Engine e);

// One measurement row. Counters and the digest are deterministic; only
// wall_time_ms varies between runs.
struct BenchRecord {
  std::string program;
  Engine engine = Engine::naive;
  Value input;
  double wall_time_ms = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t scan_comparisons = 0;
  std::string digest;
};

// Compact fingerprint of a result value: decimal digit count, then the
// first/last 8 digits for anything longer than 16 digits. Negative values
// get a leading '-'.
std::string value_digest(const Value& v);

std::string csv_header();
std::string csv_row(const BenchRecord& r);

struct SuiteEntry {
  std::string program;
  long input;
};

// Full-size grid (`--suite paper`): square over 40000..65000, Fibonacci
// over 20000..35000, factorial over 300..550.
std::vector<SuiteEntry> paper_suite();
// Same shape with inputs scaled down 10x (`--suite quick`), for CI.
std::vector<SuiteEntry> quick_suite();

// Benchmark program sources, byte-identical to the files under asm/.
const std::vector<std::string>& embedded_names();
const std::string& embedded_source(const std::string& program);
Program embedded_program(const std::string& program);

// Runs one (program, input, engine) cell `repeats` times and reports the
// median wall time. The threaded engine's timed region includes the
// threading pass, so a measurement covers the full cost of a one-shot
// query. The program must halt; counters and digest come from an untimed
// warmup run.
BenchRecord measure(const Program& p, const std::string& name, Engine engine,
                    const Value& input, int repeats);

// Measures both engines on one cell with the repeats interleaved
// (naive, threaded, naive, threaded, ...) so a load swing on the host hits
// both engines alike instead of skewing their ratio. Reports the per-engine
// medians; same warmup and timed-region rules as measure().
std::pair<BenchRecord, BenchRecord> measure_pair(const Program& p,
                                                 const std::string& name,
                                                 const Value& input,
                                                 int repeats);

} // namespace ratvm::bench
