#pragma once

#include <cstdint>
#include <optional>

#include "ratvm/machine.hpp"
#include "ratvm/threaded.hpp"

namespace ratvm {

// Executes a threaded program by chasing continuation references; every
// control transfer, jump or fall-through, is a single dereference. The step
// function never touches the original instruction sequence, so per-step work
// is independent of program length and scan_comparisons is always 0.
//
// `steps` counts executed nodes excluding End, which equals run_naive's
// count of executed instructions on the same program.
RunResult run_threaded(const ThreadedProgram& t, Value acc_in,
                       std::optional<std::uint64_t> step_limit = std::nullopt);

} // namespace ratvm
