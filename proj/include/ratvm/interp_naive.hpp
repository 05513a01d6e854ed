#pragma once

#include <cstdint>
#include <optional>

#include "ratvm/machine.hpp"
#include "ratvm/program.hpp"

namespace ratvm {

// Executes a validated program directly. Every taken jump is resolved by a
// linear scan for the target label from the head of the program, so jumps
// cost O(program length). The scan is deliberately not memoized: this engine
// exists to exhibit that cost.
//
// Execution starts at the first instruction and halts when control passes
// the last one; there is no halt instruction. With no step limit a looping
// program runs forever.
RunResult run_naive(const Program& p, Value acc_in,
                    std::optional<std::uint64_t> step_limit = std::nullopt);

} // namespace ratvm
