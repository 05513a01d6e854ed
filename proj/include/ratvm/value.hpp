#pragma once

#include <gmpxx.h>

namespace ratvm {

// Accumulator contents and memory cells are exact signed integers of
// unbounded size. The factorial benchmark alone produces values with more
// than a thousand decimal digits; machine words would silently overflow.
using Value = mpz_class;

} // namespace ratvm
