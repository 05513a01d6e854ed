#pragma once

// Independent big-integer oracles for the three benchmark programs. These
// deliberately share no code with the interpreters: plain GMP arithmetic,
// one obvious loop each.

#include "ratvm/value.hpp"

namespace oracle {

inline ratvm::Value square(long n) {
  ratvm::Value v(n);
  return v * v;
}

inline ratvm::Value fib(long n) {
  // fib(0) = 0, fib(1) = 1
  ratvm::Value prev(0), curr(1);
  if (n <= 0) {
    return prev;
  }
  for (long i = 1; i < n; ++i) {
    ratvm::Value next = prev + curr;
    prev = curr;
    curr = next;
  }
  return curr;
}

inline ratvm::Value factorial(long n) {
  ratvm::Value product(1);
  for (long i = 2; i <= n; ++i) {
    product *= i;
  }
  return product;
}

} // namespace oracle
