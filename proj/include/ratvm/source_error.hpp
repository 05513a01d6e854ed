#pragma once

#include <cstddef>
#include <string>

namespace ratvm {

// Structured diagnostic attached to a line of input text. `line` is 1-based;
// 0 means the offending object was built in memory and has no source line.
struct SourceError {
  enum class Kind { parse_error, duplicate_label, undefined_target };

  Kind kind = Kind::parse_error;
  std::size_t line = 0;
  std::string detail;

  bool operator==(const SourceError&) const = default;
};

const char* to_string(SourceError::Kind kind);
std::string to_string(const SourceError& e);

} // namespace ratvm
