#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>

#include "ratvm/value.hpp"

namespace ratvm {

// Runtime values are immutable and shared: moving a value between the
// accumulator and a cell copies a pointer, never the digits. Arithmetic
// allocates a fresh value. This mirrors a structure-sharing runtime, and it
// keeps `load`/`sto` O(1) regardless of how large the integers grow.
using SharedValue = std::shared_ptr<const Value>;

// Data memory: a mapping from cell names to integers. Cells spring into
// existence on first write; reading an unwritten cell is a lookup failure
// that the interpreters surface as UninitializedRead.
class Memory {
public:
  Memory() = default;

  // nullptr when the cell was never written.
  const Value* get(const std::string& name) const {
    auto it = cells_.find(name);
    return it == cells_.end() ? nullptr : it->second.get();
  }

  // The cell's shared handle; empty when the cell was never written.
  SharedValue share(const std::string& name) const {
    auto it = cells_.find(name);
    return it == cells_.end() ? SharedValue{} : it->second;
  }

  // Inserts or overwrites.
  void replace(const std::string& name, SharedValue v) {
    cells_.insert_or_assign(name, std::move(v));
  }
  void replace(const std::string& name, const Value& v) {
    replace(name, std::make_shared<Value>(v));
  }

  std::size_t size() const { return cells_.size(); }

private:
  std::unordered_map<std::string, SharedValue> cells_;
};

} // namespace ratvm
