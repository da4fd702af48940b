#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treelab/util.hpp"

namespace treelab {

// A comparability pattern g : n -> 2.
struct TypeVector {
  std::vector<std::uint8_t> bits;

  TypeVector() = default;
  explicit TypeVector(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  int arity() const { return static_cast<int>(bits.size()); }
  bool at(int i) const { return bits[static_cast<std::size_t>(i)] != 0; }

  friend bool operator==(const TypeVector&, const TypeVector&) = default;

  std::string str() const {
    std::string s;
    for (auto b : bits) s += b ? '1' : '0';
    return s;
  }

  // Parses a bitstring such as "101". Arity must be at least 1.
  static Outcome<TypeVector> parse(const std::string& s);
};

inline TypeVector complement(const TypeVector& g) {
  TypeVector out = g;
  for (auto& b : out.bits) b = b ? 0 : 1;
  return out;
}

}  // namespace treelab
