#include "treelab/util.hpp"

#include "treelab/type_vector.hpp"

namespace treelab {

std::string fnv1a_hex(const std::string& s) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

Outcome<TypeVector> TypeVector::parse(const std::string& s) {
  if (s.empty()) return Outcome<TypeVector>::failure("type: arity must be at least 1");
  TypeVector g;
  for (char c : s) {
    if (c != '0' && c != '1')
      return Outcome<TypeVector>::failure("type: expected a bitstring such as 101");
    g.bits.push_back(c == '1' ? 1 : 0);
  }
  return Outcome<TypeVector>::success(std::move(g));
}

}  // namespace treelab
