#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

// Result-or-errors carrier used by every operation with a nontrivial
// precondition. Failures carry one message per violated clause.
template <class T>
class Outcome {
public:
  static Outcome success(T value) {
    Outcome o;
    o.value_ = std::move(value);
    return o;
  }
  static Outcome failure(std::vector<std::string> errors) {
    Outcome o;
    o.errors_ = std::move(errors);
    return o;
  }
  static Outcome failure(std::string error) {
    Outcome o;
    o.errors_.push_back(std::move(error));
    return o;
  }

  explicit operator bool() const { return value_.has_value(); }
  bool ok() const { return value_.has_value(); }

  const T& operator*() const { return *value_; }
  const T* operator->() const { return &*value_; }
  T& operator*() { return *value_; }

  const std::vector<std::string>& errors() const { return errors_; }

  std::string error_text() const {
    std::string out;
    for (const auto& e : errors_) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }

private:
  std::optional<T> value_;
  std::vector<std::string> errors_;
};

inline std::uint64_t fnv1a(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

std::string fnv1a_hex(const std::string& s);

}  // namespace treelab
