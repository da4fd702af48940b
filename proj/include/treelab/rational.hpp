#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

// Exact rational, always stored reduced with a positive denominator.
// No floating point anywhere in the workbench.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num) * b.den;
    __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;

  std::string str() const;
};

// Midpoint (a+b)/2.
Rational midpoint(const Rational& a, const Rational& b);

// Deterministic pick of a rational outside `avoid`, strictly inside
// `between` when given. With an interval, midpoints are tried in
// breadth-first bisection order starting from the full interval; with
// no interval, the integers 0, 1, -1, 2, -2, ... are tried in turn.
// Rationals are dense, so this always succeeds.
Rational fresh_rational(const std::vector<Rational>& avoid,
                        const std::optional<std::pair<Rational, Rational>>& between = std::nullopt);

}  // namespace treelab

template <>
struct std::hash<treelab::Rational> {
  std::size_t operator()(const treelab::Rational& r) const {
    return std::hash<long long>()(r.num) * 1000003u ^ std::hash<long long>()(r.den);
  }
};
