#include "treelab/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace treelab {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational midpoint(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
}

namespace {
bool contains(const std::vector<Rational>& v, const Rational& r) {
  for (const auto& x : v)
    if (x == r) return true;
  return false;
}
}  // namespace

Rational fresh_rational(const std::vector<Rational>& avoid,
                        const std::optional<std::pair<Rational, Rational>>& between) {
  if (!between) {
    // 0, 1, -1, 2, -2, ...
    for (long long k = 0;; ++k) {
      Rational cand(k);
      if (!contains(avoid, cand)) return cand;
      if (k > 0) {
        Rational neg(-k);
        if (!contains(avoid, neg)) return neg;
      }
    }
  }
  const auto& [lo, hi] = *between;
  if (!(lo < hi)) throw std::invalid_argument("fresh_rational: empty interval");
  // Breadth-first bisection: the interval midpoint, then the midpoints of
  // the two halves, and so on. The queue is processed left to right.
  std::vector<std::pair<Rational, Rational>> queue{{lo, hi}};
  for (std::size_t head = 0;; ++head) {
    auto [a, b] = queue[head];
    Rational m = midpoint(a, b);
    if (!contains(avoid, m)) return m;
    queue.emplace_back(a, m);
    queue.emplace_back(m, b);
  }
}

}  // namespace treelab
