#ifndef HMZF_STUFFLE_HPP
#define HMZF_STUFFLE_HPP

#include <map>
#include <mutex>
#include <span>
#include <utility>

#include "hmzf/composition.hpp"
#include "hmzf/formal_sum.hpp"

namespace hmzf {

namespace detail {

// Three-term quasi-shuffle recursion on suffix views:
//   empty * w = w * empty = w
//   (x.u) * (y.v) = x.(u * (y.v)) + y.((x.u) * v) + (x+y).(u * v)
inline FormalSum stuffle_rec(std::span<const int> a, std::span<const int> b) {
  if (a.empty()) {
    return FormalSum::single(Composition(std::vector<int>(b.begin(), b.end())), 1);
  }
  if (b.empty()) {
    return FormalSum::single(Composition(std::vector<int>(a.begin(), a.end())), 1);
  }
  auto prepend_all = [](int letter, const FormalSum& s) {
    FormalSum out;
    for (const auto& [c, q] : s) out.add(c.prepend(letter), q);
    return out;
  };
  FormalSum out = prepend_all(a[0], stuffle_rec(a.subspan(1), b));
  out += prepend_all(b[0], stuffle_rec(a, b.subspan(1)));
  out += prepend_all(a[0] + b[0], stuffle_rec(a.subspan(1), b.subspan(1)));
  return out;
}

}  // namespace detail

/// Stuffle (quasi-shuffle) product of two basis elements, fully expanded in
/// the monomial basis. Coefficients are positive integers; every term has
/// weight weight(a)+weight(b). Results are memoized per ordered operand pair;
/// the cache is invisible to callers and safe under concurrent use.
inline FormalSum stuffle(const Composition& a, const Composition& b) {
  static std::map<std::pair<Composition, Composition>, FormalSum> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
  }
  FormalSum result = detail::stuffle_rec(a.parts(), b.parts());
  {
    std::lock_guard lock(cache_mutex);
    cache.emplace(std::make_pair(a, b), result);
  }
  return result;
}

/// Bilinear extension: sum over term pairs of A[a]*B[b]*stuffle(a,b).
inline FormalSum stuffle_bilinear(const FormalSum& A, const FormalSum& B) {
  FormalSum out;
  for (const auto& [a, qa] : A) {
    for (const auto& [b, qb] : B) {
      out = sum_combine(out, stuffle(a, b), qa * qb);
    }
  }
  return out;
}

/// k-fold stuffle power; the 0th power is the unit.
inline FormalSum stuffle_power(const Composition& a, int k) {
  if (k < 0) throw std::invalid_argument("stuffle_power: exponent must be >= 0");
  FormalSum acc = FormalSum::unit();
  for (int i = 0; i < k; ++i) acc = stuffle_bilinear(acc, FormalSum::single(a, 1));
  return acc;
}

/// Expands a monomial in basis elements: the stuffle product of every key
/// raised to its exponent. Commutativity/associativity of the product makes
/// the result independent of key iteration order.
inline FormalSum expand_monomial(const std::map<Composition, int>& exponents) {
  FormalSum acc = FormalSum::unit();
  for (const auto& [c, e] : exponents) {
    if (e < 1) throw std::invalid_argument("expand_monomial: exponent must be >= 1");
    acc = stuffle_bilinear(acc, stuffle_power(c, e));
  }
  return acc;
}

}  // namespace hmzf

#endif
