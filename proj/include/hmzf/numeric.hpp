#ifndef HMZF_NUMERIC_HPP
#define HMZF_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <stdexcept>
#include <vector>

#include "hmzf/rational.hpp"

namespace hmzf {

/// Compile-time working precision of the numeric side, in decimal digits.
/// Requested precisions are capped at kWorkingDigits - 5 (guard digits).
inline constexpr unsigned kWorkingDigits = 40;

using Complex = boost::multiprecision::cpp_complex<kWorkingDigits>;
using Real = Complex::value_type;

template <class C>
struct real_of {
  using type = typename C::value_type;
};
template <class T>
struct real_of<std::complex<T>> {
  using type = T;
};
template <class C>
using real_of_t = typename real_of<C>::type;

/// Integer power by squaring; negative exponents via one reciprocal.
template <class C>
C cpow_int(const C& base, long e) {
  if (e < 0) return C(1) / cpow_int(base, -e);
  C acc(1);
  C b = base;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

template <class R>
R to_real(const Rational& q) {
  return R(numerator(q)) / R(denominator(q));
}

template <class C>
C to_complex(const Rational& q) {
  return C(to_real<real_of_t<C>>(q));
}

inline Integer factorial_int(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Rising factorial x(x+1)...(x+count-1) over the rationals.
inline Rational rising_factorial(const Rational& x, int count) {
  Rational r = 1;
  for (int i = 0; i < count; ++i) r *= x + i;
  return r;
}

/// Exact Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2), cached.
/// Recurrence: sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline const Rational& bernoulli(int n) {
  static const int kMax = 128;
  static const std::vector<Rational> cache = [] {
    std::vector<Rational> b(kMax + 1);
    std::vector<std::vector<Integer>> choose(kMax + 2);
    for (int i = 0; i <= kMax + 1; ++i) {
      choose[i].resize(i + 1);
      choose[i][0] = choose[i][i] = 1;
      for (int j = 1; j < i; ++j) choose[i][j] = choose[i - 1][j - 1] + choose[i - 1][j];
    }
    b[0] = 1;
    for (int m = 1; m <= kMax; ++m) {
      Rational acc = 0;
      for (int j = 0; j < m; ++j) acc += Rational(choose[m + 1][j]) * b[j];
      b[m] = -acc / Rational(choose[m + 1][m]);
    }
    return b;
  }();
  if (n < 0 || n > kMax) throw std::out_of_range("bernoulli: index out of cached range");
  return cache[n];
}

}  // namespace hmzf

#endif
