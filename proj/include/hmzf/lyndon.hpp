#ifndef HMZF_LYNDON_HPP
#define HMZF_LYNDON_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hmzf/composition.hpp"

namespace hmzf {

/// Chen-Fox-Lyndon factorization by Duval's algorithm: the unique
/// factorization of a nonempty word into a lexicographically non-increasing
/// sequence of Lyndon words. Letters are composition parts with numeric
/// order y_1 < y_2 < ...
inline std::vector<Composition> cfl_factorize(const Composition& w) {
  if (w.empty()) throw std::invalid_argument("cfl_factorize: empty word");
  const std::vector<int>& s = w.parts();
  const size_t n = s.size();
  std::vector<Composition> factors;
  size_t i = 0;
  while (i < n) {
    size_t j = i + 1, k = i;
    while (j < n && s[k] <= s[j]) {
      if (s[k] < s[j]) {
        k = i;
      } else {
        ++k;
      }
      ++j;
    }
    while (i <= k) {
      factors.emplace_back(std::vector<int>(s.begin() + i, s.begin() + i + (j - k)));
      i += j - k;
    }
  }
  return factors;
}

/// True iff w is nonempty and strictly smaller than all its proper rotations.
inline bool is_lyndon(const Composition& w) {
  if (w.empty()) return false;
  std::vector<Composition> f = cfl_factorize(w);
  return f.size() == 1;
}

/// All Lyndon words of weight (= letter sum) 1..max_weight. Entry [n] of the
/// result holds the weight-n group sorted in word order; entry [0] is empty.
inline std::vector<std::vector<Composition>> generate_lyndon(int max_weight) {
  if (max_weight < 1) throw std::invalid_argument("generate_lyndon: max_weight must be >= 1");
  std::vector<std::vector<Composition>> groups(max_weight + 1);
  for (int n = 1; n <= max_weight; ++n) {
    for (const Composition& c : enumerate_compositions(n, false)) {
      if (is_lyndon(c)) groups[n].push_back(c);
    }
    std::sort(groups[n].begin(), groups[n].end(), lex_less);
  }
  return groups;
}

/// Number of Lyndon words of weight n over {y_1, y_2, ...}: the necklace
/// count (1/n) * sum_{d|n} mu(d) * (2^{n/d} - 1). Compositions of weight m
/// number 2^{m-1}, whence the 2^{n/d} - 1.
inline std::int64_t count_lyndon(int weight) {
  if (weight < 1) throw std::invalid_argument("count_lyndon: weight must be >= 1");
  auto moebius = [](int m) {
    int mu = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        mu = -mu;
      }
    }
    if (m > 1) mu = -mu;
    return mu;
  };
  std::int64_t total = 0;
  for (int d = 1; d <= weight; ++d) {
    if (weight % d) continue;
    int mu = moebius(d);
    if (mu == 0) continue;
    total += mu * ((std::int64_t{1} << (weight / d)) - 1);
  }
  return total / weight;
}

}  // namespace hmzf

#endif
