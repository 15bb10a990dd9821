#ifndef HMZF_FORMAL_SUM_HPP
#define HMZF_FORMAL_SUM_HPP

#include <map>
#include <string>
#include <utility>

#include "hmzf/composition.hpp"
#include "hmzf/rational.hpp"

namespace hmzf {

/// Finite Q-linear combination of compositions (the monomial basis).
/// Always normalized: a zero coefficient is never stored. Arithmetic is
/// exact throughout; terms iterate in the canonical composition order.
class FormalSum {
 public:
  using TermMap = std::map<Composition, Rational>;
  using const_iterator = TermMap::const_iterator;

  FormalSum() = default;

  static FormalSum unit() { return single(Composition(), 1); }

  static FormalSum single(const Composition& c, Rational coeff) {
    FormalSum s;
    s.add(c, std::move(coeff));
    return s;
  }

  void add(const Composition& c, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(c, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(const Composition& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [c, q] : o.terms_) add(c, q);
    return *this;
  }

  FormalSum& operator*=(const Rational& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [c, v] : terms_) v *= q;
    return *this;
  }

  bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

  /// Human-readable rendering, e.g. "(2,3) + 2*(2,2) + 1/2*()".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [c, q] : terms_) {
      if (!out.empty()) out += " + ";
      if (q != 1) out += rational_str(q) + "*";
      out += "(" + c.str() + ")";
    }
    return out;
  }

 private:
  TermMap terms_;
};

/// a + scalar*b, normalized.
inline FormalSum sum_combine(const FormalSum& a, const FormalSum& b,
                             const Rational& scalar) {
  FormalSum out = a;
  for (const auto& [c, q] : b) out.add(c, scalar * q);
  return out;
}

}  // namespace hmzf

#endif
