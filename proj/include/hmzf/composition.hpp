#ifndef HMZF_COMPOSITION_HPP
#define HMZF_COMPOSITION_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hmzf {

/// A composition (s_1, ..., s_r): a finite sequence of integers >= 1.
/// The empty composition is a valid value and denotes the algebra unit.
/// Compositions index Hurwitz multizeta functions, monomial quasi-symmetric
/// functions, and words over the alphabet {y_1, y_2, ...} (letter = part).
class Composition {
 public:
  Composition() = default;

  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p < 1) throw std::invalid_argument("composition part must be >= 1");
    }
  }

  Composition(std::initializer_list<int> parts)
      : Composition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  int weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
  }
  int depth() const { return static_cast<int>(parts_.size()); }
  int degree() const { return weight() - depth(); }

  /// True iff empty or the first part is >= 2. The first part controls
  /// convergence of the defining series; the empty composition counts as
  /// convergent (its function is the constant 1).
  bool convergent() const { return parts_.empty() || parts_.front() >= 2; }

  int front() const { return parts_.front(); }
  int back() const { return parts_.back(); }

  /// Prefix (s_1, ..., s_r-1): the composition with the LAST part removed.
  Composition drop_last() const {
    if (parts_.empty()) throw std::invalid_argument("drop_last on empty composition");
    return Composition(std::vector<int>(parts_.begin(), parts_.end() - 1));
  }

  Composition prepend(int letter) const {
    std::vector<int> p;
    p.reserve(parts_.size() + 1);
    p.push_back(letter);
    p.insert(p.end(), parts_.begin(), parts_.end());
    return Composition(std::move(p));
  }

  /// Canonical text form: comma-separated parts; empty string for the empty
  /// composition.
  std::string str() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  bool operator==(const Composition& o) const { return parts_ == o.parts_; }

  /// Canonical total order: depth ascending, then lexicographic on parts.
  bool operator<(const Composition& o) const {
    if (parts_.size() != o.parts_.size()) return parts_.size() < o.parts_.size();
    return parts_ < o.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// Word order on compositions-as-words: plain lexicographic on letters, a
/// proper prefix preceding its extensions. Distinct from the canonical
/// composition order above; this is the order in which Lyndon words live.
inline bool lex_less(const Composition& a, const Composition& b) {
  return std::lexicographical_compare(a.parts().begin(), a.parts().end(),
                                      b.parts().begin(), b.parts().end());
}

struct Measures {
  int weight = 0;
  int depth = 0;
  int degree = 0;
  bool operator==(const Measures&) const = default;
};

inline Measures measures(const Composition& c) {
  return Measures{c.weight(), c.depth(), c.degree()};
}

inline bool is_convergent(const Composition& c) { return c.convergent(); }

/// Parses the canonical text form. Empty (or all-blank) input denotes the
/// empty composition. Errors name the offending token.
inline Composition parse_composition(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  if (trim(text).empty()) return Composition();

  std::vector<int> parts;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string_view token = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::string_view t = trim(token);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec == std::errc::result_out_of_range)
      throw std::invalid_argument("composition part overflows: '" + std::string(token) + "'");
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
      throw std::invalid_argument("invalid composition part: '" + std::string(token) + "'");
    if (value < 1)
      throw std::invalid_argument("composition part must be >= 1: '" + std::string(token) + "'");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Composition(std::move(parts));
}

/// All compositions of the given weight in the canonical order (depth
/// ascending, then lexicographic); optionally only the convergent ones.
inline std::vector<Composition> enumerate_compositions(int weight,
                                                       bool convergent_only) {
  if (weight < 0) throw std::invalid_argument("weight must be >= 0");
  std::vector<Composition> out;
  if (weight == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = 1; p <= remaining; ++p) {
      current.push_back(p);
      self(self, remaining - p);
      current.pop_back();
    }
  };
  rec(rec, weight);
  if (convergent_only) {
    std::erase_if(out, [](const Composition& c) { return !c.convergent(); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hmzf

#endif
