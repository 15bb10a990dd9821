#ifndef HMZF_RATIONAL_HPP
#define HMZF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hmzf {

// Exact scalar of the symbolic side: unbounded numerator/denominator.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational parse_rational(const std::string& text) {
  try {
    Rational q(text);
    return q;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid rational: '" + text + "'");
  }
}

}  // namespace hmzf

#endif
