#ifndef HMZF_HURWITZ_HPP
#define HMZF_HURWITZ_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hmzf/composition.hpp"
#include "hmzf/graded.hpp"
#include "hmzf/numeric.hpp"
#include "hmzf/rational.hpp"

namespace hmzf {

/// Summation parameters that produced a value; they pin the value down
/// exactly (the algorithm is deterministic given these plus the request).
struct EvalParams {
  int truncation = 0;       // largest direct-summation shift used
  int em_order = 0;         // largest Euler-Maclaurin order 2K used
  unsigned precision = 0;   // working decimal digits requested
  bool certified = false;   // certified remainder bound (depth <= 1) vs heuristic
  int refinements = 0;      // refinement rounds in the double-check protocol
};

struct EvalResult {
  Complex value;
  Real error_bound;
  EvalParams params;
};

struct EvalRequest {
  Composition composition;
  Complex z;
  Real tolerance = Real("1e-12");
  unsigned precision = 28;
};

inline constexpr unsigned kMaxRequestDigits = kWorkingDigits - 5;

namespace detail {

template <class C>
real_of_t<C> round_floor() {
  // Roundoff slack for accumulated sums at working precision.
  return pow(real_of_t<C>(10), -static_cast<int>(kWorkingDigits) + 3);
}

/// True when x is within 1e-15 of some integer <= limit (limit = 0 for the
/// Hurwitz-zeta pole set, -1 for the shifted multizeta pole set).
template <class C>
bool near_nonpositive_integer(const C& x, int limit) {
  using R = real_of_t<C>;
  R re = x.real(), im = x.imag();
  if (abs(im) > R("1e-15")) return false;
  if (re > R(limit) + R("0.5")) return false;
  R nearest = round(re);
  return abs(re - nearest) < R("1e-15");
}

template <class C>
struct ZetaOutcome {
  C value;
  real_of_t<C> bound;  // certified remainder bound
  int shift = 0;
  int em_order = 0;
};

/// Hurwitz zeta sum_{n>=0} (n+a)^{-s} for integer s >= 2 by direct summation
/// to a shift point plus the Euler-Maclaurin tail. The remainder after the
/// B_{2K} term is bounded by
///   |B_{2K+2}/(2K+2)!| * (s)_{2K+2} * (N+Re a)^{-s-2K-1} / (s+2K+1),
/// valid whenever N + Re(a) > 0 (|x+a| >= x + Re a along the tail ray).
template <class C>
ZetaOutcome<C> zeta_core(int s, const C& a, const real_of_t<C>& eps) {
  using R = real_of_t<C>;
  if (s < 2) throw std::invalid_argument("hurwitz zeta: exponent must be >= 2");
  constexpr int kMaxEm = 60;

  int n_shift = std::max(0, static_cast<int>(std::ceil(12 - static_cast<double>(a.real()))));
  for (int attempt = 0;; ++attempt) {
    C big_a = a + C(n_shift);
    R re_big = big_a.real();
    if (re_big > R(1)) {
      C direct(0);
      for (int n = 0; n < n_shift; ++n) direct += cpow_int(a + C(n), -s);
      C tail = cpow_int(big_a, 1 - s) / C(s - 1) + cpow_int(big_a, -s) / C(2);
      C inv_sq = C(1) / (big_a * big_a);
      C power = cpow_int(big_a, 1 - s - 2);  // A^{1-s-2k} at k = 1
      R prev_term(0);
      bool first = true;
      int k = 1;
      R bound(0);
      for (; k <= kMaxEm; ++k) {
        Rational coef =
            bernoulli(2 * k) * rising_factorial(Rational(s), 2 * k - 1) /
            Rational(factorial_int(2 * k));
        C term = to_complex<C>(coef) * power;
        R mag = abs(term);
        // certified bound for stopping after the B_{2k} term just added
        Rational bc = abs(bernoulli(2 * k + 2)) * rising_factorial(Rational(s), 2 * k + 2) /
                      (Rational(factorial_int(2 * k + 2)) * Rational(s + 2 * k + 1));
        R cert = to_real<R>(bc) * pow(re_big, R(-s - 2 * k - 1));
        if (!first && mag > prev_term) {
          // divergence onset; the bound from the previous step stands
          break;
        }
        tail += term;
        bound = cert;
        prev_term = mag;
        first = false;
        power *= inv_sq;
        if (bound <= eps) break;
      }
      if (bound <= eps || attempt >= 24) {
        ZetaOutcome<C> out;
        out.value = direct + tail;
        out.bound = bound + round_floor<C>() * (R(2) + R(n_shift));
        out.shift = n_shift;
        out.em_order = 2 * std::min(k, kMaxEm);
        return out;
      }
    }
    n_shift += std::max(8, n_shift / 2);
  }
}

/// Coefficients d_m with zeta(t, w+1) ~ sum_m d_m * w^{-(t-1+m)} as w -> oo:
/// d_0 = 1/(t-1), d_1 = -1/2, d_{2k} = B_{2k} (t)_{2k-1} / (2k)!, odd m zero.
inline std::vector<Rational> shifted_zeta_series(int t, int order) {
  std::vector<Rational> d(order + 1, Rational(0));
  d[0] = Rational(1, t - 1);
  if (order >= 1) d[1] = Rational(-1, 2);
  for (int k = 1; 2 * k <= order; ++k) {
    d[2 * k] = bernoulli(2 * k) * rising_factorial(Rational(t), 2 * k - 1) /
               Rational(factorial_int(2 * k));
  }
  return d;
}

}  // namespace detail

/// Exact rational asymptotic expansions of every prefix of a convergent
/// composition: He^{s_1..s_j}(w) ~ sum_k coeff[j][k] * w^{-(alpha_j + k)}
/// with alpha_j = s_1+...+s_j - j. Built once per composition by composing
/// shifted Hurwitz-zeta expansions through the peeling identity
///   He^{s_1..s_j}(w) = sum_{n>=1} (n+w)^{-s_j} He^{s_1..s_{j-1}}(w+n).
class PrefixExpansion {
 public:
  PrefixExpansion(const Composition& c, int order) : order_(order) {
    if (c.empty() || !c.convergent())
      throw std::invalid_argument("PrefixExpansion: composition must be convergent and nonempty");
    const auto& parts = c.parts();
    alpha_.resize(parts.size() + 1, 0);
    coeff_.resize(parts.size() + 1);
    alpha_[1] = parts[0] - 1;
    coeff_[1] = detail::shifted_zeta_series(parts[0], order);
    for (size_t j = 2; j <= parts.size(); ++j) {
      int s = parts[j - 1];
      alpha_[j] = alpha_[j - 1] + s - 1;
      coeff_[j].assign(order + 1, Rational(0));
      for (int k = 0; k <= order; ++k) {
        if (coeff_[j - 1][k] == 0) continue;
        std::vector<Rational> d = detail::shifted_zeta_series(s + alpha_[j - 1] + k, order - k);
        for (int m = 0; m + k <= order; ++m) {
          if (d[m] != 0) coeff_[j][k + m] += coeff_[j - 1][k] * d[m];
        }
      }
    }
  }

  int order() const { return order_; }
  int alpha(int depth) const { return alpha_[depth]; }
  const std::vector<Rational>& coefficients(int depth) const { return coeff_[depth]; }

 private:
  int order_;
  std::vector<int> alpha_;
  std::vector<std::vector<Rational>> coeff_;
};

namespace detail {

/// Depth-recursive evaluator for one convergent composition. All evaluation
/// points reached by the recursion are z + (integer shift); values are
/// memoized per (depth, shift). Two regions per depth: |w| >= radius uses
/// the truncated asymptotic power series, otherwise direct summation up to
/// the radius plus a tail of shifted Hurwitz zetas with the prefix
/// coefficients.
template <class C>
class MultizetaKernel {
 public:
  using R = real_of_t<C>;

  MultizetaKernel(const Composition& c, int order)
      : comp_(c), expansion_(c, order), order_(order) {
    const int depth = comp_.depth();
    coeff_real_.resize(depth + 1);
    for (int j = 1; j <= depth; ++j) {
      const auto& qs = expansion_.coefficients(j);
      coeff_real_[j].reserve(qs.size());
      for (const Rational& q : qs) coeff_real_[j].push_back(to_complex<C>(q));
    }
  }

  struct Outcome {
    C value;
    R bound;       // accumulated first-order error estimate
    int max_shift = 0;
    int em_order = 0;
  };

  /// eps is the internal working target; radius_bump enlarges the series
  /// radii (the refinement knob).
  Outcome evaluate(const C& z, const R& eps, int radius_bump) {
    z_ = z;
    eps_atom_ = std::max(eps / R(256), round_floor<C>());
    pick_radii(eps, radius_bump);
    memo_.clear();
    stats_ = Outcome{};
    auto [value, bound] = compute(comp_.depth(), 0);
    stats_.value = value;
    stats_.bound = bound;
    return stats_;
  }

 private:
  static constexpr int kRadiusLadder[7] = {16, 20, 26, 34, 44, 56, 72};

  void pick_radii(const R& eps, int bump) {
    const int depth = comp_.depth();
    radius_.assign(depth + 1, 0);
    for (int j = 2; j <= depth; ++j) {
      int pick = std::size(kRadiusLadder) - 1;
      for (int i = 0; i < static_cast<int>(std::size(kRadiusLadder)); ++i) {
        if (series_floor(j, kRadiusLadder[i]) * R(8) <= eps) {
          pick = i;
          break;
        }
      }
      pick = std::min<int>(pick + bump, std::size(kRadiusLadder) - 1);
      radius_[j] = kRadiusLadder[pick];
    }
  }

  /// Smallest achievable magnitude of the truncated asymptotic series at
  /// |w| = radius: min_k |c_k| radius^{-(alpha+k)} (the divergent-series
  /// accuracy floor).
  R series_floor(int j, int radius) const {
    R best(0);
    R rad(radius);
    R p = pow(rad, -expansion_.alpha(j));
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
      R mag = abs(coeff_real_[j][k]) * p;
      if (mag != R(0) && (first || mag < best)) {
        best = mag;
        first = false;
      }
      p /= rad;
    }
    return best;
  }

  std::pair<C, R> compute(int j, int m) {
    auto key = std::make_pair(j, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    C w = z_ + C(m);
    std::pair<C, R> out;
    if (j == 1) {
      ZetaOutcome<C> zr = zeta_core(comp_.parts()[0], w + C(1), eps_atom_);
      stats_.max_shift = std::max(stats_.max_shift, m + zr.shift);
      stats_.em_order = std::max(stats_.em_order, zr.em_order);
      out = {zr.value, zr.bound};
    } else if (abs(w) >= R(radius_[j])) {
      out = series_eval(j, w);
    } else {
      out = direct_eval(j, m, w);
    }
    memo_.emplace(key, out);
    return out;
  }

  std::pair<C, R> series_eval(int j, const C& w) {
    C inv = C(1) / w;
    C p = cpow_int(inv, expansion_.alpha(j));
    C total(0);
    R prev(0);
    bool first = true;
    R trunc(0);
    for (int k = 0; k <= order_; ++k) {
      C term = coeff_real_[j][k] * p;
      R mag = abs(term);
      if (mag != R(0)) {
        if (!first && mag > prev) break;  // divergence onset
        total += term;
        trunc = mag;
        prev = mag;
        first = false;
      }
      p *= inv;
    }
    return {total, trunc * R(4) + round_floor<C>()};
  }

  std::pair<C, R> direct_eval(int j, int m, const C& w) {
    const int s = comp_.parts()[j - 1];
    int n_cut = std::max(
        1, static_cast<int>(std::ceil(radius_[j] - static_cast<double>(w.real()))));
    stats_.max_shift = std::max(stats_.max_shift, m + n_cut);
    C total(0);
    R bound(0);
    for (int n = 1; n <= n_cut; ++n) {
      auto [inner, inner_bound] = compute(j - 1, m + n);
      C factor = cpow_int(w + C(n), -s);
      total += factor * inner;
      bound += abs(factor) * inner_bound;
    }
    // tail: He-prefix replaced by its expansion, summed to shifted zetas
    const auto& pre = coeff_real_[j - 1];
    const int alpha_pre = expansion_.alpha(j - 1);
    C shifted = w + C(n_cut + 1);
    R tail_floor(0);
    for (int k = 0; k <= order_; ++k) {
      if (pre[k] == C(0)) continue;
      ZetaOutcome<C> zr = zeta_core(s + alpha_pre + k, shifted, eps_atom_);
      stats_.em_order = std::max(stats_.em_order, zr.em_order);
      C term = pre[k] * zr.value;
      total += term;
      bound += abs(pre[k]) * zr.bound;
      tail_floor = abs(term);
      if (tail_floor < eps_atom_ / R(4) && k >= 4) break;
    }
    bound += tail_floor + round_floor<C>() * R(n_cut + 2);
    return {total, bound};
  }

  Composition comp_;
  PrefixExpansion expansion_;
  int order_;
  std::vector<std::vector<C>> coeff_real_;
  std::vector<int> radius_;
  C z_;
  R eps_atom_;
  std::map<std::pair<int, int>, std::pair<C, R>> memo_;
  Outcome stats_;
};

inline void validate_request(const EvalRequest& req) {
  if (req.precision < 6 || req.precision > kMaxRequestDigits)
    throw std::invalid_argument("precision must be between 6 and " +
                                std::to_string(kMaxRequestDigits) + " digits");
  Real min_tol = pow(Real(10), -static_cast<int>(req.precision - 5));
  if (req.tolerance < min_tol)
    throw std::invalid_argument("tolerance below 10^-(precision-5) guard floor");
  if (req.tolerance <= Real(0)) throw std::invalid_argument("tolerance must be positive");
}

}  // namespace detail

/// Hurwitz zeta zeta(s, a) = sum_{n>=0} (n+a)^{-s}, integer s >= 2, with a
/// certified error bound. The depth-1 multizeta is He^s(z) = zeta(s, z+1).
inline EvalResult hurwitz_zeta(int s, const Complex& a, unsigned precision = 28) {
  if (s < 2) throw std::invalid_argument("hurwitz_zeta: s must be >= 2");
  if (precision < 6 || precision > kMaxRequestDigits)
    throw std::invalid_argument("hurwitz_zeta: precision out of range");
  if (detail::near_nonpositive_integer(a, 0))
    throw std::domain_error("hurwitz_zeta: a lies on the pole set {0,-1,-2,...}");
  Real eps = pow(Real(10), -static_cast<int>(precision));
  auto zr = detail::zeta_core(s, a, eps);
  EvalResult out;
  out.value = zr.value;
  out.error_bound = zr.bound;
  out.params = {zr.shift, zr.em_order, precision, true, 0};
  return out;
}

/// He^{s_1..s_r}(z) within req.tolerance. Depth 1 carries a certified bound;
/// deeper evaluations run the refinement double-check protocol (two
/// successive radius refinements must agree within tolerance/4) and report a
/// heuristic bound. The empty composition evaluates to exactly 1.
inline EvalResult eval_hmzf(const EvalRequest& req) {
  detail::validate_request(req);
  const Composition& c = req.composition;
  if (c.empty()) {
    return {Complex(1), Real(0), {0, 0, req.precision, true, 0}};
  }
  if (!c.convergent())
    throw std::invalid_argument("divergent series: first part must be >= 2");
  if (detail::near_nonpositive_integer(req.z, -1))
    throw std::domain_error("evaluation point lies on the pole set {-1,-2,...}");

  if (c.depth() == 1) {
    Real eps = std::min(req.tolerance / Real(4),
                        pow(Real(10), -static_cast<int>(req.precision)));
    auto zr = detail::zeta_core(c.parts()[0], req.z + Complex(1), eps);
    return {zr.value, zr.bound, {zr.shift, zr.em_order, req.precision, true, 0}};
  }

  const int order = 44;
  detail::MultizetaKernel<Complex> kernel(c, order);
  Real eps0 = std::max(std::min(req.tolerance / Real(100),
                                pow(Real(10), -static_cast<int>(req.precision))),
                       detail::round_floor<Complex>() * Real(100));
  auto base = kernel.evaluate(req.z, eps0, 0);
  EvalParams params{base.max_shift, base.em_order, req.precision, false, 0};
  for (int round = 1; round <= 3; ++round) {
    auto refined = kernel.evaluate(req.z, eps0 / Real(4), round);
    Real delta = abs(refined.value - base.value);
    params.refinements = round;
    params.truncation = std::max(params.truncation, refined.max_shift);
    params.em_order = std::max(params.em_order, refined.em_order);
    if (delta <= req.tolerance / Real(4)) {
      Real bound = std::max(delta, std::max(refined.bound, detail::round_floor<Complex>()));
      return {refined.value, bound, params};
    }
    base = refined;
  }
  // refinement did not stabilize; report the last value with an honest bound
  return {base.value, std::max(base.bound, req.tolerance), params};
}

inline EvalResult eval_hmzf(const Composition& c, const Complex& z,
                            const Real& tolerance = Real("1e-12"),
                            unsigned precision = 28) {
  return eval_hmzf(EvalRequest{c, z, tolerance, precision});
}

/// Multizeta value Ze^s = He^s(0).
inline EvalResult eval_mzv(const Composition& c, const Real& tolerance = Real("1e-12"),
                           unsigned precision = 28) {
  return eval_hmzf(EvalRequest{c, Complex(0), tolerance, precision});
}

/// Regularized He^1(z) = sum_{n>0} (1/(n+z) - 1/n); z = 0 gives exactly 0,
/// negative integers are poles. Direct sum plus Euler-Maclaurin tail with
///   integral term -log(1 + z/(N+1)) and a certified remainder
///   |R_K| <= |B_{2K+2}| * |z| * (N+1-|z|)^{-2K-3}.
inline EvalResult eval_h1(const Complex& z, unsigned precision = 28) {
  if (precision < 6 || precision > kMaxRequestDigits)
    throw std::invalid_argument("eval_h1: precision out of range");
  if (detail::near_nonpositive_integer(z, -1))
    throw std::domain_error("eval_h1: z lies on the pole set {-1,-2,...}");
  if (z == Complex(0)) return {Complex(0), Real(0), {0, 0, precision, true, 0}};

  Real eps = pow(Real(10), -static_cast<int>(precision));
  Real zmag = abs(z);
  int n_cut = static_cast<int>(std::ceil(16 + 2 * static_cast<double>(zmag)));
  for (int attempt = 0;; ++attempt, n_cut *= 2) {
    Complex total(0);
    for (int n = 1; n <= n_cut; ++n) {
      total += -z / (Complex(n) * (Complex(n) + z));
    }
    Complex a(n_cut + 1);
    total += -log(Complex(1) + z / a);
    auto f_val = [&](int deriv_order) {
      // f^(m)(x) = (-1)^m m! ((x+z)^{-m-1} - x^{-m-1}) at x = n_cut+1
      Complex v = cpow_int(a + z, -deriv_order - 1) - cpow_int(a, -deriv_order - 1);
      Complex sign = (deriv_order % 2) ? Complex(-1) : Complex(1);
      return sign * to_complex<Complex>(Rational(factorial_int(deriv_order))) * v;
    };
    total += f_val(0) / Complex(2);
    Real bound(0);
    int k = 1;
    Real prev(0);
    bool first = true;
    for (; k <= 40; ++k) {
      Complex term = -to_complex<Complex>(bernoulli(2 * k) / Rational(factorial_int(2 * k))) *
                     f_val(2 * k - 1);
      Real mag = abs(term);
      Real base = Real(n_cut + 1) - zmag;
      if (base <= Real(0)) break;
      Real cert = to_real<Real>(abs(bernoulli(2 * k + 2))) * zmag * pow(base, -2 * k - 3);
      if (!first && mag > prev) break;
      total += term;
      bound = cert;
      prev = mag;
      first = false;
      if (bound <= eps) break;
    }
    if (bound <= eps || attempt >= 10) {
      return {total, bound + detail::round_floor<Complex>() * Real(n_cut),
              {n_cut, 2 * k, precision, true, 0}};
    }
  }
}

/// Numeric value of a generator polynomial: sum of coeff * prod He^g(z)^e
/// with first-order error propagation into the reported bound.
inline EvalResult eval_polynomial(const GeneratorPolynomial& p, const Complex& z,
                                  const Real& tolerance = Real("1e-12"),
                                  unsigned precision = 28) {
  std::map<Composition, EvalResult> values;
  int monomial_count = 0;
  for (const auto& [m, q] : p) {
    monomial_count += std::max(1, m.total_degree());
  }
  Real tol_gen = tolerance / Real(std::max(4 * monomial_count, 8));
  EvalParams params{0, 0, precision, true, 0};
  for (const auto& [m, q] : p) {
    for (const auto& [g, e] : m.exponents()) {
      if (!values.count(g)) {
        EvalResult r = eval_hmzf(EvalRequest{g, z, tol_gen, precision});
        params.truncation = std::max(params.truncation, r.params.truncation);
        params.em_order = std::max(params.em_order, r.params.em_order);
        params.certified = params.certified && r.params.certified;
        params.refinements = std::max(params.refinements, r.params.refinements);
        values.emplace(g, r);
      }
    }
  }
  Complex total(0);
  Real bound(0);
  for (const auto& [m, q] : p) {
    Complex term = to_complex<Complex>(q);
    Real term_bound(0);  // first-order: sum over factors of relative shares
    for (const auto& [g, e] : m.exponents()) {
      const EvalResult& r = values.at(g);
      Complex f = cpow_int(r.value, e);
      Real f_err = Real(e) * pow(abs(r.value), e - 1) * r.error_bound;
      term_bound = term_bound * abs(f) + f_err * abs(term);
      term *= f;
    }
    total += term;
    bound += term_bound;
  }
  return {total, bound + detail::round_floor<Complex>() * Real(std::max<int>(1, p.size())),
          params};
}

}  // namespace hmzf

#endif
