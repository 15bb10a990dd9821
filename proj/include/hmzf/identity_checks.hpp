#ifndef HMZF_IDENTITY_CHECKS_HPP
#define HMZF_IDENTITY_CHECKS_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "hmzf/composition.hpp"
#include "hmzf/graded.hpp"
#include "hmzf/hurwitz.hpp"
#include "hmzf/stuffle.hpp"

namespace hmzf {

/// Difference operator of the shift lemma: (delta_- f)(z) = f(z-1) - f(z).
/// Pole handling is the callee's: evaluating f at a pole throws.
inline Complex difference_operator(const std::function<Complex(Complex)>& f, const Complex& z) {
  return f(z - Complex(1)) - f(z);
}

/// Kernel of the difference equation: z^{-s_1} at depth 1, otherwise 0.
inline Complex j_kernel(const Composition& c, const Complex& z) {
  if (z == Complex(0)) throw std::domain_error("j_kernel: z must be nonzero");
  if (c.depth() == 1) return cpow_int(z, -c.parts()[0]);
  return Complex(0);
}

/// Result of a sampled identity check; pass iff the largest residual stays
/// within tolerance. Sample points are recorded verbatim.
struct CheckReport {
  std::string identity;
  std::vector<Complex> points;
  std::vector<Real> residuals;
  Real max_residual = Real(0);
  Real tolerance = Real(0);
  bool pass = false;

  void finish() {
    max_residual = Real(0);
    for (const Real& r : residuals) max_residual = std::max(max_residual, r);
    pass = max_residual <= tolerance;
  }

  std::string str() const {
    std::ostringstream os;
    os << (pass ? "pass" : "FAIL") << "  " << identity
       << "  max residual " << max_residual.str(3, std::ios_base::scientific)
       << " (tolerance " << tolerance.str(3, std::ios_base::scientific) << ", "
       << points.size() << " points)";
    return os.str();
  }
};

/// Memoizing front end over eval_hmzf for harnesses that revisit the same
/// (composition, point) pairs; safe for concurrent use.
class CachedEvaluator {
 public:
  explicit CachedEvaluator(Real tolerance = Real("1e-12"), unsigned precision = 28)
      : tolerance_(std::move(tolerance)), precision_(precision) {}

  const Real& tolerance() const { return tolerance_; }
  unsigned precision() const { return precision_; }

  EvalResult eval(const Composition& c, const Complex& z) const {
    Key key{c, z.real(), z.imag()};
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    EvalResult r = eval_hmzf(EvalRequest{c, z, tolerance_, precision_});
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), r);
    return r;
  }

  Complex value(const Composition& c, const Complex& z) const { return eval(c, z).value; }

 private:
  struct Key {
    Composition c;
    Real re, im;
    bool operator<(const Key& o) const {
      if (!(c == o.c)) return c < o.c;
      if (re != o.re) return re < o.re;
      return im < o.im;
    }
  };
  Real tolerance_;
  unsigned precision_;
  mutable std::map<Key, EvalResult> cache_;
  mutable std::mutex mutex_;
};

/// Default sample points: half-integers 1/2, 1, 3/2, ... followed by 1+i and
/// 2+i; all clear of the pole sets of He^c(z) and He^c(z-1).
inline std::vector<Complex> default_sample_points(size_t count) {
  std::vector<Complex> pts;
  for (size_t k = 1; pts.size() + 2 < count; ++k) pts.emplace_back(Real(k) / Real(2), Real(0));
  if (count >= 1) pts.emplace_back(Real(1), Real(1));
  if (count >= 2) pts.emplace_back(Real(2), Real(1));
  return pts;
}

/// Residuals of the difference equation
///   He^c(z-1) - He^c(z) = z^{-s_r} * He^{c minus last part}(z).
inline CheckReport check_difference_equation(const Composition& c,
                                             const std::vector<Complex>& points,
                                             const Real& tolerance,
                                             const CachedEvaluator* shared = nullptr) {
  if (c.empty() || !c.convergent())
    throw std::invalid_argument("check_difference_equation: need a nonempty convergent composition");
  CachedEvaluator local(tolerance / Real(8));
  const CachedEvaluator& ev = shared ? *shared : local;
  Composition prefix = c.drop_last();
  CheckReport report;
  report.identity = "diffeq (" + c.str() + ")";
  report.tolerance = tolerance;
  report.points = points;
  for (const Complex& z : points) {
    Complex lhs = ev.value(c, z - Complex(1)) - ev.value(c, z);
    Complex rhs = cpow_int(z, -c.back()) *
                  (prefix.empty() ? Complex(1) : ev.value(prefix, z));
    report.residuals.push_back(abs(lhs - rhs));
  }
  report.finish();
  return report;
}

/// Residuals of He^a * He^b = sum of stuffle-expansion terms.
inline CheckReport check_stuffle_identity(const Composition& a, const Composition& b,
                                          const std::vector<Complex>& points,
                                          const Real& tolerance,
                                          const CachedEvaluator* shared = nullptr) {
  if (!a.convergent() || !b.convergent())
    throw std::invalid_argument("check_stuffle_identity: operands must be convergent");
  CachedEvaluator local(tolerance / Real(8));
  const CachedEvaluator& ev = shared ? *shared : local;
  FormalSum expansion = stuffle(a, b);
  CheckReport report;
  report.identity = "stuffle (" + a.str() + ") * (" + b.str() + ")";
  report.tolerance = tolerance;
  report.points = points;
  for (const Complex& z : points) {
    Complex lhs = ev.value(a, z) * ev.value(b, z);
    Complex rhs(0);
    for (const auto& [t, q] : expansion) rhs += to_complex<Complex>(q) * ev.value(t, z);
    report.residuals.push_back(abs(lhs - rhs));
  }
  report.finish();
  return report;
}

/// Residual of the two reduction routes: direct evaluation of He^c against
/// the numeric value of its generator-polynomial normal form.
inline CheckReport end_to_end_check(const Composition& c, const Complex& z,
                                    const Real& tolerance, const GeneratorTable& table) {
  GeneratorPolynomial p = table.reduce(c);
  CheckReport report;
  report.identity = "endtoend (" + c.str() + ")";
  report.tolerance = tolerance;
  report.points = {z};
  Complex direct = eval_hmzf(EvalRequest{c, z, tolerance / Real(8)}).value;
  Complex via_poly = eval_polynomial(p, z, tolerance / Real(8)).value;
  report.residuals.push_back(abs(direct - via_poly));
  report.finish();
  return report;
}

/// Extra matrix column for the independence test (used to plant known
/// relations, e.g. a stuffle product paired with its expansion terms).
struct SyntheticColumn {
  std::string label;
  std::function<Complex(Complex)> eval;
};

/// Sampling certificate for C(z)-linear independence. Columns are
/// z^p * He^c(z) for p = 0..degree_bound per candidate (plus any synthetic
/// columns); rows are sample points. Full numeric rank means no relation was
/// found at this degree bound -- evidence consistent with independence, never
/// a proof. A rank deficiency yields a candidate relation vector which must
/// reproduce residual <= threshold at three held-out points.
struct IndependenceCertificate {
  std::vector<Composition> candidates;
  int degree_bound = 0;
  std::vector<std::string> column_labels;
  size_t rows = 0;
  size_t cols = 0;
  size_t numeric_rank = 0;
  double threshold = 0;
  std::vector<double> singular_values;
  bool relation_found = false;
  std::vector<std::complex<double>> relation;  // normalized: largest coeff = 1
  double holdout_residual = 0;

  std::string str() const {
    std::ostringstream os;
    os << (relation_found ? "RELATION" : "no relation found") << "  rank " << numeric_rank
       << "/" << cols << " on " << rows << " points, threshold " << threshold;
    if (relation_found) os << ", holdout residual " << holdout_residual;
    return os.str();
  }
};

inline IndependenceCertificate independence_certificate(
    const std::vector<Composition>& candidates, int degree_bound,
    const std::vector<Complex>& points,
    const std::vector<SyntheticColumn>& extra = {},
    const CachedEvaluator* shared = nullptr) {
  if (degree_bound < 0) throw std::invalid_argument("independence_certificate: degree_bound < 0");
  const size_t cols = (degree_bound + 1) * candidates.size() + extra.size();
  if (points.size() < cols + 8)
    throw std::invalid_argument("independence_certificate: need at least " +
                                std::to_string(cols + 8) + " sample points");
  CachedEvaluator local(Real("1e-12"));
  const CachedEvaluator& ev = shared ? *shared : local;

  IndependenceCertificate cert;
  cert.candidates = candidates;
  cert.degree_bound = degree_bound;
  const size_t holdout = 3;
  cert.rows = points.size() - holdout;
  cert.cols = cols;

  for (const Composition& c : candidates) {
    for (int p = 0; p <= degree_bound; ++p) {
      std::string label = "He(" + c.str() + ")";
      if (p > 0) label = "z^" + std::to_string(p) + "*" + label;
      cert.column_labels.push_back(label);
    }
  }
  for (const auto& s : extra) cert.column_labels.push_back(s.label);

  auto column_value = [&](size_t j, const Complex& z) -> Complex {
    if (j < (degree_bound + 1) * candidates.size()) {
      size_t ci = j / (degree_bound + 1);
      int p = static_cast<int>(j % (degree_bound + 1));
      return cpow_int(z, p) * ev.value(candidates[ci], z);
    }
    return extra[j - (degree_bound + 1) * candidates.size()].eval(z);
  };

  Eigen::MatrixXcd m(cert.rows, cert.cols);
  double max_entry_error = 0;
  for (size_t i = 0; i < cert.rows; ++i) {
    const Complex& z = points[i];
    double zpow = 1;
    double zmag = static_cast<double>(abs(z));
    for (int p = 0; p <= degree_bound; ++p) {
      zpow = std::max(zpow, std::pow(zmag, p));
    }
    for (size_t j = 0; j < cert.cols; ++j) {
      Complex v = column_value(j, z);
      std::complex<double> vd(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vd;
      double entry_err;
      if (j < (degree_bound + 1) * candidates.size()) {
        size_t ci = j / (degree_bound + 1);
        entry_err = static_cast<double>(ev.eval(candidates[ci], z).error_bound) * zpow;
      } else {
        entry_err = static_cast<double>(ev.tolerance()) * zpow;
      }
      // the SVD sees double entries; representation error floors the bound
      entry_err = std::max(entry_err,
                           std::abs(vd) * 8 * std::numeric_limits<double>::epsilon());
      max_entry_error = std::max(max_entry_error, entry_err);
    }
  }

  // Column normalization keeps the singular-value threshold meaningful when
  // column magnitudes differ by orders; entry errors scale with the columns.
  Eigen::VectorXd norms(cert.cols);
  double max_scaled_error = 0;
  for (size_t j = 0; j < cert.cols; ++j) {
    double n = m.col(static_cast<Eigen::Index>(j)).norm();
    if (n == 0) n = 1;
    norms(static_cast<Eigen::Index>(j)) = n;
    m.col(static_cast<Eigen::Index>(j)) /= n;
    max_scaled_error = std::max(max_scaled_error,
                                max_entry_error * std::sqrt(double(cert.rows)) / n);
  }
  cert.threshold = 1e6 * max_scaled_error;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    cert.singular_values.push_back(svd.singularValues()(i));
  size_t rank = 0;
  for (double s : cert.singular_values)
    if (s > cert.threshold) ++rank;
  cert.numeric_rank = rank;

  if (rank < cert.cols) {
    Eigen::VectorXcd v = svd.matrixV().col(static_cast<Eigen::Index>(cert.cols - 1));
    std::vector<std::complex<double>> raw(cert.cols);
    double max_mag = 0;
    for (size_t j = 0; j < cert.cols; ++j) {
      raw[j] = v(static_cast<Eigen::Index>(j)) / norms(static_cast<Eigen::Index>(j));
      max_mag = std::max(max_mag, std::abs(raw[j]));
    }
    // normalize so the largest coefficient is exactly 1 (fixes scale+phase)
    std::complex<double> pivot;
    for (const auto& cval : raw)
      if (std::abs(cval) == max_mag) {
        pivot = cval;
        break;
      }
    for (auto& cval : raw) cval /= pivot;
    cert.relation = raw;

    double worst = 0;
    for (size_t h = points.size() - holdout; h < points.size(); ++h) {
      const Complex& z = points[h];
      std::complex<double> acc = 0;
      double col_scale = 0;
      for (size_t j = 0; j < cert.cols; ++j) {
        Complex v_hp = column_value(j, z);
        std::complex<double> vd(static_cast<double>(v_hp.real()),
                                static_cast<double>(v_hp.imag()));
        acc += raw[j] * vd;
        col_scale = std::max(col_scale, std::abs(vd));
      }
      worst = std::max(worst, std::abs(acc) / std::max(1.0, col_scale));
    }
    cert.holdout_residual = worst;
    cert.relation_found = worst <= cert.threshold;
  }
  return cert;
}

}  // namespace hmzf

#endif
