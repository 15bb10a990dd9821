#ifndef HMZF_EXACT_LINALG_HPP
#define HMZF_EXACT_LINALG_HPP

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hmzf {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Gauss-Jordan elimination over a field scalar with largest-magnitude
/// pivoting (exact scalars do not need it; floating scalars reuse the same
/// routine in test oracles). Reduces m in place and returns the pivot
/// columns.
template <class Scalar>
std::vector<Eigen::Index> row_reduce(DenseMatrix<Scalar>& m) {
  using std::abs;
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    Scalar best(0);
    for (Eigen::Index i = row; i < m.rows(); ++i) {
      Scalar mag = abs(m(i, col));
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index exact_rank(DenseMatrix<Scalar> m) {
  return static_cast<Eigen::Index>(row_reduce(m).size());
}

/// Solves A x = b exactly for square nonsingular A; nullopt if singular or
/// inconsistent dimensions are rejected up front.
template <class Scalar>
std::optional<DenseVector<Scalar>> exact_solve(const DenseMatrix<Scalar>& a,
                                               const DenseVector<Scalar>& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("exact_solve: dimension mismatch");
  const Eigen::Index n = a.rows();
  DenseMatrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  std::vector<Eigen::Index> pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() == n)
    return std::nullopt;
  return DenseVector<Scalar>(aug.col(n));
}

/// Incrementally maintained row-reduced basis of a subspace of Scalar^dim.
/// insert() reports whether the vector enlarged the span.
template <class Scalar>
class IncrementalSpan {
 public:
  explicit IncrementalSpan(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(basis_.size()); }

  bool contains(DenseVector<Scalar> v) const {
    reduce(v);
    return leading(v) < 0;
  }

  bool insert(DenseVector<Scalar> v) {
    if (v.rows() != dim_) throw std::invalid_argument("IncrementalSpan: bad dimension");
    reduce(v);
    Eigen::Index lead = leading(v);
    if (lead < 0) return false;
    v /= v(lead);
    for (auto& [l, u] : basis_) {
      if (u(lead) != Scalar(0)) u -= u(lead) * v;
    }
    basis_.emplace_back(lead, std::move(v));
    return true;
  }

 private:
  static Eigen::Index leading(const DenseVector<Scalar>& v) {
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (v(i) != Scalar(0)) return i;
    return -1;
  }

  void reduce(DenseVector<Scalar>& v) const {
    for (const auto& [lead, u] : basis_) {
      if (v(lead) != Scalar(0)) v -= v(lead) * u;
    }
  }

  Eigen::Index dim_;
  std::vector<std::pair<Eigen::Index, DenseVector<Scalar>>> basis_;
};

}  // namespace hmzf

#endif
