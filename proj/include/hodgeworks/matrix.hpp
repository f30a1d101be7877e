#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <vector>

#include "hodgeworks/scalar.hpp"

namespace hodgeworks {

using Index = Eigen::Index;

/// Dense exact matrix. Columns index the source basis; maps act on coordinate columns.
template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Matrix<S> zeros(Index rows, Index cols) {
  return Matrix<S>::Zero(rows, cols);
}

template <class S>
Matrix<S> identity(Index n) {
  return Matrix<S>::Identity(n, n);
}

/// Row-major literal: from_rows<Rational>({{1, 2}, {3, 4}}).
template <class S>
Matrix<S> from_rows(std::initializer_list<std::initializer_list<S>> rows, Index cols = -1) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : std::max<Index>(cols, 0);
  Matrix<S> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw std::invalid_argument("from_rows: ragged rows");
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

template <class S>
bool is_zero(const Matrix<S>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

/// Exact equality including shape.
template <class S>
bool equal(const Matrix<S>& a, const Matrix<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

/// Product that tolerates empty inner dimensions.
template <class S>
Matrix<S> mul(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return zeros<S>(a.rows(), b.cols());
  Matrix<S> out = zeros<S>(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index j = 0; j < b.cols(); ++j) {
      const S& bkj = b(k, j);
      if (bkj.is_zero()) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        if (!a(i, k).is_zero()) out(i, j) += a(i, k) * bkj;
      }
    }
  }
  return out;
}

template <class S>
Matrix<S> conj(const Matrix<S>& m) {
  return m.unaryExpr([](const S& x) { return conj(x); });
}

Matrix<Gaussian> to_gaussian(const Matrix<Rational>& m);
inline const Matrix<Gaussian>& to_gaussian(const Matrix<Gaussian>& m) { return m; }
bool is_rational(const Matrix<Gaussian>& m);
inline bool is_rational(const Matrix<Rational>&) { return true; }
/// Real part; throws unless every entry is rational.
Matrix<Rational> to_rational(const Matrix<Gaussian>& m);

/// Block diagonal sum.
template <class S>
Matrix<S> direct_sum(const std::vector<Matrix<S>>& blocks);
/// Rows stacked vertically; all blocks share a column count.
template <class S>
Matrix<S> vstack(const std::vector<Matrix<S>>& blocks, Index cols);
/// Blocks side by side; all blocks share a row count.
template <class S>
Matrix<S> hstack(const std::vector<Matrix<S>>& blocks, Index rows);

/// Reduced row echelon form together with its pivot columns.
template <class S>
struct Echelon {
  Matrix<S> reduced;  // only the nonzero rows
  std::vector<Index> pivots;
};

template <class S>
Echelon<S> rref(const Matrix<S>& m);

template <class S>
Index rank(const Matrix<S>& m) {
  return static_cast<Index>(rref(m).pivots.size());
}

/// Throws std::domain_error when m is singular.
template <class S>
Matrix<S> inverse(const Matrix<S>& m);

/// Some X with a·X = b, or nullopt.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b);

template <class S>
S determinant(const Matrix<S>& m);

}  // namespace hodgeworks
