#include "hodgeworks/matrix.hpp"

namespace hodgeworks {

Matrix<Gaussian> to_gaussian(const Matrix<Rational>& m) {
  Matrix<Gaussian> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = Gaussian(m(i, j));
  }
  return out;
}

bool is_rational(const Matrix<Gaussian>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_rational()) return false;
    }
  }
  return true;
}

Matrix<Rational> to_rational(const Matrix<Gaussian>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_rational()) throw std::domain_error("matrix has non-rational entries");
      out(i, j) = m(i, j).real();
    }
  }
  return out;
}

template <class S>
Matrix<S> direct_sum(const std::vector<Matrix<S>>& blocks) {
  Index rows = 0;
  Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<S> out = zeros<S>(rows, cols);
  Index r = 0;
  Index c = 0;
  for (const auto& b : blocks) {
    if (b.size() > 0) out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

template <class S>
Matrix<S> vstack(const std::vector<Matrix<S>>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix<S> out(rows, cols);
  Index r = 0;
  for (const auto& b : blocks) {
    if (b.size() > 0) out.block(r, 0, b.rows(), cols) = b;
    r += b.rows();
  }
  return out;
}

template <class S>
Matrix<S> hstack(const std::vector<Matrix<S>>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += b.cols();
  }
  Matrix<S> out(rows, cols);
  Index c = 0;
  for (const auto& b : blocks) {
    if (b.size() > 0) out.block(0, c, rows, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

template <class S>
Echelon<S> rref(const Matrix<S>& m) {
  Matrix<S> a = m;
  const Index rows = a.rows();
  const Index cols = a.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const S inv = S(1) / a(r, c);
    for (Index j = c; j < cols; ++j) {
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const S factor = a(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!a(r, j).is_zero()) a(i, j) -= factor * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<S> reduced = a.topRows(r);
  return {std::move(reduced), std::move(pivots)};
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse: matrix not square");
  const Index n = m.rows();
  Echelon<S> e = rref(hstack<S>({m, identity<S>(n)}, n));
  if (static_cast<Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n)) {
    throw std::domain_error("inverse: matrix is singular");
  }
  return e.reduced.block(0, n, n, n);
}

template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Index n = a.cols();
  Echelon<S> e = rref(hstack<S>({a, b}, a.rows()));
  Matrix<S> x = zeros<S>(n, b.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    const Index c = e.pivots[k];
    if (c >= n) return std::nullopt;
    for (Index j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(static_cast<Index>(k), n + j);
  }
  return x;
}

template <class S>
S determinant(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant: matrix not square");
  Matrix<S> a = m;
  const Index n = a.rows();
  S det(1);
  for (Index c = 0; c < n; ++c) {
    Index piv = -1;
    for (Index i = c; i < n; ++i) {
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return S(0);
    if (piv != c) {
      a.row(piv).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const S factor = a(i, c) / a(c, c);
      for (Index j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

#define HODGEWORKS_INSTANTIATE(S)                                                  \
  template Matrix<S> direct_sum(const std::vector<Matrix<S>>&);                    \
  template Matrix<S> vstack(const std::vector<Matrix<S>>&, Index);                 \
  template Matrix<S> hstack(const std::vector<Matrix<S>>&, Index);                 \
  template Echelon<S> rref(const Matrix<S>&);                                      \
  template Matrix<S> inverse(const Matrix<S>&);                                    \
  template std::optional<Matrix<S>> solve(const Matrix<S>&, const Matrix<S>&);     \
  template S determinant(const Matrix<S>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
