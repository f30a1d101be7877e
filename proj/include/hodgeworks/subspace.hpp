#pragma once

#include "hodgeworks/matrix.hpp"

namespace hodgeworks {

/// Linear subspace of S^n held by its reduced row echelon basis, so equal
/// subspaces have identical representations.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient);
  static Subspace whole(Index ambient);
  /// Span of the rows of `generators` (which need not be independent).
  static Subspace span(const Matrix<S>& generators);
  static Subspace span_columns(const Matrix<S>& generators) { return span(generators.transpose()); }

  Index ambient() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == ambient_; }
  /// Canonical generators, one per row.
  const Matrix<S>& basis() const { return basis_; }
  /// Generators as columns (ambient x dim).
  Matrix<S> columns() const { return basis_.transpose(); }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool contains(const Vector<S>& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && equal(a.basis_, b.basis_);
  }

 private:
  Subspace(Index ambient, Echelon<S> e)
      : ambient_(ambient), basis_(std::move(e.reduced)), pivots_(std::move(e.pivots)) {}

  Index ambient_ = 0;
  Matrix<S> basis_ = Matrix<S>(0, 0);
  std::vector<Index> pivots_;
};

/// Column span of m inside its target.
template <class S>
Subspace<S> image(const Matrix<S>& m);
/// Image of the restriction of m to v.
template <class S>
Subspace<S> image(const Matrix<S>& m, const Subspace<S>& v);
template <class S>
Subspace<S> kernel(const Matrix<S>& m);

template <class S>
Subspace<S> sum(const Subspace<S>& u, const Subspace<S>& v);
template <class S>
Subspace<S> intersect(const Subspace<S>& u, const Subspace<S>& v);
/// {x : m x in v}.
template <class S>
Subspace<S> preimage(const Matrix<S>& m, const Subspace<S>& v);
/// Rows spanning the annihilator: a x = 0 iff x in v.
template <class S>
Matrix<S> annihilator(const Subspace<S>& v);

/// u/v realized inside the ambient space. projection is defined on the whole
/// ambient space and kills v; section maps quotient coordinates into u.
template <class S>
struct Quotient {
  Index dim = 0;
  Matrix<S> projection;  // dim x ambient
  Matrix<S> section;     // ambient x dim
};

template <class S>
Quotient<S> quotient(const Subspace<S>& u, const Subspace<S>& v);

/// Entrywise conjugate in the ambient coordinates. Identity over Q.
template <class S>
Subspace<S> conjugate(const Subspace<S>& s);

Subspace<Gaussian> to_gaussian(const Subspace<Rational>& s);

}  // namespace hodgeworks
