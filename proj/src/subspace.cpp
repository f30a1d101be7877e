#include "hodgeworks/subspace.hpp"

#include <algorithm>

namespace hodgeworks {

template <class S>
Subspace<S> Subspace<S>::zero(Index ambient) {
  return Subspace(ambient, Echelon<S>{Matrix<S>(0, ambient), {}});
}

template <class S>
Subspace<S> Subspace<S>::whole(Index ambient) {
  std::vector<Index> pivots(static_cast<std::size_t>(ambient));
  for (Index k = 0; k < ambient; ++k) pivots[static_cast<std::size_t>(k)] = k;
  return Subspace(ambient, Echelon<S>{identity<S>(ambient), std::move(pivots)});
}

template <class S>
Subspace<S> Subspace<S>::span(const Matrix<S>& generators) {
  return Subspace(generators.cols(), rref(generators));
}

template <class S>
bool Subspace<S>::contains(const Vector<S>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  // Reduce v against the echelon rows; v is inside iff nothing survives.
  Vector<S> w = v;
  for (Index k = 0; k < dim(); ++k) {
    const Index c = pivots_[static_cast<std::size_t>(k)];
    if (w(c).is_zero()) continue;
    const S factor = w(c);
    for (Index j = c; j < ambient_; ++j) {
      if (!basis_(k, j).is_zero()) w(j) -= factor * basis_(k, j);
    }
  }
  for (Index j = 0; j < ambient_; ++j) {
    if (!w(j).is_zero()) return false;
  }
  return true;
}

template <class S>
bool Subspace<S>::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  for (Index k = 0; k < other.dim(); ++k) {
    if (!contains(Vector<S>(other.basis_.row(k).transpose()))) return false;
  }
  return true;
}

template <class S>
Subspace<S> image(const Matrix<S>& m) {
  return Subspace<S>::span(m.transpose());
}

template <class S>
Subspace<S> image(const Matrix<S>& m, const Subspace<S>& v) {
  if (m.cols() != v.ambient()) throw std::invalid_argument("image: ambient mismatch");
  return Subspace<S>::span(mul<S>(v.basis(), m.transpose()));
}

template <class S>
Subspace<S> kernel(const Matrix<S>& m) {
  const Echelon<S> e = rref(m);
  const Index n = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  const Index nullity = n - static_cast<Index>(e.pivots.size());
  Matrix<S> gens = zeros<S>(nullity, n);
  Index row = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    gens(row, f) = S(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      gens(row, e.pivots[k]) = -e.reduced(static_cast<Index>(k), f);
    }
    ++row;
  }
  return Subspace<S>::span(gens);
}

template <class S>
Subspace<S> sum(const Subspace<S>& u, const Subspace<S>& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("sum: ambient mismatch");
  if (u.is_zero() || v.is_whole()) return v;
  if (v.is_zero() || u.is_whole()) return u;
  return Subspace<S>::span(vstack<S>({u.basis(), v.basis()}, u.ambient()));
}

template <class S>
Matrix<S> annihilator(const Subspace<S>& v) {
  return kernel<S>(v.basis()).basis();
}

template <class S>
Subspace<S> intersect(const Subspace<S>& u, const Subspace<S>& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  if (u.is_zero() || v.is_whole()) return u;
  if (v.is_zero() || u.is_whole()) return v;
  // x = U^T c lies in v iff A_v U^T c = 0.
  const Matrix<S> coeffs = kernel<S>(mul<S>(annihilator(v), u.columns())).basis();
  return Subspace<S>::span(mul<S>(coeffs, u.basis()));
}

template <class S>
Subspace<S> preimage(const Matrix<S>& m, const Subspace<S>& v) {
  if (m.rows() != v.ambient()) throw std::invalid_argument("preimage: ambient mismatch");
  if (v.is_whole()) return Subspace<S>::whole(m.cols());
  return kernel<S>(mul<S>(annihilator(v), m));
}

template <class S>
Quotient<S> quotient(const Subspace<S>& u, const Subspace<S>& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("quotient: ambient mismatch");
  if (!u.contains(v)) throw std::invalid_argument("quotient: denominator not contained in numerator");
  const Index n = u.ambient();
  const Index q = u.dim() - v.dim();
  Quotient<S> out;
  out.dim = q;
  if (q == 0) {
    out.projection = Matrix<S>(0, n);
    out.section = Matrix<S>(n, 0);
    return out;
  }
  // Pivots of v are a subset of those of u; the rows of u with the remaining
  // pivots complete v to a basis of u, and unit vectors complete u to S^n.
  std::vector<char> in_v(static_cast<std::size_t>(n), 0);
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (Index c : v.pivots()) in_v[static_cast<std::size_t>(c)] = 1;
  for (Index c : u.pivots()) in_u[static_cast<std::size_t>(c)] = 1;
  Matrix<S> complement(q, n);
  Index row = 0;
  for (Index k = 0; k < u.dim(); ++k) {
    if (!in_v[static_cast<std::size_t>(u.pivots()[static_cast<std::size_t>(k)])]) {
      complement.row(row++) = u.basis().row(k);
    }
  }
  Matrix<S> units = zeros<S>(n - u.dim(), n);
  row = 0;
  for (Index c = 0; c < n; ++c) {
    if (!in_u[static_cast<std::size_t>(c)]) units(row++, c) = S(1);
  }
  const Matrix<S> full = vstack<S>({v.basis(), complement, units}, n);
  const Matrix<S> coords = inverse<S>(Matrix<S>(full.transpose()));
  out.projection = coords.middleRows(v.dim(), q);
  out.section = complement.transpose();
  return out;
}

template <class S>
Subspace<S> conjugate(const Subspace<S>& s) {
  if constexpr (ScalarTraits<S>::is_gaussian) {
    return Subspace<S>::span(conj<S>(s.basis()));
  } else {
    return s;
  }
}

Subspace<Gaussian> to_gaussian(const Subspace<Rational>& s) {
  if (s.dim() == 0) return Subspace<Gaussian>::zero(s.ambient());
  return Subspace<Gaussian>::span(to_gaussian(s.basis()));
}

#define HODGEWORKS_INSTANTIATE(S)                                                  \
  template class Subspace<S>;                                                      \
  template Subspace<S> image(const Matrix<S>&);                                    \
  template Subspace<S> image(const Matrix<S>&, const Subspace<S>&);                \
  template Subspace<S> kernel(const Matrix<S>&);                                   \
  template Subspace<S> sum(const Subspace<S>&, const Subspace<S>&);                \
  template Subspace<S> intersect(const Subspace<S>&, const Subspace<S>&);          \
  template Subspace<S> preimage(const Matrix<S>&, const Subspace<S>&);             \
  template Matrix<S> annihilator(const Subspace<S>&);                              \
  template Quotient<S> quotient(const Subspace<S>&, const Subspace<S>&);           \
  template Subspace<S> conjugate(const Subspace<S>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
