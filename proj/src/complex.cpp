#include "hodgeworks/complex.hpp"

#include <algorithm>
#include <climits>

namespace hodgeworks {

Index GradedShape::total() const {
  Index t = 0;
  for (Index d : dims) t += d;
  return t;
}

bool operator==(const GradedShape& a, const GradedShape& b) {
  const int lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi; ++n) {
    if (a.dim(n) != b.dim(n)) return false;
  }
  return true;
}

GradedShape direct_sum(const std::vector<GradedShape>& shapes) {
  int lo = INT_MAX;
  int hi = INT_MIN;
  for (const auto& s : shapes) {
    if (s.dims.empty()) continue;
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi());
  }
  if (lo > hi) return {};
  GradedShape out{lo, std::vector<Index>(static_cast<std::size_t>(hi - lo + 1), 0)};
  for (int n = lo; n <= hi; ++n) {
    for (const auto& s : shapes) out.dims[static_cast<std::size_t>(n - lo)] += s.dim(n);
  }
  return out;
}

Index summand_offset(const std::vector<GradedShape>& shapes, std::size_t which, int n) {
  Index off = 0;
  for (std::size_t k = 0; k < which; ++k) off += shapes[k].dim(n);
  return off;
}

namespace {

template <class S>
const Matrix<S>& empty_matrix() {
  static const Matrix<S> m(0, 0);
  return m;
}

}  // namespace

template <class S>
Complex<S>::Complex(GradedShape shape, const std::map<int, Matrix<S>>& d) : shape_(std::move(shape)) {
  for (int n = lo() - 1; n <= hi(); ++n) d_.push_back(zeros<S>(dim(n + 1), dim(n)));
  for (const auto& [n, m] : d) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n)) {
      throw std::invalid_argument("differential in degree " + std::to_string(n) + " has shape " +
                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  ", expected " + std::to_string(dim(n + 1)) + "x" +
                                  std::to_string(dim(n)));
    }
    if (m.size() == 0) continue;
    d_[static_cast<std::size_t>(n - lo() + 1)] = m;
  }
  for (int n = lo(); n < hi(); ++n) {
    if (!is_zero(mul<S>(this->d(n + 1), this->d(n)))) {
      throw std::invalid_argument("d∘d != 0 in degree " + std::to_string(n));
    }
  }
}

template <class S>
const Matrix<S>& Complex<S>::d(int n) const {
  if (n < lo() - 1 || n > hi() || d_.empty()) return empty_matrix<S>();
  return d_[static_cast<std::size_t>(n - lo() + 1)];
}

template <class S>
Index Complex<S>::betti(int n) const {
  return dim(n) - rank(d(n)) - rank(d(n - 1));
}

template <class S>
Complex<S> Complex<S>::translated() const {
  std::map<int, Matrix<S>> d;
  for (int n = lo(); n < hi(); ++n) d[n - 1] = -this->d(n);
  return Complex(shape_.translated(1), d);
}

template <class S>
Complex<S> Complex<S>::negated() const {
  std::map<int, Matrix<S>> d;
  for (int n = lo(); n < hi(); ++n) d[n] = -this->d(n);
  return Complex(shape_, d);
}

template <class S>
GradedMap<S>::GradedMap(GradedShape source, GradedShape target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  for (int n = source_.lo; n <= source_.hi(); ++n) {
    blocks_.push_back(zeros<S>(target_.dim(n + degree_), source_.dim(n)));
  }
}

template <class S>
GradedMap<S> GradedMap<S>::identity(const GradedShape& shape) {
  GradedMap out(shape, shape, 0);
  for (int n = shape.lo; n <= shape.hi(); ++n) out[n] = hodgeworks::identity<S>(shape.dim(n));
  return out;
}

template <class S>
GradedMap<S> GradedMap<S>::differential(const Complex<S>& k) {
  GradedMap out(k.shape(), k.shape(), 1);
  for (int n = k.lo(); n <= k.hi(); ++n) out[n] = k.d(n);
  return out;
}

template <class S>
Matrix<S> GradedMap<S>::block(int n) const {
  if (source_.in_range(n)) return blocks_[static_cast<std::size_t>(n - source_.lo)];
  return zeros<S>(target_.dim(n + degree_), source_.dim(n));
}

template <class S>
Matrix<S>& GradedMap<S>::operator[](int n) {
  if (!source_.in_range(n)) throw std::out_of_range("graded map degree out of range");
  return blocks_[static_cast<std::size_t>(n - source_.lo)];
}

template <class S>
const Matrix<S>& GradedMap<S>::operator[](int n) const {
  if (!source_.in_range(n)) throw std::out_of_range("graded map degree out of range");
  return blocks_[static_cast<std::size_t>(n - source_.lo)];
}

template <class S>
void GradedMap<S>::set(int n, const Matrix<S>& m) {
  if (m.rows() != target_.dim(n + degree_) || m.cols() != source_.dim(n)) {
    throw std::invalid_argument("graded map block has the wrong shape in degree " + std::to_string(n));
  }
  if (source_.in_range(n)) (*this)[n] = m;
}

template <class S>
bool GradedMap<S>::is_zero() const {
  for (const auto& b : blocks_) {
    if (!hodgeworks::is_zero(b)) return false;
  }
  return true;
}

template <class S>
void GradedMap<S>::check_same_shape(const GradedMap& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_) || degree_ != o.degree_) {
    throw std::invalid_argument("graded maps have different shapes");
  }
}

template <class S>
GradedMap<S>& GradedMap<S>::operator+=(const GradedMap& o) {
  check_same_shape(o);
  for (int n = source_.lo; n <= source_.hi(); ++n) {
    if (source_.dim(n) > 0) (*this)[n] += o.block(n);
  }
  return *this;
}

template <class S>
GradedMap<S>& GradedMap<S>::operator-=(const GradedMap& o) {
  check_same_shape(o);
  for (int n = source_.lo; n <= source_.hi(); ++n) {
    if (source_.dim(n) > 0) (*this)[n] -= o.block(n);
  }
  return *this;
}

template <class S>
GradedMap<S>& GradedMap<S>::operator*=(const S& s) {
  for (auto& b : blocks_) {
    for (Index j = 0; j < b.cols(); ++j) {
      for (Index i = 0; i < b.rows(); ++i) {
        if (!b(i, j).is_zero()) b(i, j) *= s;
      }
    }
  }
  return *this;
}

template <class S>
bool GradedMap<S>::equals(const GradedMap& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_) || degree_ != o.degree_) return false;
  const int lo = std::min(source_.lo, o.source_.lo);
  const int hi = std::max(source_.hi(), o.source_.hi());
  for (int n = lo; n <= hi; ++n) {
    if (!equal(block(n), o.block(n))) return false;
  }
  return true;
}

template <class S>
GradedMap<S> compose(const GradedMap<S>& g, const GradedMap<S>& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("compose: shapes do not match");
  GradedMap<S> out(f.source(), g.target(), f.degree() + g.degree());
  for (int n = f.source().lo; n <= f.source().hi(); ++n) {
    out[n] = mul<S>(g.block(n + f.degree()), f.block(n));
  }
  return out;
}

template <class S>
GradedMap<S> commutator(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l) {
  if (!(f.source() == k.shape()) || !(f.target() == l.shape())) {
    throw std::invalid_argument("commutator: shapes do not match");
  }
  const int deg = f.degree();
  const S sign = (deg % 2 == 0) ? S(1) : S(-1);
  GradedMap<S> out(k.shape(), l.shape(), deg + 1);
  for (int n = k.lo(); n <= k.hi(); ++n) {
    Matrix<S> left = mul<S>(l.d(n + deg), f.block(n));
    Matrix<S> right = mul<S>(f.block(n + 1), k.d(n));
    if (left.rows() != out[n].rows()) left = zeros<S>(out[n].rows(), out[n].cols());
    if (right.rows() != out[n].rows()) right = zeros<S>(out[n].rows(), out[n].cols());
    out[n] = left - sign * right;
  }
  return out;
}

template <class S>
Matrix<S> cohomology_map(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l, int n) {
  const Quotient<S> hk = quotient(k.cycles(n), k.boundaries(n));
  const Quotient<S> hl = quotient(l.cycles(n), l.boundaries(n));
  return mul<S>(hl.projection, mul<S>(f.block(n), hk.section));
}

template <class S>
bool is_quasi_isomorphism(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l) {
  if (!is_chain_map(f, k, l)) return false;
  const int lo = std::min(k.lo(), l.lo());
  const int hi = std::max(k.hi(), l.hi());
  for (int n = lo; n <= hi; ++n) {
    const Matrix<S> h = cohomology_map(f, k, l, n);
    if (h.rows() != h.cols() || rank(h) != h.rows()) return false;
  }
  return true;
}

template <class S>
GradedMap<S> inverse(const GradedMap<S>& f) {
  if (f.degree() != 0) throw std::invalid_argument("inverse: map has nonzero degree");
  GradedMap<S> out(f.target(), f.source(), 0);
  for (int n = f.target().lo; n <= f.target().hi(); ++n) {
    const Matrix<S> b = f.block(n);
    if (b.rows() != b.cols()) throw std::domain_error("inverse: block is not square");
    out[n] = inverse<S>(b);
  }
  return out;
}

GradedMap<Gaussian> to_gaussian(const GradedMap<Rational>& f) {
  GradedMap<Gaussian> out(f.source(), f.target(), f.degree());
  for (int n = f.source().lo; n <= f.source().hi(); ++n) out[n] = to_gaussian(f[n]);
  return out;
}

Complex<Gaussian> to_gaussian(const Complex<Rational>& k) {
  std::map<int, Matrix<Gaussian>> d;
  for (int n = k.lo(); n < k.hi(); ++n) d[n] = to_gaussian(k.d(n));
  return Complex<Gaussian>(k.shape(), d);
}

#define HODGEWORKS_INSTANTIATE(S)                                                              \
  template class Complex<S>;                                                                   \
  template class GradedMap<S>;                                                                 \
  template GradedMap<S> compose(const GradedMap<S>&, const GradedMap<S>&);                     \
  template GradedMap<S> commutator(const GradedMap<S>&, const Complex<S>&, const Complex<S>&); \
  template Matrix<S> cohomology_map(const GradedMap<S>&, const Complex<S>&, const Complex<S>&, \
                                    int);                                                      \
  template bool is_quasi_isomorphism(const GradedMap<S>&, const Complex<S>&,                   \
                                     const Complex<S>&);                                       \
  template GradedMap<S> inverse(const GradedMap<S>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
