#pragma once

#include <map>
#include <vector>

#include "hodgeworks/subspace.hpp"

namespace hodgeworks {

/// Dimensions of a bounded graded space: dims[k] is the dimension in degree lo + k.
struct GradedShape {
  int lo = 0;
  std::vector<Index> dims;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  bool in_range(int n) const { return n >= lo && n <= hi(); }
  Index dim(int n) const { return in_range(n) ? dims[static_cast<std::size_t>(n - lo)] : 0; }
  Index total() const;
  /// Same dimensions with degrees moved by k (lo becomes lo - k).
  GradedShape translated(int k) const { return {lo - k, dims}; }

  friend bool operator==(const GradedShape& a, const GradedShape& b);
};

/// Direct sum shape of several graded spaces over the union of their ranges.
GradedShape direct_sum(const std::vector<GradedShape>& shapes);
/// Offset of summand `which` inside direct_sum(shapes) in degree n.
Index summand_offset(const std::vector<GradedShape>& shapes, std::size_t which, int n);

/// Bounded cochain complex of finite-dimensional spaces.
template <class S>
class Complex {
 public:
  Complex() = default;
  /// d[n] : K^n -> K^{n+1}; absent degrees are zero. Throws unless d∘d = 0.
  Complex(GradedShape shape, const std::map<int, Matrix<S>>& d);
  static Complex zero_differential(GradedShape shape) { return Complex(std::move(shape), {}); }

  const GradedShape& shape() const { return shape_; }
  int lo() const { return shape_.lo; }
  int hi() const { return shape_.hi(); }
  Index dim(int n) const { return shape_.dim(n); }
  /// dim(n+1) x dim(n); an empty matrix far outside the range.
  const Matrix<S>& d(int n) const;

  Subspace<S> cycles(int n) const { return kernel<S>(d(n)); }
  Subspace<S> boundaries(int n) const { return image<S>(d(n - 1)); }
  Index betti(int n) const;

  /// -d in degree n lives in degree n - 1 after translation by one.
  Complex translated() const;
  Complex negated() const;

  friend bool operator==(const Complex& a, const Complex& b) {
    if (!(a.shape_ == b.shape_)) return false;
    for (int n = a.lo() - 1; n <= a.hi(); ++n) {
      if (!equal(a.d(n), b.d(n))) return false;
    }
    return true;
  }

 private:
  GradedShape shape_;
  std::vector<Matrix<S>> d_;  // degrees lo - 1 .. hi
};

/// Homogeneous linear map of degree k between graded spaces: block(n) maps
/// X^n to Y^{n+k}.
template <class S>
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedShape source, GradedShape target, int degree);
  static GradedMap zero(GradedShape source, GradedShape target, int degree) {
    return GradedMap(std::move(source), std::move(target), degree);
  }
  static GradedMap identity(const GradedShape& shape);
  static GradedMap differential(const Complex<S>& k);

  const GradedShape& source() const { return source_; }
  const GradedShape& target() const { return target_; }
  int degree() const { return degree_; }

  /// Zero block of the right shape outside the source range.
  Matrix<S> block(int n) const;
  Matrix<S>& operator[](int n);
  const Matrix<S>& operator[](int n) const;
  void set(int n, const Matrix<S>& m);

  bool is_zero() const;

  GradedMap& operator+=(const GradedMap& o);
  GradedMap& operator-=(const GradedMap& o);
  GradedMap& operator*=(const S& s);
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend GradedMap operator*(const S& s, GradedMap a) { return a *= s; }
  GradedMap operator-() const {
    GradedMap out = *this;
    out *= S(-1);
    return out;
  }

  bool equals(const GradedMap& o) const;
  friend bool operator==(const GradedMap& a, const GradedMap& b) { return a.equals(b); }

 private:
  void check_same_shape(const GradedMap& o) const;

  GradedShape source_;
  GradedShape target_;
  int degree_ = 0;
  std::vector<Matrix<S>> blocks_;
};

/// g ∘ f; requires f.target() == g.source().
template <class S>
GradedMap<S> compose(const GradedMap<S>& g, const GradedMap<S>& f);

/// d_L f - (-1)^k f d_K for a map of degree k.
template <class S>
GradedMap<S> commutator(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l);

template <class S>
bool is_chain_map(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l) {
  return f.degree() == 0 && commutator(f, k, l).is_zero();
}

/// Map on cohomology in degree n, in the quotient coordinates of Z/B.
template <class S>
Matrix<S> cohomology_map(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l, int n);

/// True when f is a chain map inducing isomorphisms on all cohomology.
template <class S>
bool is_quasi_isomorphism(const GradedMap<S>& f, const Complex<S>& k, const Complex<S>& l);

/// Inverse of a degreewise invertible map; throws otherwise.
template <class S>
GradedMap<S> inverse(const GradedMap<S>& f);

GradedMap<Gaussian> to_gaussian(const GradedMap<Rational>& f);
Complex<Gaussian> to_gaussian(const Complex<Rational>& k);

}  // namespace hodgeworks
