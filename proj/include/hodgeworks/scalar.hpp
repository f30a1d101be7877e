#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hodgeworks {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator (GMP canonicalizes after every operation).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  /// "a/b", denominator always written.
  std::string to_string() const;
  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

/// Element of the Gaussian rationals Q(i), our exact model of the complex numbers.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }
  static Gaussian parse(std::string_view text);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_rational() const { return im_.is_zero(); }
  Gaussian conj() const { return {re_, -im_}; }
  /// "a/b" when the imaginary part vanishes, otherwise "a/b+c/d*i" (or "a/b-c/d*i").
  std::string to_string() const;

  Gaussian& operator+=(const Gaussian& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return {-re_, -im_}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_;
  Rational im_;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Gaussian& x) { return x.is_zero(); }
inline Rational conj(const Rational& x) { return x; }
inline Gaussian conj(const Gaussian& x) { return x.conj(); }
inline std::string to_string(const Rational& x) { return x.to_string(); }
inline std::string to_string(const Gaussian& x) { return x.to_string(); }

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const Gaussian& x);

template <class S>
S parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return Rational::parse(text); }
template <>
inline Gaussian parse_scalar<Gaussian>(std::string_view text) { return Gaussian::parse(text); }

/// Compile-time tag for the two supported coefficient fields.
template <class S>
struct ScalarTraits;
template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_gaussian = false;
  static constexpr const char* name = "rational";
};
template <>
struct ScalarTraits<Gaussian> {
  static constexpr bool is_gaussian = true;
  static constexpr const char* name = "gaussian";
};

template <class S>
concept ExactScalar = std::same_as<S, Rational> || std::same_as<S, Gaussian>;

}  // namespace hodgeworks

namespace Eigen {

template <>
struct NumTraits<hodgeworks::Rational> : GenericNumTraits<hodgeworks::Rational> {
  using Real = hodgeworks::Rational;
  using NonInteger = hodgeworks::Rational;
  using Literal = hodgeworks::Rational;
  using Nested = hodgeworks::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hodgeworks::Gaussian> : GenericNumTraits<hodgeworks::Gaussian> {
  using Real = hodgeworks::Gaussian;
  using NonInteger = hodgeworks::Gaussian;
  using Literal = hodgeworks::Gaussian;
  using Nested = hodgeworks::Gaussian;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
