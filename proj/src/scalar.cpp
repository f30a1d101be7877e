#include "hodgeworks/scalar.hpp"

#include <cctype>

namespace hodgeworks {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("malformed scalar '" + std::string(whole) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(s, text)));
  mpz_class num = parse_integer(s.substr(0, slash), text);
  mpz_class den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(to_string());
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (norm.is_zero()) throw std::domain_error("division by zero");
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

// Accepted forms: "a/b", "c/d*i", "i", "-i", "a/b+c/d*i", "a/b-c/d*i", "a/b+-c/d*i".
Gaussian Gaussian::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return Gaussian(Rational::parse(s));
  std::string_view body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.remove_suffix(1);
  // Split at the last sign that is not the leading character and not part of "+-".
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '+' && body[k - 1] != '-') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view part) {
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    if (part.size() >= 2 && part[0] == '+' && part[1] == '-') part.remove_prefix(1);
    return Rational::parse(part);
  };
  if (split == std::string_view::npos) return {Rational(0), imag_of(body)};
  return {Rational::parse(body.substr(0, split)), imag_of(body.substr(split))};
}

std::string Gaussian::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string im = im_.to_string();
  if (im_.sign() < 0) return re_.to_string() + im + "*i";
  return re_.to_string() + "+" + im + "*i";
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << x.to_string(); }

}  // namespace hodgeworks
