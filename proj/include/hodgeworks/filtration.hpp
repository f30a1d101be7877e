#pragma once

#include <functional>
#include <optional>

#include "hodgeworks/complex.hpp"

namespace hodgeworks {

/// Finite decreasing filtration of one space: at(p) is the whole space for
/// p < first(), levels()[p - first()] inside the window, and zero from end().
/// Canonical: the first stored level is proper and the last is nonzero.
template <class S>
class Flag {
 public:
  Flag() = default;
  explicit Flag(Index ambient) : Flag(ambient, 1, {}) {}
  /// Throws unless the levels decrease.
  Flag(Index ambient, int first, std::vector<Subspace<S>> levels);

  /// F^p = everything for p <= level, 0 above.
  static Flag trivial(Index ambient, int level = 0) { return Flag(ambient, level + 1, {}); }
  /// Evaluates `level` on [lo, hi]; whole below, zero above.
  static Flag tabulate(Index ambient, int lo, int hi, const std::function<Subspace<S>(int)>& level);

  Index ambient() const { return ambient_; }
  int first() const { return first_; }
  int end() const { return first_ + static_cast<int>(levels_.size()); }
  const std::vector<Subspace<S>>& levels() const { return levels_; }
  const Subspace<S>& at(int p) const;

  /// G^p = F^{p + k}.
  Flag reindexed(int k) const;
  /// Levels carried through an invertible change of coordinates.
  Flag transformed(const Matrix<S>& m) const;
  /// Smallest and largest p with a possibly nonzero F^p / F^{p+1}.
  int graded_lo() const { return first_ - 1; }
  int graded_hi() const { return end() - 1; }

  friend bool operator==(const Flag& a, const Flag& b) {
    return a.ambient_ == b.ambient_ && a.first_ == b.first_ && a.levels_ == b.levels_;
  }

 private:
  Index ambient_ = 0;
  int first_ = 0;
  std::vector<Subspace<S>> levels_;
  Subspace<S> whole_ = Subspace<S>::zero(0);
  Subspace<S> zero_ = Subspace<S>::zero(0);
};

/// One Flag per degree of a graded space (decreasing convention).
template <class S>
class Filtration {
 public:
  Filtration() = default;
  Filtration(int lo, std::vector<Flag<S>> flags) : lo_(lo), flags_(std::move(flags)) {}
  /// F^p = everything for p <= level in every degree.
  static Filtration trivial(const GradedShape& shape, int level = 0);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(flags_.size()) - 1; }
  const Flag<S>& flag(int n) const;
  const Subspace<S>& at(int p, int n) const { return flag(n).at(p); }
  const std::vector<Flag<S>>& flags() const { return flags_; }

  /// Range of p over which some Gr^p may be nonzero; empty (lo > hi) when all spaces vanish.
  std::pair<int, int> graded_window() const;
  /// G^p K^n = F^{p + k(n)} K^n.
  Filtration reindexed(const std::function<int(int)>& k) const;

  bool equals(const Filtration& o) const;
  friend bool operator==(const Filtration& a, const Filtration& b) { return a.equals(b); }

 private:
  int lo_ = 0;
  std::vector<Flag<S>> flags_;
};

/// Checks f(F^p X^n) ⊆ G^{p+shift} Y^{n+k} for all p, n.
template <class S>
bool preserves(const GradedMap<S>& f, const Filtration<S>& src, const Filtration<S>& tgt, int shift = 0);

/// Levelwise direct sum of flags.
template <class S>
Flag<S> direct_sum(const std::vector<const Flag<S>*>& flags);
/// Degreewise direct sum of filtrations, summands laid out as in direct_sum of shapes.
template <class S>
Filtration<S> direct_sum(const std::vector<const Filtration<S>*>& filtrations,
                         const std::vector<GradedShape>& shapes);

Flag<Gaussian> to_gaussian(const Flag<Rational>& f);
Filtration<Gaussian> to_gaussian(const Filtration<Rational>& f);

}  // namespace hodgeworks
