#include "hodgeworks/filtration.hpp"

#include <algorithm>
#include <climits>

namespace hodgeworks {

template <class S>
Flag<S>::Flag(Index ambient, int first, std::vector<Subspace<S>> levels)
    : ambient_(ambient),
      first_(first),
      levels_(std::move(levels)),
      whole_(Subspace<S>::whole(ambient)),
      zero_(Subspace<S>::zero(ambient)) {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k].ambient() != ambient_) throw std::invalid_argument("flag level has the wrong ambient dimension");
    if (k > 0 && !levels_[k - 1].contains(levels_[k])) {
      throw std::invalid_argument("flag levels are not decreasing at p = " +
                                  std::to_string(first_ + static_cast<int>(k)));
    }
  }
  std::size_t front = 0;
  while (front < levels_.size() && levels_[front].is_whole()) ++front;
  std::size_t back = levels_.size();
  while (back > front && levels_[back - 1].is_zero()) --back;
  levels_ = std::vector<Subspace<S>>(levels_.begin() + static_cast<std::ptrdiff_t>(front),
                                     levels_.begin() + static_cast<std::ptrdiff_t>(back));
  first_ += static_cast<int>(front);
  if (ambient_ == 0) {
    first_ = 0;
    levels_.clear();
  }
}

template <class S>
Flag<S> Flag<S>::tabulate(Index ambient, int lo, int hi, const std::function<Subspace<S>(int)>& level) {
  std::vector<Subspace<S>> levels;
  for (int p = lo; p <= hi; ++p) levels.push_back(level(p));
  return Flag(ambient, lo, std::move(levels));
}

template <class S>
const Subspace<S>& Flag<S>::at(int p) const {
  if (p < first_) return whole_;
  if (p >= end()) return zero_;
  return levels_[static_cast<std::size_t>(p - first_)];
}

template <class S>
Flag<S> Flag<S>::reindexed(int k) const {
  return Flag(ambient_, first_ - k, levels_);
}

template <class S>
Flag<S> Flag<S>::transformed(const Matrix<S>& m) const {
  std::vector<Subspace<S>> levels;
  levels.reserve(levels_.size());
  for (const auto& l : levels_) levels.push_back(image<S>(m, l));
  return Flag(m.rows(), first_, std::move(levels));
}

template <class S>
Filtration<S> Filtration<S>::trivial(const GradedShape& shape, int level) {
  std::vector<Flag<S>> flags;
  for (int n = shape.lo; n <= shape.hi(); ++n) flags.push_back(Flag<S>::trivial(shape.dim(n), level));
  return Filtration(shape.lo, std::move(flags));
}

template <class S>
const Flag<S>& Filtration<S>::flag(int n) const {
  static const Flag<S> empty;
  if (n < lo_ || n > hi()) return empty;
  return flags_[static_cast<std::size_t>(n - lo_)];
}

template <class S>
std::pair<int, int> Filtration<S>::graded_window() const {
  int lo = INT_MAX;
  int hi = INT_MIN;
  for (const auto& f : flags_) {
    if (f.ambient() == 0) continue;
    lo = std::min(lo, f.graded_lo());
    hi = std::max(hi, f.graded_hi());
  }
  return {lo, hi};
}

template <class S>
Filtration<S> Filtration<S>::reindexed(const std::function<int(int)>& k) const {
  std::vector<Flag<S>> flags;
  for (int n = lo_; n <= hi(); ++n) flags.push_back(flag(n).reindexed(k(n)));
  return Filtration(lo_, std::move(flags));
}

template <class S>
bool Filtration<S>::equals(const Filtration& o) const {
  const int lo = std::min(lo_, o.lo_);
  const int hi = std::max(this->hi(), o.hi());
  for (int n = lo; n <= hi; ++n) {
    if (!(flag(n) == o.flag(n))) return false;
  }
  return true;
}

template <class S>
bool preserves(const GradedMap<S>& f, const Filtration<S>& src, const Filtration<S>& tgt, int shift) {
  for (int n = f.source().lo; n <= f.source().hi(); ++n) {
    if (f.source().dim(n) == 0) continue;
    const Matrix<S> m = f.block(n);
    const Flag<S>& from = src.flag(n);
    const Flag<S>& to = tgt.flag(n + f.degree());
    if (m.rows() == 0) continue;
    for (int p = from.first() - 1; p < from.end(); ++p) {
      const Subspace<S>& target = to.at(p + shift);
      if (target.is_whole()) continue;
      if (!target.contains(image<S>(m, from.at(p)))) return false;
    }
  }
  return true;
}

template <class S>
Flag<S> direct_sum(const std::vector<const Flag<S>*>& flags) {
  Index ambient = 0;
  int lo = INT_MAX;
  int hi = INT_MIN;
  for (const Flag<S>* f : flags) {
    ambient += f->ambient();
    if (f->ambient() == 0) continue;
    lo = std::min(lo, f->first());
    hi = std::max(hi, f->end());
  }
  if (lo > hi) return Flag<S>(ambient);
  return Flag<S>::tabulate(ambient, lo, hi, [&](int p) {
    std::vector<Matrix<S>> blocks;
    for (const Flag<S>* f : flags) blocks.push_back(f->at(p).basis());
    return Subspace<S>::span(direct_sum<S>(blocks));
  });
}

template <class S>
Filtration<S> direct_sum(const std::vector<const Filtration<S>*>& filtrations,
                         const std::vector<GradedShape>& shapes) {
  const GradedShape total = direct_sum(shapes);
  std::vector<Flag<S>> flags;
  for (int n = total.lo; n <= total.hi(); ++n) {
    std::vector<const Flag<S>*> parts;
    for (const auto* f : filtrations) parts.push_back(&f->flag(n));
    flags.push_back(direct_sum<S>(parts));
  }
  return Filtration<S>(total.lo, std::move(flags));
}

Flag<Gaussian> to_gaussian(const Flag<Rational>& f) {
  std::vector<Subspace<Gaussian>> levels;
  for (const auto& l : f.levels()) levels.push_back(to_gaussian(l));
  return Flag<Gaussian>(f.ambient(), f.first(), std::move(levels));
}

Filtration<Gaussian> to_gaussian(const Filtration<Rational>& f) {
  std::vector<Flag<Gaussian>> flags;
  for (const auto& fl : f.flags()) flags.push_back(to_gaussian(fl));
  return Filtration<Gaussian>(f.lo(), std::move(flags));
}

#define HODGEWORKS_INSTANTIATE(S)                                                         \
  template class Flag<S>;                                                                 \
  template class Filtration<S>;                                                           \
  template bool preserves(const GradedMap<S>&, const Filtration<S>&, const Filtration<S>&, \
                          int);                                                           \
  template Flag<S> direct_sum(const std::vector<const Flag<S>*>&);                        \
  template Filtration<S> direct_sum(const std::vector<const Filtration<S>*>&,             \
                                    const std::vector<GradedShape>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
