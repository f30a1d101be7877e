#include "hodgeworks/random.hpp"

#include "hodgeworks/solver.hpp"

namespace hodgeworks {

Rational Rng::small_rational(double sparsity) {
  if (coin(sparsity)) return Rational(0);
  const long num = uniform(-3, 3);
  const long den = coin(0.2) ? uniform(1, 3) : 1;
  return Rational(num, den);
}

Gaussian Rng::small_gaussian(double sparsity, double real_bias) {
  if (coin(sparsity)) return Gaussian(0);
  if (coin(real_bias)) return Gaussian(small_rational(0.0));
  return Gaussian(small_rational(0.2), small_rational(0.4));
}

template <>
Rational Rng::scalar<Rational>(double sparsity) {
  return small_rational(sparsity);
}

template <>
Gaussian Rng::scalar<Gaussian>(double sparsity) {
  return small_gaussian(sparsity);
}

template <class S>
Matrix<S> Rng::matrix(Index rows, Index cols, double sparsity) {
  Matrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = scalar<S>(sparsity);
  }
  return m;
}

template <class S>
Matrix<S> Rng::invertible(Index n) {
  Matrix<S> m = identity<S>(n);
  if (n < 2) {
    if (n == 1) m(0, 0) = S(uniform(1, 3) * (coin() ? 1 : -1));
    return m;
  }
  const int steps = static_cast<int>(2 * n);
  for (int s = 0; s < steps; ++s) {
    const Index i = uniform(0, static_cast<int>(n) - 1);
    Index j = uniform(0, static_cast<int>(n) - 2);
    if (j >= i) ++j;
    const S c = scalar<S>(0.0);
    m.row(i) += c * m.row(j);
  }
  if (coin(0.3)) {
    const Index i = uniform(0, static_cast<int>(n) - 1);
    Index j = uniform(0, static_cast<int>(n) - 2);
    if (j >= i) ++j;
    m.row(i).swap(m.row(j));
  }
  return m;
}

template Matrix<Rational> Rng::matrix<Rational>(Index, Index, double);
template Matrix<Gaussian> Rng::matrix<Gaussian>(Index, Index, double);
template Matrix<Rational> Rng::invertible<Rational>(Index);
template Matrix<Gaussian> Rng::invertible<Gaussian>(Index);

}  // namespace hodgeworks

namespace hodgeworks {

template <class S>
Subspace<S> random_subspace(Rng& rng, const Subspace<S>& v, Index k) {
  if (v.dim() == 0 || k <= 0) return Subspace<S>::zero(v.ambient());
  return Subspace<S>::span(mul<S>(rng.matrix<S>(k, v.dim(), 0.3), v.basis()));
}

template <class S>
Complex<S> random_complex(Rng& rng, int lo, int degrees, int max_dim) {
  GradedShape shape{lo, {}};
  for (int k = 0; k < degrees; ++k) shape.dims.push_back(rng.uniform(0, max_dim));
  std::map<int, Matrix<S>> d;
  Matrix<S> previous = zeros<S>(shape.dim(lo), 0);
  for (int n = lo; n < shape.hi(); ++n) {
    // Rows killing the image of the previous differential keep d∘d = 0.
    const Matrix<S> ann = annihilator(image<S>(previous));
    const Index rank_cap = std::min<Index>(ann.rows(), rng.uniform(0, static_cast<int>(shape.dim(n + 1))));
    Matrix<S> r = zeros<S>(shape.dim(n + 1), ann.rows());
    const Matrix<S> low_rank = mul<S>(rng.matrix<S>(shape.dim(n + 1), rank_cap, 0.3),
                                      rng.matrix<S>(rank_cap, ann.rows(), 0.3));
    if (low_rank.size() > 0) r = low_rank;
    d[n] = mul<S>(r, ann);
    previous = d[n];
  }
  return Complex<S>(shape, d);
}

template <class S>
Flag<S> random_flag(Rng& rng, Index ambient, int first, int levels) {
  std::vector<Subspace<S>> chain;
  Subspace<S> current = Subspace<S>::whole(ambient);
  for (int k = 0; k < levels; ++k) {
    current = random_subspace(rng, current, rng.uniform(0, static_cast<int>(current.dim())));
    chain.push_back(current);
  }
  return Flag<S>(ambient, first, std::move(chain));
}

template <class S>
Filtration<S> random_compatible_filtration(Rng& rng, const Complex<S>& k, int first, int levels) {
  std::vector<Flag<S>> flags;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    Flag<S> raw = random_flag<S>(rng, k.dim(n), first + rng.uniform(-1, 1), levels);
    if (!flags.empty()) {
      const Flag<S>& below = flags.back();
      const int lo = std::min(raw.first(), below.first()) - 1;
      const int hi = std::max(raw.end(), below.end());
      raw = Flag<S>::tabulate(k.dim(n), lo, hi, [&](int p) {
        return sum(raw.at(p), image<S>(k.d(n - 1), below.at(p)));
      });
    }
    flags.push_back(std::move(raw));
  }
  return Filtration<S>(k.lo(), std::move(flags));
}

template <class S>
FilteredComplex<S> random_filtered_complex(Rng& rng, const FilteredShapeLimits& limits) {
  const int degrees = rng.uniform(1, limits.max_degrees);
  const int lo = rng.uniform(-2, 2);
  Complex<S> k = random_complex<S>(rng, lo, degrees, limits.max_dim);
  // L stored levels give L + 1 graded pieces per degree.
  const int levels = rng.uniform(1, std::max(1, limits.max_levels - 1));
  Filtration<S> f = random_compatible_filtration<S>(
      rng, k, rng.uniform(-limits.level_offset, limits.level_offset), levels);
  return FilteredComplex<S>(std::move(k), std::move(f));
}

template <class S>
FilteredComplex<S> random_bifiltered_complex(Rng& rng, const FilteredShapeLimits& limits) {
  FilteredComplex<S> k = random_filtered_complex<S>(rng, limits);
  const int levels = rng.uniform(1, std::max(1, limits.max_levels - 1));
  Filtration<S> g = random_compatible_filtration<S>(
      rng, k.complex(), rng.uniform(-limits.level_offset, limits.level_offset), levels);
  return FilteredComplex<S>(k.complex(), k.filtration(), std::move(g));
}

template <class S>
GradedMap<S> random_filtered_morphism(Rng& rng, const FilteredComplex<S>& k, const FilteredComplex<S>& l,
                                      int shift) {
  const auto basis = admissible_maps(k, l, 0, shift);
  const std::function<SparseRow(const GradedMap<S>&)> image = [&](const GradedMap<S>& f) {
    return flatten(commutator(f, k.complex(), l.complex()));
  };
  auto sol = solve_probed<GradedMap<S>, S>(basis, image, {}, GradedMap<S>(k.shape(), l.shape(), 0),
                                           [&](int) { return rng.small_rational(0.5); });
  return std::move(*sol.solution);
}

#define HODGEWORKS_INSTANTIATE(S)                                                        \
  template Subspace<S> random_subspace(Rng&, const Subspace<S>&, Index);                 \
  template Complex<S> random_complex(Rng&, int, int, int);                               \
  template Flag<S> random_flag(Rng&, Index, int, int);                                   \
  template Filtration<S> random_compatible_filtration(Rng&, const Complex<S>&, int, int); \
  template FilteredComplex<S> random_filtered_complex(Rng&, const FilteredShapeLimits&);   \
  template FilteredComplex<S> random_bifiltered_complex(Rng&, const FilteredShapeLimits&); \
  template GradedMap<S> random_filtered_morphism(Rng&, const FilteredComplex<S>&,          \
                                                 const FilteredComplex<S>&, int);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
