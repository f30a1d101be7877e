#pragma once

#include <random>

#include "hodgeworks/filtered.hpp"

namespace hodgeworks {

/// Deterministic source of small exact random data.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  /// Small integer, zero with probability `sparsity`.
  Rational small_rational(double sparsity = 0.3);
  Gaussian small_gaussian(double sparsity = 0.3, double real_bias = 0.3);
  template <class S>
  S scalar(double sparsity = 0.3);
  template <class S>
  Matrix<S> matrix(Index rows, Index cols, double sparsity = 0.3);
  /// Invertible matrix built from random elementary operations.
  template <class S>
  Matrix<S> invertible(Index n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random subspace of v of dimension at most k.
template <class S>
Subspace<S> random_subspace(Rng& rng, const Subspace<S>& v, Index k);

/// Complex on degrees [lo, lo + degrees) with dimensions in [0, max_dim].
template <class S>
Complex<S> random_complex(Rng& rng, int lo, int degrees, int max_dim);

/// Decreasing flag with at most `levels` proper nonzero levels starting near `first`.
template <class S>
Flag<S> random_flag(Rng& rng, Index ambient, int first, int levels);

/// Random flags per degree, enlarged until d(F^p) ⊆ F^p.
template <class S>
Filtration<S> random_compatible_filtration(Rng& rng, const Complex<S>& k, int first, int levels);

struct FilteredShapeLimits {
  int max_degrees = 5;
  int max_dim = 6;
  int max_levels = 4;
  int level_offset = 2;  // first level drawn from [-offset, offset]
};

template <class S>
FilteredComplex<S> random_filtered_complex(Rng& rng, const FilteredShapeLimits& limits = {});

/// Random complex with independent compatible primary and hodge filtrations.
template <class S>
FilteredComplex<S> random_bifiltered_complex(Rng& rng, const FilteredShapeLimits& limits = {});

/// Uniformly drawn point of the space of filtered morphisms K -> L
/// (primary filtration shifted by `shift`).
template <class S>
GradedMap<S> random_filtered_morphism(Rng& rng, const FilteredComplex<S>& k, const FilteredComplex<S>& l,
                                      int shift = 0);

}  // namespace hodgeworks
