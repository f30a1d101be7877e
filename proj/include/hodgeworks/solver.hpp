#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hodgeworks/filtered.hpp"
#include "hodgeworks/linear_system.hpp"

namespace hodgeworks {

/// Inclusion requirement X(source) ⊆ target on a single block X.
template <class S>
struct BlockConstraint {
  Subspace<S> source;
  Subspace<S> target;
};

/// A Q-basis of the rows x cols matrices meeting every constraint. Over the
/// Gaussians the basis is {B, iB} for a Q(i)-basis B unless `rational_only`,
/// in which case the constraints must be defined over Q.
template <class S>
std::vector<Matrix<S>> admissible_blocks(Index rows, Index cols, const std::vector<BlockConstraint<S>>& constraints,
                                         bool rational_only = false);

/// Maps K -> L of the given degree with f(F^p) ⊆ F^{p+shift} on primary
/// filtrations and f(G^p) ⊆ G^p on hodge filtrations when both carry one.
/// Each basis element is supported in a single source degree.
template <class S>
std::vector<GradedMap<S>> admissible_maps(const FilteredComplex<S>& k, const FilteredComplex<S>& l, int degree,
                                          int shift, bool rational_only = false);

/// Coordinates of every entry in block order; Gaussian entries take two slots.
template <class S>
void flatten_into(const Matrix<S>& m, int& offset, SparseRow& out);
template <class S>
SparseRow flatten(const GradedMap<S>& f);

/// Rank over Q of a family of sparse vectors.
int span_rank(const std::vector<SparseRow>& rows);
/// Basis of {c : Σ c_k rows_k = 0}.
std::vector<std::vector<Rational>> relations(const std::vector<SparseRow>& rows);

/// Result of solving op(x) = rhs over the span of a Q-basis.
template <class X>
struct ProbeSolution {
  std::optional<X> solution;
  int rank = 0;
  int nullity = 0;
};

/// Solves op(Σ c_k basis_k) = rhs for rational c, where `image` returns the
/// flattened op(basis_k). `zero` is the additive identity of X; free
/// coordinates take `free_value` (zero by default).
template <class X, class S>
ProbeSolution<X> solve_probed(const std::vector<X>& basis, const std::function<SparseRow(const X&)>& image,
                              const SparseRow& rhs, X zero,
                              const std::function<Rational(int)>& free_value = nullptr) {
  std::map<int, SparseRow> rows;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (auto& [i, v] : image(basis[k])) rows[i].emplace_back(static_cast<int>(k), v);
  }
  std::map<int, Rational> target;
  for (const auto& [i, v] : rhs) target[i] = v;
  for (const auto& [i, v] : target) rows.try_emplace(i);
  LinearSystem system(static_cast<int>(basis.size()));
  for (auto& [i, row] : rows) {
    auto it = target.find(i);
    system.add_equation(std::move(row), it == target.end() ? Rational(0) : it->second);
  }
  ProbeSolution<X> out;
  out.rank = system.rank();
  out.nullity = system.nullity();
  if (auto c = system.solve(free_value)) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((*c)[k].is_zero()) continue;
      X term = basis[k];
      term *= S((*c)[k]);
      zero += term;
    }
    out.solution = std::move(zero);
  }
  return out;
}

}  // namespace hodgeworks
