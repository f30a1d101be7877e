#include "hodgeworks/solver.hpp"

#include <algorithm>

namespace hodgeworks {

template <class S>
std::vector<Matrix<S>> admissible_blocks(Index rows, Index cols, const std::vector<BlockConstraint<S>>& constraints,
                                         bool rational_only) {
  std::vector<Matrix<S>> out;
  if (rows == 0 || cols == 0) return out;
  // Equation a^T X v = 0 for a ⟂ target and v in source, with X vectorized row-major.
  std::vector<std::vector<S>> equations;
  for (const auto& c : constraints) {
    if (c.target.is_whole() || c.source.is_zero()) continue;
    const Matrix<S> ann = annihilator(c.target);
    const Matrix<S>& src = c.source.basis();
    for (Index a = 0; a < ann.rows(); ++a) {
      for (Index v = 0; v < src.rows(); ++v) {
        std::vector<S> eq(static_cast<std::size_t>(rows * cols));
        for (Index i = 0; i < rows; ++i) {
          if (is_zero(ann(a, i))) continue;
          for (Index j = 0; j < cols; ++j) eq[static_cast<std::size_t>(i * cols + j)] = ann(a, i) * src(v, j);
        }
        equations.push_back(std::move(eq));
      }
    }
  }
  Matrix<S> system = zeros<S>(static_cast<Index>(equations.size()), rows * cols);
  for (std::size_t e = 0; e < equations.size(); ++e) {
    for (Index x = 0; x < rows * cols; ++x) system(static_cast<Index>(e), x) = equations[e][static_cast<std::size_t>(x)];
  }
  const Subspace<S> sols = kernel<S>(system);
  for (Index b = 0; b < sols.dim(); ++b) {
    Matrix<S> m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) m(i, j) = sols.basis()(b, i * cols + j);
    }
    out.push_back(m);
  }
  if constexpr (ScalarTraits<S>::is_gaussian) {
    if (rational_only) {
      for (const auto& m : out) {
        if (!is_rational(m)) throw std::invalid_argument("admissible_blocks: constraints are not defined over Q");
      }
    } else {
      const std::size_t n = out.size();
      for (std::size_t b = 0; b < n; ++b) out.push_back(out[b] * Gaussian::i());
    }
  }
  return out;
}

template <class S>
std::vector<GradedMap<S>> admissible_maps(const FilteredComplex<S>& k, const FilteredComplex<S>& l, int degree,
                                          int shift, bool rational_only) {
  std::vector<GradedMap<S>> out;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    const Index rows = l.dim(n + degree);
    const Index cols = k.dim(n);
    if (rows == 0 || cols == 0) continue;
    std::vector<BlockConstraint<S>> cs;
    const auto add = [&](const Flag<S>& src, const Flag<S>& tgt, int s) {
      for (int p = src.first() - 1; p < src.end(); ++p) cs.push_back({src.at(p), tgt.at(p + s)});
    };
    add(k.filtration().flag(n), l.filtration().flag(n + degree), shift);
    if (k.hodge() && l.hodge()) add(k.hodge()->flag(n), l.hodge()->flag(n + degree), 0);
    for (auto& block : admissible_blocks<S>(rows, cols, cs, rational_only)) {
      GradedMap<S> f(k.shape(), l.shape(), degree);
      f.set(n, block);
      out.push_back(std::move(f));
    }
  }
  return out;
}

template <class S>
void flatten_into(const Matrix<S>& m, int& offset, SparseRow& out) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if constexpr (ScalarTraits<S>::is_gaussian) {
        if (!m(i, j).real().is_zero()) out.emplace_back(offset, m(i, j).real());
        if (!m(i, j).imag().is_zero()) out.emplace_back(offset + 1, m(i, j).imag());
        offset += 2;
      } else {
        if (!m(i, j).is_zero()) out.emplace_back(offset, m(i, j));
        ++offset;
      }
    }
  }
}

template <class S>
SparseRow flatten(const GradedMap<S>& f) {
  SparseRow out;
  int offset = 0;
  for (int n = f.source().lo; n <= f.source().hi(); ++n) flatten_into<S>(f.block(n), offset, out);
  return out;
}

int span_rank(const std::vector<SparseRow>& rows) {
  int vars = 0;
  for (const auto& row : rows) {
    for (const auto& entry : row) vars = std::max(vars, entry.first + 1);
  }
  LinearSystem system(vars);
  for (const auto& row : rows) system.add_equation(row, Rational(0));
  return system.rank();
}

std::vector<std::vector<Rational>> relations(const std::vector<SparseRow>& rows) {
  std::map<int, SparseRow> coordinates;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (const auto& [i, v] : rows[k]) coordinates[i].emplace_back(static_cast<int>(k), v);
  }
  LinearSystem system(static_cast<int>(rows.size()));
  for (auto& [i, row] : coordinates) system.add_equation(std::move(row), Rational(0));
  std::vector<std::vector<Rational>> out;
  for (const int v : system.free_variables()) {
    out.push_back(*system.solve([v](int k) { return Rational(k == v ? 1 : 0); }));
  }
  return out;
}

#define HODGEWORKS_INSTANTIATE(S)                                                                         \
  template std::vector<Matrix<S>> admissible_blocks(Index, Index, const std::vector<BlockConstraint<S>>&, \
                                                    bool);                                               \
  template std::vector<GradedMap<S>> admissible_maps(const FilteredComplex<S>&, const FilteredComplex<S>&, \
                                                     int, int, bool);                                    \
  template void flatten_into(const Matrix<S>&, int&, SparseRow&);                                        \
  template SparseRow flatten(const GradedMap<S>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
