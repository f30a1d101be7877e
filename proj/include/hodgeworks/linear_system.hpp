#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hodgeworks/scalar.hpp"

namespace hodgeworks {

/// Sparse vector over Q: (index, value) pairs sorted by index, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

/// Incremental sparse Gaussian elimination for a system A x = b over Q.
/// Rows are reduced on insertion, so rank and consistency are always current.
class LinearSystem {
 public:
  explicit LinearSystem(int variables) : variables_(variables) {}

  int variables() const { return variables_; }
  int rank() const { return static_cast<int>(pivot_rows_.size()); }
  int nullity() const { return variables_ - rank(); }
  bool consistent() const { return consistent_; }

  /// Adds the equation row . x = rhs. Entries need not be sorted.
  void add_equation(SparseRow row, const Rational& rhs);

  /// A solution with the given values on free variables (zero by default).
  std::optional<std::vector<Rational>> solve(
      const std::function<Rational(int)>& free_value = nullptr) const;

  /// Free variables in increasing order.
  std::vector<int> free_variables() const;

 private:
  struct PivotRow {
    SparseRow row;  // leading entry is 1 at the pivot
    Rational rhs;
  };

  int variables_;
  bool consistent_ = true;
  std::map<int, PivotRow> pivot_rows_;
};

SparseRow normalize(SparseRow row);
/// a + factor * b.
SparseRow axpy(const SparseRow& a, const Rational& factor, const SparseRow& b);

}  // namespace hodgeworks
