#include "hodgeworks/linear_system.hpp"

#include <algorithm>

namespace hodgeworks {

SparseRow normalize(SparseRow row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  out.reserve(row.size());
  for (auto& [k, v] : row) {
    if (!out.empty() && out.back().first == k) {
      out.back().second += v;
    } else {
      out.emplace_back(k, std::move(v));
    }
    if (out.back().second.is_zero()) out.pop_back();
  }
  return out;
}

SparseRow axpy(const SparseRow& a, const Rational& factor, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, factor * ib->second);
      ++ib;
    } else {
      Rational v = ia->second + factor * ib->second;
      if (!v.is_zero()) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

void LinearSystem::add_equation(SparseRow row, const Rational& rhs) {
  row = normalize(std::move(row));
  Rational b = rhs;
  // Sweep indices upward, clearing every pivot index. A pivot row only touches
  // indices at or after its pivot, so cleared indices stay cleared.
  std::size_t pos = 0;
  while (pos < row.size()) {
    const int idx = row[pos].first;
    auto it = pivot_rows_.find(idx);
    if (it == pivot_rows_.end()) {
      ++pos;
      continue;
    }
    const Rational factor = -row[pos].second;
    row = axpy(row, factor, it->second.row);
    b += factor * it->second.rhs;
    pos = static_cast<std::size_t>(
        std::lower_bound(row.begin(), row.end(), idx + 1,
                         [](const auto& e, int k) { return e.first < k; }) -
        row.begin());
  }
  if (row.empty()) {
    if (!b.is_zero()) consistent_ = false;
    return;
  }
  const int pivot = row.front().first;
  const Rational inv = Rational(1) / row.front().second;
  for (auto& entry : row) entry.second *= inv;
  b *= inv;
  pivot_rows_.emplace(pivot, PivotRow{std::move(row), std::move(b)});
}

std::vector<int> LinearSystem::free_variables() const {
  std::vector<int> out;
  for (int k = 0; k < variables_; ++k) {
    if (!pivot_rows_.count(k)) out.push_back(k);
  }
  return out;
}

std::optional<std::vector<Rational>> LinearSystem::solve(
    const std::function<Rational(int)>& free_value) const {
  if (!consistent_) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(variables_));
  if (free_value) {
    for (int k : free_variables()) x[static_cast<std::size_t>(k)] = free_value(k);
  }
  for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
    Rational v = it->second.rhs;
    for (const auto& [k, c] : it->second.row) {
      if (k != it->first) v -= c * x[static_cast<std::size_t>(k)];
    }
    x[static_cast<std::size_t>(it->first)] = std::move(v);
  }
  return x;
}

}  // namespace hodgeworks
