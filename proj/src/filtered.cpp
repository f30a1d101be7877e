#include "hodgeworks/filtered.hpp"

#include <algorithm>
#include <climits>

namespace hodgeworks {

namespace {

template <class S>
void check_filtration(const Complex<S>& k, const Filtration<S>& f, const char* name) {
  const int lo = std::min(k.lo(), f.lo());
  const int hi = std::max(k.hi(), f.hi());
  for (int n = lo; n <= hi; ++n) {
    if (f.flag(n).ambient() != k.dim(n)) {
      throw std::invalid_argument(std::string(name) + " filtration does not match the dimension in degree " +
                                  std::to_string(n));
    }
  }
  for (int n = k.lo(); n <= k.hi(); ++n) {
    const Flag<S>& flag = f.flag(n);
    if (k.d(n).rows() == 0) continue;
    for (int p = flag.first() - 1; p < flag.end(); ++p) {
      if (!f.at(p, n + 1).contains(image<S>(k.d(n), flag.at(p)))) {
        throw std::invalid_argument(std::string(name) + " filtration is not preserved by d in degree " +
                                    std::to_string(n) + " at level " + std::to_string(p));
      }
    }
  }
}

template <class S>
std::pair<int, int> merged_window(const Filtration<S>& a, const Filtration<S>& b) {
  const auto [alo, ahi] = a.graded_window();
  const auto [blo, bhi] = b.graded_window();
  return {std::min(alo, blo), std::max(ahi, bhi)};
}

template <class S>
bool is_isomorphism(const Matrix<S>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

}  // namespace

template <class S>
FilteredComplex<S>::FilteredComplex(Complex<S> complex, Filtration<S> filtration,
                                    std::optional<Filtration<S>> hodge)
    : complex_(std::move(complex)), filtration_(std::move(filtration)), hodge_(std::move(hodge)) {
  check_filtration(complex_, filtration_, "primary");
  if (hodge_) check_filtration(complex_, *hodge_, "hodge");
}

template <class S>
FilteredComplex<S> FilteredComplex<S>::trivially_filtered(Complex<S> complex, int level) {
  Filtration<S> f = Filtration<S>::trivial(complex.shape(), level);
  return FilteredComplex(std::move(complex), std::move(f));
}

template <class S>
FilteredComplex<S> FilteredComplex<S>::hodge_only() const {
  if (!hodge_) throw std::logic_error("complex carries no hodge filtration");
  return FilteredComplex(complex_, *hodge_);
}

template <class S>
bool is_filtered_morphism(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l,
                          int shift) {
  if (!(f.source() == k.shape()) || !(f.target() == l.shape())) return false;
  if (!is_chain_map(f, k.complex(), l.complex())) return false;
  if (!preserves(f, k.filtration(), l.filtration(), shift)) return false;
  if (k.hodge() && l.hodge() && !preserves(f, *k.hodge(), *l.hodge(), 0)) return false;
  return true;
}

namespace {

/// Complex of quotients num(n)/den(n) with the induced differential.
template <class S>
Complex<S> subquotient_complex(const Complex<S>& k, const std::function<Subspace<S>(int)>& num,
                               const std::function<Subspace<S>(int)>& den) {
  std::vector<Quotient<S>> qs;
  GradedShape shape{k.lo(), {}};
  for (int n = k.lo(); n <= k.hi(); ++n) {
    qs.push_back(quotient(num(n), den(n)));
    shape.dims.push_back(qs.back().dim);
  }
  std::map<int, Matrix<S>> d;
  for (int n = k.lo(); n < k.hi(); ++n) {
    const auto& src = qs[static_cast<std::size_t>(n - k.lo())];
    const auto& tgt = qs[static_cast<std::size_t>(n + 1 - k.lo())];
    d[n] = mul<S>(tgt.projection, mul<S>(k.d(n), src.section));
  }
  return Complex<S>(shape, d);
}

}  // namespace

template <class S>
Complex<S> graded(const FilteredComplex<S>& k, int p) {
  const auto& f = k.filtration();
  return subquotient_complex<S>(
      k.complex(), [&](int n) { return f.at(p, n); }, [&](int n) { return f.at(p + 1, n); });
}

namespace {

template <class S>
Subspace<S> bigraded_num(const FilteredComplex<S>& k, int a, int b, int n) {
  return intersect(k.filtration().at(a, n), k.hodge()->at(b, n));
}

template <class S>
Subspace<S> bigraded_den(const FilteredComplex<S>& k, int a, int b, int n) {
  return sum(intersect(k.filtration().at(a + 1, n), k.hodge()->at(b, n)),
             intersect(k.filtration().at(a, n), k.hodge()->at(b + 1, n)));
}

}  // namespace

template <class S>
Complex<S> bigraded(const FilteredComplex<S>& k, int a, int b) {
  if (!k.bifiltered()) throw std::invalid_argument("bigraded: complex carries no hodge filtration");
  return subquotient_complex<S>(
      k.complex(), [&](int n) { return bigraded_num(k, a, b, n); },
      [&](int n) { return bigraded_den(k, a, b, n); });
}

template <class S>
GradedMap<S> bigraded(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int a,
                      int b) {
  const Complex<S> gk = bigraded(k, a, b);
  const Complex<S> gl = bigraded(l, a, b);
  GradedMap<S> out(gk.shape(), gl.shape(), 0);
  for (int n = gk.lo(); n <= gk.hi(); ++n) {
    const Quotient<S> qk = quotient(bigraded_num(k, a, b, n), bigraded_den(k, a, b, n));
    const Quotient<S> ql = quotient(bigraded_num(l, a, b, n), bigraded_den(l, a, b, n));
    out[n] = mul<S>(ql.projection, mul<S>(f.block(n), qk.section));
  }
  return out;
}

template <class S>
FilteredComplex<S> shift(const FilteredComplex<S>& k) {
  return k.with_filtration(k.filtration().reindexed([](int n) { return -n; }));
}

namespace {

template <class S>
Filtration<S> tabulate_filtration(const FilteredComplex<S>& k, int extra_lo, int extra_hi,
                                  const std::function<Subspace<S>(int, int)>& level) {
  auto [glo, ghi] = k.filtration().graded_window();
  if (glo > ghi) {
    glo = 0;
    ghi = 0;
  }
  std::vector<Flag<S>> flags;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    flags.push_back(Flag<S>::tabulate(k.dim(n), glo - n - extra_lo, ghi - n + extra_hi,
                                      [&](int p) { return level(p, n); }));
  }
  return Filtration<S>(k.lo(), std::move(flags));
}

}  // namespace

template <class S>
FilteredComplex<S> decalage(const FilteredComplex<S>& k) {
  const auto& f = k.filtration();
  return k.with_filtration(tabulate_filtration<S>(k, 2, 2, [&](int p, int n) {
    return intersect(f.at(p + n, n), preimage<S>(k.d(n), f.at(p + n + 1, n + 1)));
  }));
}

template <class S>
FilteredComplex<S> dual_decalage(const FilteredComplex<S>& k) {
  const auto& f = k.filtration();
  return k.with_filtration(tabulate_filtration<S>(k, 2, 3, [&](int p, int n) {
    return sum(image<S>(k.d(n - 1), f.at(p + n - 1, n - 1)), f.at(p + n, n));
  }));
}

template <class S>
SpectralPage<S>::SpectralPage(const FilteredComplex<S>& k, int r)
    : complex_(k.complex()), r_(r), n_lo_(k.lo()), n_hi_(k.hi()) {
  if (r < 0) throw std::invalid_argument("page: stage must be nonnegative");
  std::tie(p_lo_, p_hi_) = k.filtration().graded_window();
  const auto& f = k.filtration();
  for (int n = n_lo_; n <= n_hi_; ++n) {
    if (k.dim(n) == 0) continue;
    for (int p = p_lo_; p <= p_hi_; ++p) {
      const Subspace<S> reach = preimage<S>(k.d(n), f.at(p + r, n + 1));
      Subspace<S> z = intersect(f.at(p, n), reach);
      Subspace<S> b = sum(intersect(f.at(p + 1, n), reach),
                          intersect(image<S>(k.d(n - 1), f.at(p - r + 1, n - 1)), f.at(p, n)));
      Quotient<S> q = quotient(z, b);
      cells_.emplace(std::make_pair(p, n - p), PageCell<S>{std::move(z), std::move(b), std::move(q)});
    }
  }
  empty_.quotient.projection = Matrix<S>(0, 0);
  empty_.quotient.section = Matrix<S>(0, 0);
}

template <class S>
const PageCell<S>& SpectralPage<S>::cell(int p, int q) const {
  auto it = cells_.find({p, q});
  return it == cells_.end() ? empty_ : it->second;
}

template <class S>
Index SpectralPage<S>::dim(int p, int q) const {
  return cell(p, q).quotient.dim;
}

template <class S>
Matrix<S> SpectralPage<S>::differential(int p, int q) const {
  const auto& src = cell(p, q);
  const auto& tgt = cell(p + r_, q - r_ + 1);
  if (src.quotient.dim == 0 || tgt.quotient.dim == 0) return zeros<S>(tgt.quotient.dim, src.quotient.dim);
  return mul<S>(tgt.quotient.projection, mul<S>(complex_.d(p + q), src.quotient.section));
}

template <class S>
std::map<std::pair<int, int>, Index> SpectralPage<S>::dims() const {
  std::map<std::pair<int, int>, Index> out;
  for (const auto& [pq, c] : cells_) {
    if (c.quotient.dim > 0) out[pq] = c.quotient.dim;
  }
  return out;
}

template <class S>
SpectralPage<S> page(const FilteredComplex<S>& k, int r) {
  return SpectralPage<S>(k, r);
}

template <class S>
int infinity_stage(const FilteredComplex<S>& k) {
  const auto [lo, hi] = k.filtration().graded_window();
  if (lo > hi) return 1;
  return hi - lo + 2;
}

template <class S>
Matrix<S> page_map(const GradedMap<S>& f, const SpectralPage<S>& ek, const SpectralPage<S>& el, int p, int q) {
  const auto& src = ek.cell(p, q);
  const auto& tgt = el.cell(p, q);
  if (src.quotient.dim == 0 || tgt.quotient.dim == 0) return zeros<S>(tgt.quotient.dim, src.quotient.dim);
  return mul<S>(tgt.quotient.projection, mul<S>(f.block(p + q), src.quotient.section));
}

template <class S>
bool is_er_quis(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int r) {
  if (!is_filtered_morphism(f, k.primary_only(), l.primary_only())) return false;
  const SpectralPage<S> ek(k, r + 1);
  const SpectralPage<S> el(l, r + 1);
  const auto [plo, phi] = merged_window(k.filtration(), l.filtration());
  const int nlo = std::min(k.lo(), l.lo());
  const int nhi = std::max(k.hi(), l.hi());
  for (int n = nlo; n <= nhi; ++n) {
    for (int p = plo; p <= phi; ++p) {
      if (!is_isomorphism(page_map(f, ek, el, p, n - p))) return false;
    }
  }
  return true;
}

template <class S>
bool is_in_cr(const FilteredComplex<S>& k, int r) {
  const auto& f = k.filtration();
  for (int n = k.lo(); n <= k.hi(); ++n) {
    if (k.d(n).rows() == 0) continue;
    const Flag<S>& flag = f.flag(n);
    for (int p = flag.first() - 1; p < flag.end(); ++p) {
      if (!f.at(p + r, n + 1).contains(image<S>(k.d(n), flag.at(p)))) return false;
    }
  }
  return true;
}

template <class S>
JrModel<S> jr_model(const FilteredComplex<S>& k, int r) {
  if (r < 0) throw std::invalid_argument("jr_model: stage must be nonnegative");
  FilteredComplex<S> q = k;
  for (int s = 0; s < r; ++s) q = decalage(q);
  for (int s = 0; s < r; ++s) q = shift(q);
  return {std::move(q), GradedMap<S>::identity(k.shape())};
}

template <class S>
bool is_er0_quis(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int r) {
  if (!k.bifiltered() || !l.bifiltered()) throw std::invalid_argument("is_er0_quis: bifiltered complexes required");
  if (r > 0) return is_er0_quis(f, decalage(k), decalage(l), r - 1);
  if (!is_filtered_morphism(f, k, l)) return false;
  const auto [alo, ahi] = merged_window(k.filtration(), l.filtration());
  const auto [blo, bhi] = merged_window(*k.hodge(), *l.hodge());
  for (int a = alo; a <= ahi; ++a) {
    for (int b = blo; b <= bhi; ++b) {
      const Complex<S> gk = bigraded(k, a, b);
      const Complex<S> gl = bigraded(l, a, b);
      if (!is_quasi_isomorphism(bigraded(f, k, l, a, b), gk, gl)) return false;
    }
  }
  return true;
}

template <class S>
Subspace<S> induced_cohomology_level(const FilteredComplex<S>& k, int p, int n) {
  return sum(intersect(k.filtration().at(p, n), k.complex().cycles(n)), k.complex().boundaries(n));
}

template <class S>
Index graded_cohomology_dim(const FilteredComplex<S>& k, int p, int n) {
  return induced_cohomology_level(k, p, n).dim() - induced_cohomology_level(k, p + 1, n).dim();
}

FilteredComplex<Gaussian> to_gaussian(const FilteredComplex<Rational>& k) {
  std::optional<Filtration<Gaussian>> h;
  if (k.hodge()) h = to_gaussian(*k.hodge());
  return FilteredComplex<Gaussian>(to_gaussian(k.complex()), to_gaussian(k.filtration()), std::move(h));
}

#define HODGEWORKS_INSTANTIATE(S)                                                                     \
  template class FilteredComplex<S>;                                                                  \
  template class SpectralPage<S>;                                                                     \
  template bool is_filtered_morphism(const GradedMap<S>&, const FilteredComplex<S>&,                  \
                                     const FilteredComplex<S>&, int);                                 \
  template Complex<S> graded(const FilteredComplex<S>&, int);                                         \
  template Complex<S> bigraded(const FilteredComplex<S>&, int, int);                                  \
  template GradedMap<S> bigraded(const GradedMap<S>&, const FilteredComplex<S>&,                      \
                                 const FilteredComplex<S>&, int, int);                                \
  template FilteredComplex<S> shift(const FilteredComplex<S>&);                                       \
  template FilteredComplex<S> decalage(const FilteredComplex<S>&);                                    \
  template FilteredComplex<S> dual_decalage(const FilteredComplex<S>&);                               \
  template SpectralPage<S> page(const FilteredComplex<S>&, int);                                      \
  template int infinity_stage(const FilteredComplex<S>&);                                             \
  template Matrix<S> page_map(const GradedMap<S>&, const SpectralPage<S>&, const SpectralPage<S>&,    \
                              int, int);                                                              \
  template bool is_er_quis(const GradedMap<S>&, const FilteredComplex<S>&, const FilteredComplex<S>&, \
                           int);                                                                      \
  template bool is_in_cr(const FilteredComplex<S>&, int);                                             \
  template JrModel<S> jr_model(const FilteredComplex<S>&, int);                                       \
  template bool is_er0_quis(const GradedMap<S>&, const FilteredComplex<S>&,                           \
                            const FilteredComplex<S>&, int);                                          \
  template Subspace<S> induced_cohomology_level(const FilteredComplex<S>&, int, int);                 \
  template Index graded_cohomology_dim(const FilteredComplex<S>&, int, int);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
