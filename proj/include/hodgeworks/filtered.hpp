#pragma once

#include <map>
#include <optional>

#include "hodgeworks/filtration.hpp"

namespace hodgeworks {

/// Complex with a primary decreasing filtration (the one that shift and
/// décalage act on) and an optional second "hodge" filtration left untouched
/// by them. Increasing filtrations W are stored as F^p = W_{-p}.
template <class S>
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Throws unless every filtration matches the shape and d(F^p) ⊆ F^p.
  FilteredComplex(Complex<S> complex, Filtration<S> filtration,
                  std::optional<Filtration<S>> hodge = std::nullopt);
  static FilteredComplex trivially_filtered(Complex<S> complex, int level = 0);

  const Complex<S>& complex() const { return complex_; }
  const GradedShape& shape() const { return complex_.shape(); }
  const Matrix<S>& d(int n) const { return complex_.d(n); }
  Index dim(int n) const { return complex_.dim(n); }
  int lo() const { return complex_.lo(); }
  int hi() const { return complex_.hi(); }
  const Filtration<S>& filtration() const { return filtration_; }
  const std::optional<Filtration<S>>& hodge() const { return hodge_; }
  bool bifiltered() const { return hodge_.has_value(); }

  FilteredComplex with_filtration(Filtration<S> f) const { return FilteredComplex(complex_, std::move(f), hodge_); }
  /// Forgets the hodge filtration.
  FilteredComplex primary_only() const { return FilteredComplex(complex_, filtration_); }
  /// The hodge filtration as the primary one.
  FilteredComplex hodge_only() const;

  friend bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
    return a.complex_ == b.complex_ && a.filtration_ == b.filtration_ && a.hodge_ == b.hodge_;
  }

 private:
  Complex<S> complex_;
  Filtration<S> filtration_;
  std::optional<Filtration<S>> hodge_;
};

/// Chain map preserving the primary filtration (shifted by `shift`) and the
/// hodge filtration when both ends carry one.
template <class S>
bool is_filtered_morphism(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l,
                          int shift = 0);

/// F^p / F^{p+1} with the induced differential.
template <class S>
Complex<S> graded(const FilteredComplex<S>& k, int p);

/// (F^a ∩ G^b) / (F^{a+1} ∩ G^b + F^a ∩ G^{b+1}) for the primary F and hodge G.
template <class S>
Complex<S> bigraded(const FilteredComplex<S>& k, int a, int b);
/// The map induced by f on bigraded pieces.
template <class S>
GradedMap<S> bigraded(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int a,
                      int b);

/// S F^p K^n = F^{p-n} K^n.
template <class S>
FilteredComplex<S> shift(const FilteredComplex<S>& k);
/// Dec F^p K^n = F^{p+n} K^n ∩ d^{-1}(F^{p+n+1} K^{n+1}).
template <class S>
FilteredComplex<S> decalage(const FilteredComplex<S>& k);
/// Dec* F^p K^n = d(F^{p+n-1} K^{n-1}) + F^{p+n} K^n.
template <class S>
FilteredComplex<S> dual_decalage(const FilteredComplex<S>& k);

/// One cell E_r^{p,q} = Z / B inside K^{p+q}.
template <class S>
struct PageCell {
  Subspace<S> numerator;
  Subspace<S> denominator;
  Quotient<S> quotient;
};

/// E_r with every cell in the support window and the differential d_r.
template <class S>
class SpectralPage {
 public:
  SpectralPage(const FilteredComplex<S>& k, int r);

  int stage() const { return r_; }
  std::pair<int, int> p_window() const { return {p_lo_, p_hi_}; }
  int n_lo() const { return n_lo_; }
  int n_hi() const { return n_hi_; }
  Index dim(int p, int q) const;
  /// Cell presentation; zero cells outside the window.
  const PageCell<S>& cell(int p, int q) const;
  /// d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} in quotient coordinates.
  Matrix<S> differential(int p, int q) const;
  /// Nonzero dimensions keyed by (p, q).
  std::map<std::pair<int, int>, Index> dims() const;

 private:
  Complex<S> complex_;
  int r_;
  int p_lo_;
  int p_hi_;
  int n_lo_;
  int n_hi_;
  std::map<std::pair<int, int>, PageCell<S>> cells_;
  PageCell<S> empty_;
};

template <class S>
SpectralPage<S> page(const FilteredComplex<S>& k, int r);

/// A stage past which every d_r vanishes.
template <class S>
int infinity_stage(const FilteredComplex<S>& k);

/// Map induced by a filtered morphism on E_r cells.
template <class S>
Matrix<S> page_map(const GradedMap<S>& f, const SpectralPage<S>& ek, const SpectralPage<S>& el, int p, int q);

/// True iff f induces isomorphisms on every E_{r+1} cell.
template <class S>
bool is_er_quis(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int r);

/// True iff d(F^p) ⊆ F^{p+r} everywhere.
template <class S>
bool is_in_cr(const FilteredComplex<S>& k, int r);

/// Q = S^r Dec^r K and the identity ε : Q -> K.
template <class S>
struct JrModel {
  FilteredComplex<S> model;
  GradedMap<S> epsilon;
};

template <class S>
JrModel<S> jr_model(const FilteredComplex<S>& k, int r);

/// r = 0: every H(Gr_a Gr^b f) is an isomorphism; r + 1: the same test after
/// décalage of the primary filtration on both ends.
template <class S>
bool is_er0_quis(const GradedMap<S>& f, const FilteredComplex<S>& k, const FilteredComplex<S>& l, int r);

/// F^p H^n = image of F^p ∩ Z^n in H^n, as subspaces of K^n containing B^n.
template <class S>
Subspace<S> induced_cohomology_level(const FilteredComplex<S>& k, int p, int n);
/// dim Gr^p H^n under the induced filtration.
template <class S>
Index graded_cohomology_dim(const FilteredComplex<S>& k, int p, int n);

FilteredComplex<Gaussian> to_gaussian(const FilteredComplex<Rational>& k);

}  // namespace hodgeworks
