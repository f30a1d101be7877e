#pragma once

#include <optional>

#include "hodgeworks/filtered.hpp"

namespace hodgeworks {

/// T_r K: T^n = K^{n+1} with differential -d, primary F^p T^n = F^{p+r} K^{n+1};
/// the hodge filtration moves with the degree but keeps its index.
template <class S>
FilteredComplex<S> translate(const FilteredComplex<S>& k, int r);

/// h : K^n -> L^{n-1} (degree -1) with dh + hd = g - f and h(F^p) ⊆ F^{p-r}.
template <class S>
struct HomotopyCertificate {
  GradedMap<S> f;
  GradedMap<S> g;
  GradedMap<S> h;
  int r = 0;
};

/// Exact check of the chain identity and the filtration shift. Throws on
/// shapes that do not match K and L.
template <class S>
bool check_homotopy(const HomotopyCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l);

/// An r-homotopy f ≃ g found by linear algebra, or nothing when none exists.
template <class S>
std::optional<HomotopyCertificate<S>> solve_homotopy(const GradedMap<S>& f, const GradedMap<S>& g,
                                                     const FilteredComplex<S>& k, const FilteredComplex<S>& l, int r);

/// T_r X ⊕ Y ⊕ Z with D = [[-d, 0, 0], [-f, d, 0], [g, 0, d]].
/// i : Z -> third summand, j : Y -> second, k(x) = (x, 0, 0) is an r-homotopy jf ≃ ig.
template <class S>
struct DoubleCylinder {
  FilteredComplex<S> complex;
  std::vector<GradedShape> summands;  // T_r X, Y, Z
  GradedMap<S> i;
  GradedMap<S> j;
  GradedMap<S> k;
  int r = 0;
};

template <class S>
DoubleCylinder<S> double_cylinder(const GradedMap<S>& f, const GradedMap<S>& g, const FilteredComplex<S>& x,
                                  const FilteredComplex<S>& y, const FilteredComplex<S>& z, int r);

/// C(f) = Cyl(0, f) = T_r X ⊕ 0 ⊕ Y; `i` includes Y.
template <class S>
DoubleCylinder<S> cone(const GradedMap<S>& f, const FilteredComplex<S>& x, const FilteredComplex<S>& y, int r);

/// Cyl(K) = Cyl(1, 1) with p(x, y, z) = y + z.
template <class S>
struct Cylinder {
  DoubleCylinder<S> cyl;
  GradedMap<S> p;
};

template <class S>
Cylinder<S> cylinder(const FilteredComplex<S>& k, int r);

/// h(x, y, z) = (z, 0, 0), an r-homotopy jp ≃ 1 on Cyl(K).
template <class S>
HomotopyCertificate<S> cylinder_contraction(const Cylinder<S>& c);

/// t(x, y, z) = h(x) + u(y) + v(z) out of a double cylinder.
template <class S>
GradedMap<S> assemble(const DoubleCylinder<S>& c, const GradedMap<S>& h, const GradedMap<S>& u,
                      const GradedMap<S>& v);

/// (t k, t j, t i).
template <class S>
struct CylinderLegs {
  GradedMap<S> h;
  GradedMap<S> u;
  GradedMap<S> v;
};
template <class S>
CylinderLegs<S> disassemble(const DoubleCylinder<S>& c, const GradedMap<S>& t);

/// f : K -> L and g : L -> K with r-homotopies gf ≃ 1 and fg ≃ 1.
template <class S>
struct EquivalenceCertificate {
  GradedMap<S> f;
  GradedMap<S> g;
  HomotopyCertificate<S> gf;
  HomotopyCertificate<S> fg;
  int r = 0;
};

template <class S>
bool check_equivalence(const EquivalenceCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l);

/// Both legs are E_r-quasi-isomorphisms, a consequence of a valid certificate.
template <class S>
bool check_sr_subset_er(const EquivalenceCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l);

/// Certificate for the cylinder projection p : Cyl(K) -> K with inverse j.
template <class S>
EquivalenceCertificate<S> cylinder_equivalence(const Cylinder<S>& c, const FilteredComplex<S>& k);

}  // namespace hodgeworks
