#include "hodgeworks/homotopy.hpp"

#include <stdexcept>

#include "hodgeworks/solver.hpp"

namespace hodgeworks {

namespace {

/// Flags of degree n + 1 placed in degree n, each reindexed by k.
template <class S>
Filtration<S> translated_filtration(const Filtration<S>& f, const GradedShape& shape, int k) {
  std::vector<Flag<S>> flags;
  for (int n = shape.lo; n <= shape.hi(); ++n) flags.push_back(f.flag(n).reindexed(k));
  return Filtration<S>(shape.lo - 1, std::move(flags));
}

/// Inclusion of summand `which` into the direct sum, degreewise.
template <class S>
GradedMap<S> inclusion(const std::vector<GradedShape>& shapes, const GradedShape& total, std::size_t which) {
  GradedMap<S> out(shapes[which], total, 0);
  for (int n = shapes[which].lo; n <= shapes[which].hi(); ++n) {
    Matrix<S> m = zeros<S>(total.dim(n), shapes[which].dim(n));
    const Index off = summand_offset(shapes, which, n);
    for (Index a = 0; a < m.cols(); ++a) m(off + a, a) = S(1);
    out.set(n, m);
  }
  return out;
}

template <class S>
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

template <class S>
FilteredComplex<S> translate(const FilteredComplex<S>& k, int r) {
  Complex<S> t = k.complex().translated();
  std::optional<Filtration<S>> hodge;
  if (k.hodge()) hodge = translated_filtration(*k.hodge(), k.shape(), 0);
  return FilteredComplex<S>(std::move(t), translated_filtration(k.filtration(), k.shape(), r), std::move(hodge));
}

template <class S>
bool check_homotopy(const HomotopyCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l) {
  const auto matches = [&](const GradedMap<S>& m, int degree) {
    return m.source() == k.shape() && m.target() == l.shape() && m.degree() == degree;
  };
  require<S>(matches(c.f, 0) && matches(c.g, 0) && matches(c.h, -1), "check_homotopy: shape mismatch");
  if (!commutator(c.h, k.complex(), l.complex()).equals(c.g - c.f)) return false;
  if (!preserves(c.h, k.filtration(), l.filtration(), -c.r)) return false;
  if (k.hodge() && l.hodge() && !preserves(c.h, *k.hodge(), *l.hodge(), 0)) return false;
  return true;
}

template <class S>
std::optional<HomotopyCertificate<S>> solve_homotopy(const GradedMap<S>& f, const GradedMap<S>& g,
                                                     const FilteredComplex<S>& k, const FilteredComplex<S>& l,
                                                     int r) {
  require<S>(f.source() == k.shape() && f.target() == l.shape() && g.source() == k.shape() &&
                 g.target() == l.shape(),
             "solve_homotopy: shape mismatch");
  const auto basis = admissible_maps(k, l, -1, -r);
  const std::function<SparseRow(const GradedMap<S>&)> image = [&](const GradedMap<S>& h) {
    return flatten(commutator(h, k.complex(), l.complex()));
  };
  auto sol = solve_probed<GradedMap<S>, S>(basis, image, flatten(GradedMap<S>(g - f)),
                                           GradedMap<S>(k.shape(), l.shape(), -1));
  if (!sol.solution) return std::nullopt;
  return HomotopyCertificate<S>{f, g, std::move(*sol.solution), r};
}

template <class S>
DoubleCylinder<S> double_cylinder(const GradedMap<S>& f, const GradedMap<S>& g, const FilteredComplex<S>& x,
                                  const FilteredComplex<S>& y, const FilteredComplex<S>& z, int r) {
  require<S>(f.source() == x.shape() && g.source() == x.shape(), "double_cylinder: source mismatch");
  require<S>(f.target() == y.shape() && g.target() == z.shape() && f.degree() == 0 && g.degree() == 0,
             "double_cylinder: target mismatch");
  const FilteredComplex<S> tx = translate(x, r);
  std::vector<GradedShape> shapes{tx.shape(), y.shape(), z.shape()};
  const GradedShape total = direct_sum(shapes);

  std::map<int, Matrix<S>> d;
  for (int n = total.lo; n < total.hi(); ++n) {
    Matrix<S> m = zeros<S>(total.dim(n + 1), total.dim(n));
    const auto put = [&](std::size_t row, std::size_t col, const Matrix<S>& b) {
      if (b.size() == 0) return;
      m.block(summand_offset(shapes, row, n + 1), summand_offset(shapes, col, n), b.rows(), b.cols()) = b;
    };
    if (tx.dim(n) > 0) {
      put(0, 0, tx.d(n));
      put(1, 0, -f.block(n + 1));
      put(2, 0, g.block(n + 1));
    }
    if (y.dim(n) > 0) put(1, 1, y.d(n));
    if (z.dim(n) > 0) put(2, 2, z.d(n));
    d[n] = m;
  }
  Complex<S> complex(total, d);

  const Filtration<S> primary = direct_sum<S>({&tx.filtration(), &y.filtration(), &z.filtration()}, shapes);
  std::optional<Filtration<S>> hodge;
  if (tx.hodge() && y.hodge() && z.hodge()) hodge = direct_sum<S>({&*tx.hodge(), &*y.hodge(), &*z.hodge()}, shapes);

  DoubleCylinder<S> out;
  out.complex = FilteredComplex<S>(std::move(complex), primary, std::move(hodge));
  out.summands = shapes;
  out.i = inclusion<S>(shapes, total, 2);
  out.j = inclusion<S>(shapes, total, 1);
  // k(x) = (x, 0, 0): X^n -> (T_r X)^{n-1} = X^n.
  out.k = GradedMap<S>(x.shape(), total, -1);
  const GradedMap<S> t0 = inclusion<S>(shapes, total, 0);
  for (int n = x.lo(); n <= x.hi(); ++n) out.k.set(n, t0.block(n - 1));
  out.r = r;
  return out;
}

template <class S>
DoubleCylinder<S> cone(const GradedMap<S>& f, const FilteredComplex<S>& x, const FilteredComplex<S>& y, int r) {
  const FilteredComplex<S> zero =
      x.bifiltered() && y.bifiltered()
          ? FilteredComplex<S>(Complex<S>::zero_differential({}), Filtration<S>(), Filtration<S>())
          : FilteredComplex<S>::trivially_filtered(Complex<S>::zero_differential({}));
  return double_cylinder(GradedMap<S>(x.shape(), zero.shape(), 0), f, x, zero, y, r);
}

template <class S>
Cylinder<S> cylinder(const FilteredComplex<S>& k, int r) {
  const GradedMap<S> one = GradedMap<S>::identity(k.shape());
  Cylinder<S> out{double_cylinder(one, one, k, k, k, r), {}};
  const auto& shapes = out.cyl.summands;
  out.p = GradedMap<S>(out.cyl.complex.shape(), k.shape(), 0);
  for (int n = k.lo(); n <= k.hi(); ++n) {
    Matrix<S> m = zeros<S>(k.dim(n), out.cyl.complex.dim(n));
    for (Index a = 0; a < k.dim(n); ++a) {
      m(a, summand_offset(shapes, 1, n) + a) = S(1);
      m(a, summand_offset(shapes, 2, n) + a) = S(1);
    }
    out.p.set(n, m);
  }
  return out;
}

template <class S>
HomotopyCertificate<S> cylinder_contraction(const Cylinder<S>& c) {
  const auto& shapes = c.cyl.summands;
  const GradedShape& total = c.cyl.complex.shape();
  GradedMap<S> h(total, total, -1);
  for (int n = total.lo; n <= total.hi(); ++n) {
    // (x, y, z) in degree n goes to (z, 0, 0) in degree n - 1, where T^{n-1} = K^n.
    Matrix<S> m = zeros<S>(total.dim(n - 1), total.dim(n));
    const Index dz = shapes[2].dim(n);
    for (Index a = 0; a < dz; ++a) m(summand_offset(shapes, 0, n - 1) + a, summand_offset(shapes, 2, n) + a) = S(1);
    h.set(n, m);
  }
  return {compose(c.cyl.j, c.p), GradedMap<S>::identity(total), std::move(h), c.cyl.r};
}

template <class S>
GradedMap<S> assemble(const DoubleCylinder<S>& c, const GradedMap<S>& h, const GradedMap<S>& u,
                      const GradedMap<S>& v) {
  const GradedShape& w = u.target();
  require<S>(h.target() == w && v.target() == w && h.degree() == -1 && u.degree() == 0 && v.degree() == 0,
             "assemble: mismatched legs");
  require<S>(u.source() == c.summands[1] && v.source() == c.summands[2] &&
                 h.source() == c.summands[0].translated(-1),
             "assemble: legs do not match the cylinder");
  GradedMap<S> t(c.complex.shape(), w, 0);
  for (int n = c.complex.lo(); n <= c.complex.hi(); ++n) {
    t.set(n, hstack<S>({h.block(n + 1), u.block(n), v.block(n)}, w.dim(n)));
  }
  return t;
}

template <class S>
CylinderLegs<S> disassemble(const DoubleCylinder<S>& c, const GradedMap<S>& t) {
  return {compose(t, c.k), compose(t, c.j), compose(t, c.i)};
}

template <class S>
bool check_equivalence(const EquivalenceCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l) {
  const auto is_pair = [](const HomotopyCertificate<S>& h, const GradedMap<S>& a, const GradedMap<S>& one) {
    return (h.f.equals(a) && h.g.equals(one)) || (h.f.equals(one) && h.g.equals(a));
  };
  if (!is_filtered_morphism(c.f, k, l) || !is_filtered_morphism(c.g, l, k)) return false;
  if (c.gf.r != c.r || c.fg.r != c.r) return false;
  if (!is_pair(c.gf, compose(c.g, c.f), GradedMap<S>::identity(k.shape()))) return false;
  if (!is_pair(c.fg, compose(c.f, c.g), GradedMap<S>::identity(l.shape()))) return false;
  return check_homotopy(c.gf, k, k) && check_homotopy(c.fg, l, l);
}

template <class S>
bool check_sr_subset_er(const EquivalenceCertificate<S>& c, const FilteredComplex<S>& k, const FilteredComplex<S>& l) {
  return is_er_quis(c.f, k, l, c.r) && is_er_quis(c.g, l, k, c.r);
}

template <class S>
EquivalenceCertificate<S> cylinder_equivalence(const Cylinder<S>& c, const FilteredComplex<S>& k) {
  const GradedMap<S> pj = compose(c.p, c.cyl.j);
  HomotopyCertificate<S> fg{pj, GradedMap<S>::identity(k.shape()), GradedMap<S>(k.shape(), k.shape(), -1),
                            c.cyl.r};
  return {c.p, c.cyl.j, cylinder_contraction(c), std::move(fg), c.cyl.r};
}

#define HODGEWORKS_INSTANTIATE(S)                                                                            \
  template FilteredComplex<S> translate(const FilteredComplex<S>&, int);                                  \
  template bool check_homotopy(const HomotopyCertificate<S>&, const FilteredComplex<S>&,                  \
                               const FilteredComplex<S>&);                                                \
  template std::optional<HomotopyCertificate<S>> solve_homotopy(const GradedMap<S>&, const GradedMap<S>&, \
                                                                const FilteredComplex<S>&,                \
                                                                const FilteredComplex<S>&, int);          \
  template DoubleCylinder<S> double_cylinder(const GradedMap<S>&, const GradedMap<S>&,                    \
                                             const FilteredComplex<S>&, const FilteredComplex<S>&,        \
                                             const FilteredComplex<S>&, int);                             \
  template DoubleCylinder<S> cone(const GradedMap<S>&, const FilteredComplex<S>&, const FilteredComplex<S>&, \
                                  int);                                                                   \
  template Cylinder<S> cylinder(const FilteredComplex<S>&, int);                                          \
  template HomotopyCertificate<S> cylinder_contraction(const Cylinder<S>&);                               \
  template GradedMap<S> assemble(const DoubleCylinder<S>&, const GradedMap<S>&, const GradedMap<S>&,      \
                                 const GradedMap<S>&);                                                    \
  template CylinderLegs<S> disassemble(const DoubleCylinder<S>&, const GradedMap<S>&);                    \
  template bool check_equivalence(const EquivalenceCertificate<S>&, const FilteredComplex<S>&,            \
                                  const FilteredComplex<S>&);                                             \
  template bool check_sr_subset_er(const EquivalenceCertificate<S>&, const FilteredComplex<S>&,           \
                                   const FilteredComplex<S>&);                                            \
  template EquivalenceCertificate<S> cylinder_equivalence(const Cylinder<S>&, const FilteredComplex<S>&);

HODGEWORKS_INSTANTIATE(Rational)
HODGEWORKS_INSTANTIATE(Gaussian)

}  // namespace hodgeworks
