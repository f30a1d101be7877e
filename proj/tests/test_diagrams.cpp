#include <doctest.h>

#include "hodgeworks/diagrams.hpp"

using namespace hodgeworks;

using C = Gaussian;

namespace {

const ZigzagShape& hodge_shape() {
  static const ZigzagShape s = ZigzagShape::hodge(2);
  return s;
}

/// Random ho-morphism shifted by a scalar multiple of the identity; usually invertible.
std::optional<PreMorphism> random_automorphism(Rng& rng, const Diagram& x, int r) {
  PreMorphism f = random_ho_morphism(rng, x, x, r);
  PreMorphism one = PreMorphism::identity(x, r);
  one *= C(Rational(rng.uniform(2, 9)));
  f += one;
  for (const auto& m : f.f) {
    for (int n = m.source().lo; n <= m.source().hi(); ++n) {
      if (rank<C>(m.block(n)) != m.block(n).rows()) return std::nullopt;
    }
  }
  return f;
}

DiagramCylinder cylinder_of(const Diagram& x, int r) {
  const auto one = PreMorphism::identity(x, r);
  return diagram_double_cylinder(one, one, x, x, x);
}

}  // namespace

TEST_CASE("zigzag shapes and diagram validation") {
  const auto& s = hodge_shape();
  REQUIRE(s.size() == 3);
  CHECK(s.kinds[0] == VertexKind::Rational);
  CHECK(s.kinds[1] == VertexKind::Complex);
  CHECK(s.kinds[2] == VertexKind::Bifiltered);
  CHECK(s.degrees() == std::vector<int>{0, 1, 0});
  CHECK(ZigzagShape::hodge(4).arrows.size() == 4);
  CHECK_THROWS(ZigzagShape::hodge(3));
  ZigzagShape chain{{VertexKind::Complex, VertexKind::Complex, VertexKind::Complex}, {{0, 1}, {1, 2}}};
  CHECK_THROWS(chain.degrees());

  const auto id = Complex<C>(GradedShape{0, {1, 1}}, {{0, from_rows<C>({{1}})}});
  const auto plain = FilteredComplex<C>::trivially_filtered(id);
  const auto bif = FilteredComplex<C>(id, plain.filtration(), plain.filtration());
  const auto one = DiagramMap::identity(id.shape());
  CHECK_NOTHROW(Diagram(s, {plain, plain, bif}, {one, one}));
  CHECK_THROWS(Diagram(s, {plain, plain, plain}, {one, one}));
  CHECK_THROWS(Diagram(s, {plain, plain, bif}, {one}));
  const auto irrational = FilteredComplex<C>::trivially_filtered(
      Complex<C>(GradedShape{0, {1, 1}}, {{0, from_rows<C>({{C::i()}})}}));
  CHECK_THROWS(Diagram(s, {irrational, plain, bif}, {DiagramMap::zero(id.shape(), id.shape(), 0), one}));
  DiagramMap broken(id.shape(), id.shape(), 0);
  broken.set(0, from_rows<C>({{1}}));
  CHECK_THROWS(Diagram(s, {plain, plain, bif}, {broken, one}));
}

TEST_CASE("pre-morphism differential") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, hodge_shape());
    const auto y = random_diagram(rng, hodge_shape());
    CHECK(dpre(PreMorphism::identity(x, r), x, x).is_zero());
    const int n = rng.uniform(-2, 1);
    const auto f = random_premorphism(rng, x, y, n, r);
    CHECK(is_admissible(f, x, y));
    const auto df = dpre(f, x, y);
    CHECK(df.degree == n + 1);
    CHECK(dpre(df, x, y).is_zero());
  }

  // A strict morphism between diagrams with commuting comparisons.
  const auto x = random_diagram(rng, hodge_shape());
  std::vector<DiagramMap> twice;
  for (const auto& v : x.vertices()) twice.push_back(C(2) * DiagramMap::identity(v.shape()));
  const auto f = PreMorphism::strict(x, x, twice, 0);
  CHECK(is_ho_morphism(f, x, x));
}

TEST_CASE("ho-morphism algebra") {
  Rng rng(22);
  int inverted = 0;
  for (int t = 0; t < 30; ++t) {
    const int r = rng.uniform(0, 1);
    const auto& s = hodge_shape();
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto z = random_diagram(rng, s);
    const auto w = random_diagram(rng, s);
    const auto f = random_ho_morphism(rng, x, y, r);
    const auto g = random_ho_morphism(rng, y, z, r);
    const auto h = random_ho_morphism(rng, z, w, r);
    REQUIRE(is_ho_morphism(f, x, y));
    CHECK(compose(s, f, PreMorphism::identity(x, r)) == f);
    CHECK(compose(s, PreMorphism::identity(y, r), f) == f);
    const auto gf = compose(s, g, f);
    CHECK(is_ho_morphism(gf, x, z));
    CHECK(compose(s, h, gf) == compose(s, compose(s, h, g), f));

    if (auto a = random_automorphism(rng, x, r)) {
      ++inverted;
      const auto inv = invert(s, *a);
      CHECK(is_ho_morphism(inv, x, x));
      CHECK(invert(s, inv) == *a);
      CHECK(compose(s, inv, *a) == PreMorphism::identity(x, r));
      CHECK(compose(s, *a, inv) == PreMorphism::identity(x, r));
    }
  }
  CHECK(inverted > 10);
  const auto x = random_diagram(rng, hodge_shape());
  CHECK_THROWS(invert(hodge_shape(), PreMorphism::zero(x, x, 0, 0)));
}

TEST_CASE("homotopies of ho-morphisms") {
  Rng rng(23);
  const auto& s = hodge_shape();
  for (int t = 0; t < 20; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto z = random_diagram(rng, s);
    const auto f = random_ho_morphism(rng, x, y, r);
    CHECK(check_ho_homotopy(PreMorphism::zero(x, y, -1, r), f, f, x, y));

    // Homotopies through the cylinder: H k is a homotopy H j ≃ H i.
    const auto cyl = cylinder_of(x, r);
    const auto legs1 = disassemble(cyl, random_ho_morphism(rng, cyl.diagram, y, r));
    REQUIRE(check_ho_homotopy(legs1.h, legs1.u, legs1.v, x, y));
    const auto legs2 = disassemble(cyl, random_ho_morphism(rng, cyl.diagram, y, r));
    if (auto bridge = solve_ho_homotopy(legs1.v, legs2.u, x, y)) {
      CHECK(check_ho_homotopy(*bridge, legs1.v, legs2.u, x, y));
      CHECK(check_ho_homotopy(legs1.h + *bridge + legs2.h, legs1.u, legs2.v, x, y));
    }
    const auto g = random_ho_morphism(rng, y, z, r);
    CHECK(check_ho_homotopy(compose(s, g, legs1.h), compose(s, g, legs1.u), compose(s, g, legs1.v), x, z));
    const auto w = random_diagram(rng, s);
    const auto gp = random_ho_morphism(rng, w, x, r);
    CHECK(check_ho_homotopy(compose(s, legs1.h, gp), compose(s, legs1.u, gp), compose(s, legs1.v, gp), w, y));
    if (!legs1.u.is_zero()) CHECK_FALSE(check_ho_homotopy(legs1.h, legs1.u, legs1.u + legs1.v, x, y));
  }
}

TEST_CASE("diagram double cylinder") {
  Rng rng(24);
  const auto& s = hodge_shape();
  for (int t = 0; t < 20; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto z = random_diagram(rng, s);
    const auto w = random_diagram(rng, s);
    const auto f = random_ho_morphism(rng, x, y, r);
    const auto g = random_ho_morphism(rng, x, z, r);
    const auto c = diagram_double_cylinder(f, g, x, y, z);
    for (std::size_t u = 0; u < s.arrows.size(); ++u) {
      const auto& a = s.arrows[u];
      CHECK(commutator(c.diagram.phi(static_cast<int>(u)), c.diagram.vertex(a.source).complex(),
                       c.diagram.vertex(a.target).complex())
                .is_zero());
    }
    CHECK(is_ho_morphism(c.i, z, c.diagram));
    CHECK(is_ho_morphism(c.j, y, c.diagram));
    CHECK(check_ho_homotopy(c.k, compose(s, c.j, f), compose(s, c.i, g), x, c.diagram));

    const auto tmap = random_ho_morphism(rng, c.diagram, w, r);
    const auto legs = disassemble(c, tmap);
    CHECK(is_ho_morphism(legs.u, y, w));
    CHECK(is_ho_morphism(legs.v, z, w));
    CHECK(check_ho_homotopy(legs.h, compose(s, legs.u, f), compose(s, legs.v, g), x, w));
    CHECK(assemble(c, legs.h, legs.u, legs.v) == tmap);
    const auto h = random_premorphism(rng, x, w, -1, r);
    const auto u = random_ho_morphism(rng, y, w, r);
    const auto v = random_ho_morphism(rng, z, w, r);
    const auto back = disassemble(c, assemble(c, h, u, v));
    CHECK(back.h == h);
    CHECK(back.u == u);
    CHECK(back.v == v);

    // Strict legs give block-diagonal comparisons.
    const auto fs = PreMorphism::zero(x, y, 0, r);
    const auto gs = PreMorphism::zero(x, z, 0, r);
    const auto d = diagram_double_cylinder(fs, gs, x, y, z);
    for (std::size_t u2 = 0; u2 < s.arrows.size(); ++u2) {
      const int ui = static_cast<int>(u2);
      const auto& psi = d.diagram.phi(ui);
      for (int n = psi.source().lo; n <= psi.source().hi(); ++n) {
        CHECK(equal<C>(psi.block(n), direct_sum<C>({x.phi(ui).block(n + 1), y.phi(ui).block(n), z.phi(ui).block(n)})));
      }
    }

    // Cone: maps out of C(f) are pairs (h, v) with h : 0 ≃ v f.
    const auto cone = diagram_cone(f, x, y);
    const auto tc = random_ho_morphism(rng, cone.diagram, w, r);
    const auto cl = disassemble(cone, tc);
    CHECK(check_ho_homotopy(cl.h, PreMorphism::zero(x, w, 0, r), compose(s, cl.v, f), x, w));
    CHECK(assemble(cone, cl.h, cl.u, cl.v) == tc);
  }
}

TEST_CASE("factorization and rectification") {
  Rng rng(25);
  const auto& s = hodge_shape();
  for (int t = 0; t < 20; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto f = random_ho_morphism(rng, x, y, r);
    const auto fac = factorize(f, x, y);
    const auto& cyl = fac.cyl.diagram;
    CHECK(is_ho_morphism(fac.p, cyl, y));
    CHECK(compose(s, fac.p, fac.cyl.i) == f);
    CHECK(compose(s, fac.p, fac.cyl.j) == PreMorphism::identity(y, r));
    CHECK(check_ho_homotopy(fac.contraction, compose(s, fac.cyl.j, fac.p), PreMorphism::identity(cyl, r), cyl, cyl));
    CHECK(is_weak_equivalence(fac.cyl.j, y, cyl));
    CHECK(is_weak_equivalence(fac.p, cyl, y));
    for (int i = 0; i < s.size(); ++i) {
      CHECK(is_quasi_isomorphism(fac.cyl.j.f[static_cast<std::size_t>(i)], y.vertex(i).complex(),
                                 cyl.vertex(i).complex()));
    }
    const auto span = rectify(f, x, y);
    CHECK(span.verify(x, y));
    CHECK(check_ho_homotopy(PreMorphism::zero(x, y, -1, r), compose(s, span.p(), span.i()), f, x, y));

    if (auto a = random_automorphism(rng, x, r)) {
      const auto fa = factorize(*a, x, x);
      CHECK(is_weak_equivalence(fa.cyl.i, x, fa.cyl.diagram));
    }
  }
  const auto x = random_diagram(rng, s);
  const auto id = factorize(PreMorphism::identity(x, 0), x, x);
  CHECK(id.cyl.diagram == cylinder_of(x, 0).diagram);
}

TEST_CASE("maps between mapping cylinders") {
  Rng rng(26);
  const auto& s = hodge_shape();
  for (int t = 0; t < 15; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto w = random_diagram(rng, s);
    const auto f = random_ho_morphism(rng, x, y, r);
    const auto b = random_ho_morphism(rng, y, w, r);
    const auto g = compose(s, b, f);
    const auto one = PreMorphism::identity(x, r);
    const auto ff = factorize(f, x, y);
    const auto fg = factorize(g, x, w);
    const auto m = induced_cylinder_map(ff, fg, one, b);
    CHECK(is_ho_morphism(m, ff.cyl.diagram, fg.cyl.diagram));
    CHECK(compose(s, fg.p, m) == compose(s, b, ff.p));
    CHECK(compose(s, m, ff.cyl.i) == compose(s, fg.cyl.i, one));
    CHECK(compose(s, m, ff.cyl.j) == compose(s, fg.cyl.j, b));

    // a = b over f = g = 1.
    const auto a = random_ho_morphism(rng, x, w, r);
    const auto f1 = factorize(one, x, x);
    const auto g1 = factorize(PreMorphism::identity(w, r), w, w);
    const auto m1 = induced_cylinder_map(f1, g1, a, a);
    CHECK(is_ho_morphism(m1, f1.cyl.diagram, g1.cyl.diagram));
    CHECK(compose(s, g1.p, m1) == compose(s, a, f1.p));
    CHECK(induced_cylinder_map(f1, f1, one, one) == PreMorphism::identity(f1.cyl.diagram, r));

    std::vector<DiagramMap> strict_maps;
    for (const auto& leg : a.f) strict_maps.push_back(leg);
    const auto sa = PreMorphism::strict(x, w, strict_maps, r);
    if (is_ho_morphism(sa, x, w)) {
      const auto ms = induced_cylinder_map(f1, g1, sa, sa);
      for (const auto& leg : ms.legs) CHECK(leg.is_zero());
    }
    if (!g.is_zero()) CHECK_THROWS(induced_cylinder_map(ff, fg, one, b + b));
  }
}

TEST_CASE("rectification is compatible with homotopy and composition") {
  Rng rng(27);
  const auto& s = hodge_shape();
  for (int t = 0; t < 10; ++t) {
    const int r = rng.uniform(0, 1);
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto z = random_diagram(rng, s);
    const auto cx = cylinder_of(x, r);
    const auto hmap = random_ho_morphism(rng, cx.diagram, y, r);
    const auto f = compose(s, hmap, cx.i);
    const auto g = compose(s, hmap, cx.j);
    const auto ff = factorize(f, x, y);
    const auto fg = factorize(g, x, y);
    const auto fh = factorize(hmap, cx.diagram, y);
    const auto one = PreMorphism::identity(y, r);
    const auto fstar = induced_cylinder_map(ff, fh, cx.i, one);
    const auto gstar = induced_cylinder_map(fg, fh, cx.j, one);
    CHECK(compose(s, fstar, ff.cyl.i) == compose(s, fh.cyl.i, cx.i));
    CHECK(compose(s, fstar, ff.cyl.j) == fh.cyl.j);
    CHECK(compose(s, gstar, fg.cyl.i) == compose(s, fh.cyl.i, cx.j));
    CHECK(compose(s, gstar, fg.cyl.j) == fh.cyl.j);
    CHECK(check_ho_homotopy(compose(s, fh.cyl.i, cx.k), compose(s, fh.cyl.i, cx.j), compose(s, fh.cyl.i, cx.i), x,
                            fh.cyl.diagram));

    // Composite spans: (1, g)_* j_f = j_gf g and (j_gf p_g) i_g = j_gf g.
    const auto g2 = random_ho_morphism(rng, y, z, r);
    const auto f2 = random_ho_morphism(rng, x, y, r);
    const auto gf = compose(s, g2, f2);
    const auto fac_f = factorize(f2, x, y);
    const auto fac_g = factorize(g2, y, z);
    const auto fac_gf = factorize(gf, x, z);
    const auto a = induced_cylinder_map(fac_f, fac_gf, PreMorphism::identity(x, r), g2);
    const auto b = compose(s, fac_gf.cyl.j, g2);
    CHECK(compose(s, a, fac_f.cyl.j) == b);
    CHECK(compose(s, compose(s, fac_gf.cyl.j, fac_g.p), fac_g.cyl.i) == b);
  }
}

TEST_CASE("fibrant lifting") {
  Rng rng(28);
  const auto& s = hodge_shape();
  for (int t = 0; t < 10; ++t) {
    const int r = t % 2;
    const auto x = random_diagram(rng, s);
    const auto y = random_diagram(rng, s);
    const auto q = random_diagram(rng, s);
    const auto e = random_ho_morphism(rng, y, q, r);

    const auto id = fibrant_lift(PreMorphism::identity(y, r), e, y, y, q);
    REQUIRE(id.has_value());
    CHECK(id->g == e);
    CHECK(id->h.is_zero());

    // Along j : Y -> Cyl(f) the lift is e p up to homotopy.
    const auto f = random_ho_morphism(rng, x, y, r);
    const auto fac = factorize(f, x, y);
    const auto& cyl = fac.cyl.diagram;
    const auto lift = fibrant_lift(fac.cyl.j, e, y, cyl, q);
    REQUIRE(lift.has_value());
    CHECK(is_ho_morphism(lift->g, cyl, q));
    CHECK(check_ho_homotopy(lift->h, compose(s, lift->g, fac.cyl.j), e, y, q));
    CHECK(solve_ho_homotopy(lift->g, compose(s, e, fac.p), cyl, q).has_value());

    const auto other = fibrant_lift(fac.cyl.j, e, y, cyl, q, [&](int) { return rng.small_rational(0.3); });
    REQUIRE(other.has_value());
    CHECK(check_ho_homotopy(other->h, compose(s, other->g, fac.cyl.j), e, y, q));
    const auto bridge = solve_ho_homotopy(lift->g, other->g, cyl, q);
    REQUIRE(bridge.has_value());
    CHECK(check_ho_homotopy(*bridge, lift->g, other->g, cyl, q));
  }
}
