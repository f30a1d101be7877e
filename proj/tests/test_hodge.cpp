#include <doctest.h>

#include "hodgeworks/hodge.hpp"

using namespace hodgeworks;

using C = Gaussian;
using Q = Rational;

namespace {

Flag<C> line_flag(const Matrix<C>& row, int level) {
  return Flag<C>(row.cols(), level, {Subspace<C>::span(row)});
}

/// Independent purity oracle: the candidate pieces F^p ∩ conj F^q stack to a
/// basis of the whole space (identity comparison only).
bool brute_force_pure(const Flag<C>& f, int weight) {
  std::vector<Matrix<C>> rows;
  Index count = 0;
  for (int p = weight - 4; p <= weight + 4; ++p) {
    const Subspace<C> piece = intersect(f.at(p), conjugate(f.at(weight - p)));
    if (piece.is_zero()) continue;
    rows.push_back(piece.basis());
    count += piece.dim();
  }
  if (count != f.ambient()) return false;
  return rank<C>(vstack<C>(rows, f.ambient())) == f.ambient();
}

/// The Q-model of Hom(C, C) is spanned by 1 and i; this enumerates the Carlson
/// subspaces for one-dimensional H, H' by direct containment tests.
Index brute_force_ext1(const MixedHodgeStructure& h, const MixedHodgeStructure& h2) {
  const std::vector<C> candidates{C(1), C::i()};
  const auto w_ok = [&](const C& z) {
    for (int m = -6; m <= 6; ++m) {
      const Subspace<C> img = image<C>(from_rows<C>({{z}}), h.w_complex(m));
      if (!h2.w_complex(m).contains(img)) return false;
    }
    return true;
  };
  const auto f_ok = [&](const C& z) {
    for (int p = -6; p <= 6; ++p) {
      if (!h2.f(p).contains(image<C>(from_rows<C>({{z}}), h.f(p)))) return false;
    }
    return true;
  };
  // Numerator: real-coordinate vectors of W-compatible multipliers.
  std::vector<std::vector<Q>> numerator;
  std::vector<std::vector<Q>> denominator;
  for (const auto& z : candidates) {
    if (!w_ok(z)) continue;
    numerator.push_back({z.real(), z.imag()});
    if (f_ok(z)) denominator.push_back({z.real(), z.imag()});
    if (z.is_rational()) denominator.push_back({z.real(), z.imag()});
  }
  const auto rank_of = [](const std::vector<std::vector<Q>>& vs) {
    Matrix<Q> m = zeros<Q>(static_cast<Index>(vs.size()), 2);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      m(static_cast<Index>(i), 0) = vs[i][0];
      m(static_cast<Index>(i), 1) = vs[i][1];
    }
    return rank<Q>(m);
  };
  return rank_of(numerator) - rank_of(denominator);
}

/// Q(1) extended by Q(0): W_{-2} = <e1>, F^0 = <e2 + a e1>.
MixedHodgeStructure tate_extension(const C& a) {
  const Subspace<Q> e1 = Subspace<Q>::span(from_rows<Q>({{1, 0}}));
  return MixedHodgeStructure(Flag<Q>(2, 1, {e1, e1}), line_flag(from_rows<C>({{a, C(1)}}), 0));
}

}  // namespace

TEST_CASE("pure Hodge structures") {
  CHECK(is_pure_hs(tate(0), 0).pure);
  CHECK_FALSE(is_pure_hs(tate(0), 2).pure);
  const auto q1 = is_pure_hs(tate(-1), 2);
  CHECK(q1.pure);
  CHECK(q1.hodge_numbers == std::map<std::pair<int, int>, Index>{{{1, 1}, 1}});

  const Flag<C> curve = line_flag(from_rows<C>({{C(1), C::i()}}), 1);
  const auto h = is_pure_hs(MixedHodgeStructure(Flag<Q>::trivial(2, -1), curve), 1);
  CHECK(h.pure);
  CHECK(h.hodge_numbers == std::map<std::pair<int, int>, Index>{{{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(brute_force_pure(curve, 1));

  const Flag<C> real_line = line_flag(from_rows<C>({{C(1), C(0)}}), 1);
  CHECK_FALSE(is_pure_hs(MixedHodgeStructure(Flag<Q>::trivial(2, -1), real_line), 1).pure);
  CHECK_FALSE(brute_force_pure(real_line, 1));

  // A non-trivial comparison moves conjugation along with it.
  const Matrix<C> c = from_rows<C>({{C(1), C(2)}, {C::i(), C(1)}});
  const MixedHodgeStructure moved(Flag<Q>::trivial(2, -1), curve.transformed(c), c);
  CHECK(is_pure_hs(moved, 1).pure);
  CHECK_FALSE(is_pure_hs(MixedHodgeStructure(Flag<Q>::trivial(2, -1), curve, c), 1).pure);
  CHECK_THROWS_AS(MixedHodgeStructure(Flag<Q>::trivial(2, -1), curve, from_rows<C>({{1, 1}, {1, 1}})),
                  std::domain_error);
}

TEST_CASE("mixed Hodge structures and the Deligne splitting") {
  SUBCASE("pure structures split into their Hodge decomposition") {
    const Flag<C> curve = line_flag(from_rows<C>({{C(1), C::i()}}), 1);
    const MixedHodgeStructure h(Flag<Q>::trivial(2, -1), curve);
    REQUIRE(is_mhs(h).ok);
    const auto s = deligne_splitting(h);
    CHECK(s.pieces.size() == 2);
    CHECK(s.pieces.at({1, 0}) == curve.at(1));
    CHECK(s.pieces.at({0, 1}) == conjugate(curve.at(1)));
    CHECK(verify_splitting(h, s));
  }
  SUBCASE("Tate extension") {
    const C a(Q(1, 2), Q(3));
    const auto h = tate_extension(a);
    REQUIRE(is_mhs(h).ok);
    CHECK(h.weight_range() == std::pair<int, int>{-2, 0});
    const auto s = deligne_splitting(h);
    CHECK(s.pieces.size() == 2);
    // Hand solution: I^{0,0} = F^0 because conj F^0 + W_{-2} is everything.
    CHECK(s.pieces.at({0, 0}) == Subspace<C>::span(from_rows<C>({{a, C(1)}})));
    CHECK(s.pieces.at({-1, -1}) == Subspace<C>::span(from_rows<C>({{C(1), C(0)}})));
    CHECK(verify_splitting(h, s));
  }
  SUBCASE("direct sums split summandwise") {
    Rng rng(11);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_mhs(rng);
      const auto b = random_mhs(rng);
      const auto sa = deligne_splitting(a);
      const auto sb = deligne_splitting(b);
      const auto s = deligne_splitting(direct_sum({a, b}));
      for (int p = -4; p <= 4; ++p) {
        for (int q = -4; q <= 4; ++q) {
          const auto pa = sa.pieces.count({p, q}) ? sa.pieces.at({p, q}) : Subspace<C>::zero(a.dim());
          const auto pb = sb.pieces.count({p, q}) ? sb.pieces.at({p, q}) : Subspace<C>::zero(b.dim());
          const auto expected = Subspace<C>::span(direct_sum<C>({pa.basis(), pb.basis()}));
          const auto got = s.pieces.count({p, q}) ? s.pieces.at({p, q}) : Subspace<C>::zero(a.dim() + b.dim());
          CHECK(got == expected);
        }
      }
    }
  }
  SUBCASE("random structures satisfy all four invariants") {
    Rng rng(12);
    for (int t = 0; t < 40; ++t) {
      const auto h = random_mhs(rng);
      REQUIRE(is_mhs(h).ok);
      const auto s = deligne_splitting(h);
      CHECK(verify_splitting(h, s));
      Index dims = 0;
      for (const auto& [pq, piece] : s.pieces) dims += piece.dim();
      CHECK(dims == h.dim());
    }
  }
  SUBCASE("non-structures are rejected with the offending weight") {
    const MixedHodgeStructure bad(Flag<Q>::trivial(1, 0), Flag<C>::trivial(1, 1));
    const auto r = is_mhs(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.failing_weights == std::vector<int>{0});
    try {
      deligne_splitting(bad);
      CHECK(false);
    } catch (const NotMixedHodge& e) {
      CHECK(e.weight() == 0);
    }
  }
}

TEST_CASE("Hom and Ext of mixed Hodge structures") {
  SUBCASE("Carlson quotient for Tate objects") {
    CHECK(ext(tate(0), tate(0), 1).dimension == 0);
    CHECK(brute_force_ext1(tate(0), tate(0)) == 0);
    const auto e = ext(tate(0), tate(1), 1);
    CHECK(e.dimension == 1);
    CHECK(brute_force_ext1(tate(0), tate(1)) == 1);
    REQUIRE(e.representatives.size() == 1);
    const auto data = carlson_data(tate(0), tate(1));
    CHECK(data.numerator == 2);
    CHECK(data.rational == 1);
    CHECK(data.hodge == 0);
    CHECK(ext(tate(1), tate(0), 1).dimension == 0);
    CHECK(ext(tate(0), tate(0), 0).dimension == 1);
    CHECK(ext(tate(0), tate(1), 0).dimension == 0);
  }
  SUBCASE("higher Ext vanishes and Hom morphisms are strict") {
    Rng rng(13);
    for (int t = 0; t < 25; ++t) {
      const auto h = random_mhs(rng);
      const auto h2 = direct_sum({h, random_mhs(rng)});
      CHECK(ext(h, h2, 2).dimension == 0);
      CHECK(ext(h2, h, 3).dimension == 0);
      const auto homs = hom_mhs(h, h2);
      CHECK(homs.size() >= 1);  // the inclusion of the first summand
      for (const auto& x : homs) {
        const auto [lo, hi] = h2.weight_range();
        for (int m = lo - 1; m <= hi; ++m) {
          CHECK(image<Q>(x, h.w(m)) == intersect(image<Q>(x), h2.w(m)));
        }
        const auto xc = complexify(x, h, h2);
        for (int p = h2.hodge().first() - 1; p <= h2.hodge().end(); ++p) {
          CHECK(image<C>(xc, h.f(p)) == intersect(image<C>(xc), h2.f(p)));
        }
      }
      // Hom_MHS = Hom^W_k ∩ Hom^W_F, so Carlson's denominator has the expected size.
      const auto data = carlson_data(h, h2);
      CHECK(data.intersection == static_cast<Index>(homs.size()));
      CHECK(ext(h, h2, 1).dimension == data.numerator - data.rational - data.hodge + data.intersection);
    }
  }
}

TEST_CASE("diagrams of complexes of mixed Hodge structures") {
  Rng rng(14);
  for (int t = 0; t < 15; ++t) {
    const auto k = random_mhs_complex(rng);
    const Diagram d = hodge_diagram(k);
    const auto back = glue(d);
    REQUIRE(back.terms.size() == k.terms.size());
    for (std::size_t n = 0; n < k.terms.size(); ++n) {
      CHECK(back.terms[n].weight() == k.terms[n].weight());
      CHECK(back.terms[n].hodge() == k.terms[n].hodge());
      CHECK(equal(back.terms[n].comparison(), k.terms[n].comparison()));
    }
    CHECK(back.rational_complex() == k.rational_complex());
    const auto verdict = check_ahc(d);
    CHECK(verdict.pass());
    CHECK(check_mhc(s_w(d)).pass());
    CHECK(dec_w(s_w(d)) == d);
    for (int n = 0; n < 3; ++n) {
      const auto h = cohomology_mhs(d, n);
      REQUIRE(h.has_value());
      CHECK(is_mhs(*h).ok);
    }
  }
}

TEST_CASE("axiom checks on the projective line and negative controls") {
  const Diagram p1 = p1_model();
  const auto mhc = check_mhc(p1);
  CHECK(mhc.pass());
  const auto ahc = check_ahc(dec_w(p1));
  CHECK(ahc.pass());
  CHECK_FALSE(check_ahc(p1).pass());  // weight 2 sits at p = 0 in degree 2

  for (const std::string axiom : {"MH0", "MH1", "MH2", "AH0", "AH1", "AH2"}) {
    CAPTURE(axiom);
    const auto verdict = check_hodge(negative_control(axiom), axiom[0] == 'M' ? "mhc" : "ahc");
    CHECK_FALSE(verdict.pass());
    for (const auto& a : verdict.axioms) {
      CAPTURE(a.axiom);
      CHECK(a.pass == (a.axiom != axiom));
      CHECK(a.witnesses.empty() == a.pass);
    }
  }
  const auto mh2 = check_mhc(negative_control("MH2")).axiom("MH2").witnesses;
  REQUIRE(mh2.size() == 1);
  CHECK(mh2[0].degree == 2);
  CHECK(mh2[0].level == 0);
  const auto ah1 = check_ahc(negative_control("AH1")).axiom("AH1").witnesses;
  REQUIRE_FALSE(ah1.empty());
  CHECK(ah1[0].stage == 1);
  CHECK(ah1[0].level == 0);
  CHECK(ah1[0].degree == 0);
}

TEST_CASE("MHC spectral sequences degenerate") {
  Rng rng(15);
  std::vector<Diagram> instances{p1_model()};
  for (int t = 0; t < 10; ++t) instances.push_back(s_w(hodge_diagram(random_mhs_complex(rng))));
  for (const auto& k : instances) {
    REQUIRE(check_mhc(k).pass());
    const auto& kc = k.vertex(2).hodge_only();
    const auto total = [](const auto& e) {
      Index t = 0;
      for (const auto& [pq, d] : e.dims()) t += d;
      return t;
    };
    const int inf_c = infinity_stage(kc);
    CHECK(total(page(kc, 1)) == total(page(kc, std::max(inf_c, 1))));
    const auto kk = k.vertex(0).primary_only();
    const int inf_k = infinity_stage(kk);
    CHECK(total(page(kk, 2)) == total(page(kk, std::max(inf_k, 2))));
  }
}

TEST_CASE("weight shift and decalage on diagrams") {
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const Diagram k = random_diagram(rng, ZigzagShape::hodge(2));
    CHECK(dec_w(s_w(k)) == k);
  }
  // Zero differentials: both composites are the identity, and Gr^{SW}_p H^n = Gr^W_{p+n} H^n.
  for (int t = 0; t < 10; ++t) {
    MhsComplex h = random_mhs_complex(rng);
    h.d.clear();
    const Diagram k = hodge_diagram(h);
    CHECK(s_w(dec_w(k)) == k);
    const auto shifted = s_w(k).vertex(0);
    for (int n = 0; n <= 2; ++n) {
      for (int p = -4; p <= 4; ++p) {
        CHECK(graded(shifted, -p).dim(n) == graded(k.vertex(0), -(p + n)).dim(n));
      }
    }
  }
}

TEST_CASE("minimal models") {
  SUBCASE("zero differential") {
    const Diagram k = hodge_diagram(MhsComplex{0, {tate(0), direct_sum({tate(0), tate(-1)})}, {}});
    const auto m = minimal_model(k);
    CHECK(m.cohomology == k);
    CHECK(m.verify(k));
    CHECK(m.sigma == PreMorphism::identity(k, 0));
    CHECK(m.rho == PreMorphism::identity(k, 0));
  }
  SUBCASE("one surjective differential") {
    const auto two = direct_sum({tate(0), tate(0)});
    const Diagram k = hodge_diagram(MhsComplex{0, {two, tate(0)}, {{0, from_rows<Q>({{1, 1}})}}});
    const auto m = minimal_model(k);
    CHECK(m.cohomology.vertex(0).dim(0) == 1);
    CHECK(m.cohomology.vertex(0).dim(1) == 0);
    CHECK(m.verify(k));
  }
  SUBCASE("random absolute Hodge complexes") {
    Rng rng(17);
    for (int t = 0; t < 6; ++t) {
      const Diagram k = hodge_diagram(random_mhs_complex(rng));
      const auto m = minimal_model(k);
      CHECK(m.verify(k));
      CHECK(check_ahc(m.cohomology).pass());
    }
  }
}

TEST_CASE("hom-sets in the homotopy category") {
  SUBCASE("identity of Q(0)") {
    const Diagram k = hodge_diagram(MhsComplex{0, {tate(0)}, {}});
    const auto h = homset(k, k);
    CHECK(h.total == 1);
    CHECK(h.direct == 1);
    for (const auto& s : h.summands) CHECK(s.ext1 == 0);
  }
  SUBCASE("an extension class") {
    const Diagram k = hodge_diagram(MhsComplex{1, {tate(0)}, {}});
    const Diagram l = hodge_diagram(MhsComplex{0, {tate(1)}, {}});
    const auto h = homset(k, l);
    CHECK(h.total == 1);
    CHECK(h.direct == 1);
    Index ext_total = 0;
    for (const auto& s : h.summands) ext_total += s.ext1;
    CHECK(ext_total == 1);
  }
  SUBCASE("formula against the direct computation") {
    Rng rng(18);
    for (int t = 0; t < 8; ++t) {
      const auto pool = random_mhs_pool(rng);
      const Diagram k = hodge_diagram(random_mhs_complex(rng, pool, 2));
      const Diagram l = hodge_diagram(random_mhs_complex(rng, pool, 2));
      const auto h = homset(k, l);
      CHECK(h.total == h.direct);
    }
  }
}

TEST_CASE("closure under quasi-isomorphisms and Carlson gluing") {
  Rng rng(19);
  for (int t = 0; t < 5; ++t) {
    const Diagram k = hodge_diagram(random_mhs_complex(rng, 2));
    const Diagram l = hodge_diagram(random_mhs_complex(rng, 2));
    const auto one = PreMorphism::identity(k, 0);
    CHECK(closure_check(one, k, k, "ahc").consistent());

    const PreMorphism f = random_ho_morphism(rng, k, l, 0);
    const Factorization fac = factorize(f, k, l);
    const Diagram& cyl = fac.cyl.diagram;
    const auto report = closure_check(fac.cyl.j, l, cyl, "ahc");
    CHECK(report.weak_equivalence);
    CHECK(report.target.pass());
    CHECK(report.consistent());

    const MhsComplex glued = glue(cyl);
    for (const auto& term : glued.terms) CHECK(is_mhs(term).ok);
    CHECK(check_ahc(hodge_diagram(glued)).pass());

    // Quasi-isomorphisms between absolute Hodge complexes are exactly the E_{0,0} ones.
    for (const auto* g : {&fac.cyl.j, &fac.p}) {
      const Diagram& src = g == &fac.p ? cyl : l;
      const Diagram& tgt = g == &fac.p ? l : cyl;
      bool levelwise = true;
      for (int i = 0; i < 3; ++i) {
        levelwise = levelwise && is_quasi_isomorphism(g->f[static_cast<std::size_t>(i)], src.vertex(i).complex(),
                                                      tgt.vertex(i).complex());
      }
      CHECK(levelwise == is_weak_equivalence(*g, src, tgt));
    }
    bool levelwise = true;
    for (int i = 0; i < 3; ++i) {
      levelwise = levelwise &&
                  is_quasi_isomorphism(f.f[static_cast<std::size_t>(i)], k.vertex(i).complex(), l.vertex(i).complex());
    }
    CHECK(levelwise == is_weak_equivalence(f, k, l));
  }
}
