#include <doctest.h>

#include "hodgeworks/linear_system.hpp"
#include "hodgeworks/random.hpp"
#include "hodgeworks/subspace.hpp"

using namespace hodgeworks;

using Q = Rational;
using G = Gaussian;

TEST_CASE("rational arithmetic stays reduced") {
  const Q a(6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((a + Q(3, 2)).is_zero());
  CHECK(Q::parse("10/4") == Q(5, 2));
  CHECK(Q::parse("-7") == Q(-7));
  CHECK_THROWS(Q(1, 0));
  CHECK_THROWS(Q(1) / Q(0));
  CHECK_THROWS(Q::parse("1/x"));
}

TEST_CASE("gaussian arithmetic and conjugation") {
  const G i = G::i();
  CHECK(i * i == G(-1));
  const G z(Q(1, 2), Q(-3));
  CHECK(z.conj().conj() == z);
  CHECK((z * z.conj()).is_rational());
  CHECK(z / z == G(1));
  CHECK(z.to_string() == "1/2-3/1*i");
  CHECK(G::parse("1/2-3/1*i") == z);
  CHECK(G::parse("1/2+-3*i") == z);
  CHECK(G::parse("i") == i);
  CHECK(G::parse("-i") == -i);
  CHECK(G::parse("2/3") == G(Q(2, 3)));
  CHECK(G::parse("5*i") == G(Q(0), Q(5)));
  CHECK(G(Q(2)).to_string() == "2/1");
}

TEST_CASE("image and kernel examples") {
  CHECK(image<Q>(identity<Q>(2)).is_whole());
  CHECK(kernel<Q>(zeros<Q>(2, 3)).dim() == 3);
  const auto line = image<Q>(from_rows<Q>({{1}, {1}}));
  CHECK(line.dim() == 1);
  CHECK(line == Subspace<Q>::span(from_rows<Q>({{1, 1}})));
}

TEST_CASE("sum and intersection examples") {
  const auto x = Subspace<Q>::span(from_rows<Q>({{1, 0}}));
  const auto y = Subspace<Q>::span(from_rows<Q>({{0, 1}}));
  const auto diag = Subspace<Q>::span(from_rows<Q>({{1, 1}}));
  CHECK(sum(x, x) == x);
  CHECK(intersect(x, y).is_zero());
  CHECK(sum(x, diag).is_whole());
  CHECK(intersect(x, diag).is_zero());
  CHECK(sum(x, diag).dim() + intersect(x, diag).dim() == x.dim() + diag.dim());
  CHECK_THROWS(sum(x, Subspace<Q>::zero(3)));
}

TEST_CASE("preimage examples") {
  const auto d = from_rows<Q>({{1, 0}});
  CHECK(preimage<Q>(d, Subspace<Q>::whole(1)).is_whole());
  CHECK(preimage<Q>(d, Subspace<Q>::zero(1)) == kernel<Q>(d));
  CHECK(preimage<Q>(d, Subspace<Q>::zero(1)) == Subspace<Q>::span(from_rows<Q>({{0, 1}})));
}

TEST_CASE("quotient examples") {
  const auto u = Subspace<Q>::whole(2);
  CHECK(quotient(u, u).dim == 0);
  const auto q0 = quotient(u, Subspace<Q>::zero(2));
  CHECK(q0.dim == 2);
  CHECK(rank<Q>(q0.projection) == 2);
  const auto q1 = quotient(u, Subspace<Q>::span(from_rows<Q>({{1, 1}})));
  CHECK(q1.dim == 1);
  CHECK(equal<Q>(mul<Q>(q1.projection, q1.section), identity<Q>(1)));
  CHECK(is_zero<Q>(mul<Q>(q1.projection, from_rows<Q>({{1}, {1}}))));
  CHECK_THROWS(quotient(Subspace<Q>::span(from_rows<Q>({{1, 0}})), Subspace<Q>::whole(2)));
}

TEST_CASE("conjugation of subspaces") {
  const auto s = Subspace<G>::span(from_rows<G>({{G(1), G::i()}}));
  CHECK(conjugate(s) == Subspace<G>::span(from_rows<G>({{G(1), -G::i()}})));
  CHECK(conjugate(conjugate(s)) == s);
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto r = to_gaussian(Subspace<Q>::span(rng.matrix<Q>(2, 4)));
    CHECK(conjugate(r) == r);
  }
  const auto rq = Subspace<Q>::span(from_rows<Q>({{1, 2}}));
  CHECK(conjugate(rq) == rq);
}

TEST_CASE_TEMPLATE("subspace lattice properties on random pairs", S, Rational, Gaussian) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Index n = rng.uniform(1, 6);
    const auto u = Subspace<S>::span(rng.template matrix<S>(rng.uniform(0, 4), n, 0.5));
    const auto v = Subspace<S>::span(rng.template matrix<S>(rng.uniform(0, 4), n, 0.5));
    const auto w = Subspace<S>::span(rng.template matrix<S>(rng.uniform(0, 4), n, 0.5));
    const auto s = sum(u, v);
    const auto i = intersect(u, v);
    REQUIRE(s.dim() + i.dim() == u.dim() + v.dim());
    REQUIRE(s.contains(u));
    REQUIRE(u.contains(i));
    REQUIRE(v.contains(i));
    // Modular law: u ⊆ w implies u + (v ∩ w) = (u + v) ∩ w.
    const auto uw = intersect(u, w);
    REQUIRE(sum(uw, intersect(v, w)) == intersect(sum(uw, v), w));
    // Mutual containment coincides with canonical equality.
    REQUIRE((u.contains(v) && v.contains(u)) == (u == v));
    const Matrix<S> m = rng.template matrix<S>(rng.uniform(1, 5), n, 0.5);
    REQUIRE(preimage<S>(m, image<S>(m)).is_whole());
    const auto target = Subspace<S>::span(rng.template matrix<S>(rng.uniform(0, 3), m.rows(), 0.5));
    const auto pre = preimage<S>(m, target);
    REQUIRE(target.contains(image<S>(m, pre)));
    REQUIRE(pre.contains(kernel<S>(m)));
    REQUIRE(kernel<S>(m).dim() + rank<S>(m) == n);
    if (s.contains(u)) {
      const auto q = quotient(s, u);
      REQUIRE(q.dim == s.dim() - u.dim());
      REQUIRE(equal<S>(mul<S>(q.projection, q.section), identity<S>(q.dim)));
      REQUIRE(is_zero<S>(mul<S>(q.projection, u.columns())));
    }
  }
}

TEST_CASE_TEMPLATE("determinants, ranks and inverses on random matrices", S, Rational, Gaussian) {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const Index n = rng.uniform(1, 4);
    const Matrix<S> a = rng.template matrix<S>(n, n, 0.4);
    const Matrix<S> b = rng.template matrix<S>(n, n, 0.4);
    REQUIRE(determinant<S>(mul<S>(a, b)) == determinant<S>(a) * determinant<S>(b));
    REQUIRE((rank<S>(a) == n) == !determinant<S>(a).is_zero());
    REQUIRE(rank<S>(mul<S>(a, b)) <= std::min(rank<S>(a), rank<S>(b)));
    if (rank<S>(a) == n) REQUIRE(equal<S>(mul<S>(a, inverse<S>(a)), identity<S>(n)));
  }
}

TEST_CASE("sparse linear system") {
  LinearSystem sys(3);
  sys.add_equation({{0, Q(1)}, {1, Q(1)}}, Q(2));
  sys.add_equation({{1, Q(1)}, {2, Q(-1)}}, Q(0));
  CHECK(sys.rank() == 2);
  CHECK(sys.nullity() == 1);
  auto x = sys.solve([](int) { return Q(5); });
  REQUIRE(x);
  CHECK((*x)[0] + (*x)[1] == Q(2));
  CHECK((*x)[1] == (*x)[2]);
  sys.add_equation({{0, Q(1)}, {2, Q(-1)}}, Q(7));
  CHECK(sys.nullity() == 0);
  sys.add_equation({{0, Q(2)}, {1, Q(2)}}, Q(5));
  CHECK_FALSE(sys.consistent());
}

TEST_CASE("sparse linear system agrees with dense elimination") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int vars = rng.uniform(1, 7);
    const int eqs = rng.uniform(1, 7);
    const Matrix<Q> a = rng.matrix<Q>(eqs, vars, 0.5);
    const Matrix<Q> b = rng.matrix<Q>(eqs, 1, 0.5);
    LinearSystem sys(vars);
    for (Index i = 0; i < eqs; ++i) {
      SparseRow row;
      for (Index j = 0; j < vars; ++j) row.emplace_back(static_cast<int>(j), a(i, j));
      sys.add_equation(row, b(i, 0));
    }
    REQUIRE(sys.rank() == rank<Q>(a));
    const auto dense = solve<Q>(a, b);
    REQUIRE(sys.consistent() == dense.has_value());
    if (!dense) continue;
    const auto x = sys.solve([&](int) { return rng.small_rational(0.0); });
    Matrix<Q> xv(vars, 1);
    for (int j = 0; j < vars; ++j) xv(j, 0) = (*x)[static_cast<std::size_t>(j)];
    REQUIRE(equal<Q>(mul<Q>(a, xv), b));
  }
}
