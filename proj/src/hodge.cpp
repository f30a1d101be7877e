#include "hodgeworks/hodge.hpp"

#include <algorithm>
#include <functional>

#include "hodgeworks/solver.hpp"

namespace hodgeworks {

namespace {

using G = Gaussian;
using Q = Rational;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

bool invertible(const Matrix<G>& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix<G> inv(const Matrix<G>& m) { return m.size() == 0 ? m : inverse<G>(m); }

/// {A conj(v) : v in V}.
Subspace<G> conjugate_through(const Subspace<G>& v, const Matrix<G>& a) { return image<G>(a, conjugate(v)); }

Subspace<Q> to_rational(const Subspace<G>& s) { return Subspace<Q>::span(to_rational(s.basis())); }

Flag<Q> to_rational(const Flag<G>& f) {
  std::vector<Subspace<Q>> levels;
  for (const auto& l : f.levels()) levels.push_back(to_rational(l));
  return Flag<Q>(f.ambient(), f.first(), std::move(levels));
}

/// Image of a flag under a (not necessarily injective) projection.
Flag<G> pushed(const Flag<G>& f, const Matrix<G>& projection, const Subspace<G>& within) {
  return Flag<G>::tabulate(projection.rows(), f.first(), f.end() - 1,
                           [&](int p) { return image<G>(projection, intersect(f.at(p), within)); });
}

/// Composite H_0 -> H_s along 0 - 1 - ... - s, inverting backward arrows;
/// nothing unless every step is invertible.
std::optional<Matrix<G>> along_zigzag(const ZigzagShape& shape, Index dim0,
                                      const std::function<Matrix<G>(int)>& block) {
  Matrix<G> c = identity<G>(dim0);
  for (int v = 0; v + 1 < shape.size(); ++v) {
    bool found = false;
    for (std::size_t u = 0; u < shape.arrows.size() && !found; ++u) {
      const auto& a = shape.arrows[u];
      const bool forward = a.source == v && a.target == v + 1;
      const bool backward = a.source == v + 1 && a.target == v;
      if (!forward && !backward) continue;
      found = true;
      const Matrix<G> m = block(static_cast<int>(u));
      if (!invertible(m) || m.cols() != c.rows()) return std::nullopt;
      c = mul<G>(forward ? m : inv(m), c);
    }
    if (!found) throw std::invalid_argument("hodge: vertices are not joined in a zig-zag string");
  }
  return c;
}

void require_hodge_shape(const Diagram& k) {
  const auto& kinds = k.shape().kinds;
  require(kinds.size() >= 2 && kinds.front() == VertexKind::Rational && kinds.back() == VertexKind::Bifiltered,
          "hodge: diagram must run from a rational to a bifiltered vertex");
}

std::pair<int, int> weight_window(const Diagram& k) {
  int lo = 0;
  int hi = -1;
  for (const auto& v : k.vertices()) {
    const auto [a, b] = v.filtration().graded_window();
    if (a > b) continue;
    if (lo > hi) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
  return {lo, hi};
}

std::pair<int, int> degree_window(const Diagram& k) {
  int lo = k.vertex(0).lo();
  int hi = k.vertex(0).hi();
  for (const auto& v : k.vertices()) {
    lo = std::min(lo, v.lo());
    hi = std::max(hi, v.hi());
  }
  return {lo, hi};
}

Quotient<G> graded_quotient(const DiagramVertex& v, int a, int n) {
  return quotient(v.filtration().at(a, n), v.filtration().at(a + 1, n));
}

/// Gr_a of a filtered map in the coordinates of graded().
DiagramMap graded_map(const DiagramMap& f, const DiagramVertex& x, const DiagramVertex& y, int a) {
  const Complex<G> gx = graded(x, a);
  const Complex<G> gy = graded(y, a);
  DiagramMap out(gx.shape(), gy.shape(), 0);
  for (int n = gx.lo(); n <= gx.hi(); ++n) {
    out.set(n, mul<G>(graded_quotient(y, a, n).projection, mul<G>(f.block(n), graded_quotient(x, a, n).section)));
  }
  return out;
}

/// Gr_a of the primary filtration, filtered by the induced hodge filtration.
FilteredComplex<G> graded_hodge(const DiagramVertex& v, int a) {
  std::vector<Flag<G>> flags;
  for (int n = v.lo(); n <= v.hi(); ++n) {
    const Quotient<G> q = graded_quotient(v, a, n);
    flags.push_back(pushed(v.hodge()->flag(n), q.projection, v.filtration().at(a, n)));
  }
  return FilteredComplex<G>(graded(v, a), Filtration<G>(v.lo(), std::move(flags)));
}

DiagramVertex swapped(const DiagramVertex& v) { return DiagramVertex(v.complex(), *v.hodge(), v.filtration()); }

/// Induced filtration on H^n in the coordinates of quotient(Z, B).
Flag<G> cohomology_flag(const FilteredComplex<G>& k, int n) {
  const Quotient<G> q = quotient(k.complex().cycles(n), k.complex().boundaries(n));
  const Flag<G>& f = k.filtration().flag(n);
  return Flag<G>::tabulate(q.dim, f.first(), f.end() - 1, [&](int p) {
    return image<G>(q.projection, induced_cohomology_level(k, p, n));
  });
}

Index page_total(const SpectralPage<G>& e) {
  Index total = 0;
  for (const auto& [cell, d] : e.dims()) total += d;
  return total;
}

bool invertible_cell(const Matrix<G>& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

void quis_axiom(const Diagram& k, int r, AxiomVerdict& out) {
  for (std::size_t u = 0; u < k.shape().arrows.size(); ++u) {
    const auto& a = k.shape().arrows[u];
    const auto src = k.vertex(a.source).primary_only();
    const auto tgt = k.vertex(a.target).primary_only();
    const DiagramMap& phi = k.phi(static_cast<int>(u));
    if (is_er_quis(phi, src, tgt, r)) continue;
    out.pass = false;
    const SpectralPage<G> es = page(src, r + 1);
    const SpectralPage<G> et = page(tgt, r + 1);
    const int plo = std::min(es.p_window().first, et.p_window().first);
    const int phi_hi = std::max(es.p_window().second, et.p_window().second);
    const int nlo = std::min(es.n_lo(), et.n_lo());
    const int nhi = std::max(es.n_hi(), et.n_hi());
    bool located = false;
    for (int p = plo; p <= phi_hi && !located; ++p) {
      for (int n = nlo; n <= nhi && !located; ++n) {
        if (invertible_cell(page_map(phi, es, et, p, n - p))) continue;
        out.witnesses.push_back({out.axiom, n, -p, r + 1,
                                 "phi_" + std::to_string(u) + " is not an isomorphism on E_" + std::to_string(r + 1) +
                                     "^{" + std::to_string(p) + "," + std::to_string(n - p) + "}"});
        located = true;
      }
    }
    if (!located) out.witnesses.push_back({out.axiom, 0, 0, r + 1, "phi_" + std::to_string(u) + " is not a quasi-isomorphism"});
  }
}

/// Purity of H^n(Gr^W_p) at weight p + n (mhc) or p (ahc); non-invertible
/// graded comparisons are charged to the quasi-isomorphism axiom.
void purity_axiom(const Diagram& k, bool mhc, AxiomVerdict& zero, AxiomVerdict& pure) {
  const int s = k.shape().size() - 1;
  const auto [alo, ahi] = weight_window(k);
  const auto [nlo, nhi] = degree_window(k);
  for (int a = alo; a <= ahi; ++a) {
    std::vector<Complex<G>> gr;
    for (const auto& v : k.vertices()) gr.push_back(graded(v, a));
    std::vector<DiagramMap> maps;
    for (std::size_t u = 0; u < k.shape().arrows.size(); ++u) {
      const auto& arrow = k.shape().arrows[u];
      maps.push_back(graded_map(k.phi(static_cast<int>(u)), k.vertex(arrow.source), k.vertex(arrow.target), a));
    }
    const FilteredComplex<G> gh = graded_hodge(k.vertex(s), a);
    const int p = -a;
    for (int n = nlo; n <= nhi; ++n) {
      const auto c = along_zigzag(k.shape(), gr.front().betti(n), [&](int u) {
        const auto& arrow = k.shape().arrows[at(u)];
        return cohomology_map(maps[at(u)], gr[at(arrow.source)], gr[at(arrow.target)], n);
      });
      if (!c) {
        zero.pass = false;
        zero.witnesses.push_back({zero.axiom, n, p, -1, "H^n(Gr^W_p phi) is not invertible"});
        continue;
      }
      if (c->rows() == 0) continue;
      const int weight = mhc ? p + n : p;
      const Matrix<G> conjugation = mul<G>(*c, conj(inv(*c)));
      const PurityReport report = purity(cohomology_flag(gh, n), conjugation, weight);
      if (report.pure) continue;
      pure.pass = false;
      pure.witnesses.push_back({pure.axiom, n, p, -1,
                                "H^n(Gr^W_p) is not pure of weight " + std::to_string(weight)});
    }
  }
}

void strictness_axiom(const Diagram& k, AxiomVerdict& out) {
  const DiagramVertex& v = k.vertex(k.shape().size() - 1);
  const auto [alo, ahi] = v.filtration().graded_window();
  for (int a = alo; a <= ahi; ++a) {
    const FilteredComplex<G> gh = graded_hodge(v, a);
    for (int n = gh.lo(); n < gh.hi(); ++n) {
      const Matrix<G>& d = gh.d(n);
      const Subspace<G> im = image<G>(d);
      const Flag<G>& src = gh.filtration().flag(n);
      const Flag<G>& tgt = gh.filtration().flag(n + 1);
      const int qlo = std::min(src.first(), tgt.first()) - 1;
      const int qhi = std::max(src.end(), tgt.end());
      for (int q = qlo; q <= qhi; ++q) {
        if (image<G>(d, src.at(q)) == intersect(im, tgt.at(q))) continue;
        out.pass = false;
        out.witnesses.push_back({out.axiom, n, -a, -1,
                                 "d(F^" + std::to_string(q) + ") differs from im d ∩ F^" + std::to_string(q)});
      }
    }
  }
}

void degeneration(const FilteredComplex<G>& k, const std::string& sequence, AxiomVerdict& out) {
  const int inf = infinity_stage(k);
  if (page_total(page(k, 1)) == page_total(page(k, std::max(inf, 1)))) return;
  out.pass = false;
  for (int r = 1; r <= inf; ++r) {
    const SpectralPage<G> e = page(k, r);
    for (const auto& [cell, d] : e.dims()) {
      const auto [p, q] = cell;
      if (is_zero(e.differential(p, q))) continue;
      out.witnesses.push_back({out.axiom, p + q, p, r,
                               sequence + ": d_" + std::to_string(r) + " is nonzero on E^{" + std::to_string(p) + "," +
                                   std::to_string(q) + "}"});
      return;
    }
  }
  out.witnesses.push_back({out.axiom, 0, 0, -1, sequence + ": E_1 and E_inf differ"});
}

int slots(const PreMorphism& f) {
  int n = 0;
  const auto count = [&](const DiagramMap& m) {
    for (int d = m.source().lo; d <= m.source().hi(); ++d) n += 2 * static_cast<int>(m.block(d).size());
  };
  for (const auto& m : f.f) count(m);
  for (const auto& m : f.legs) count(m);
  return n;
}

SparseRow concat(SparseRow a, int offset, const SparseRow& b) {
  for (const auto& [i, v] : b) a.emplace_back(i + offset, v);
  return a;
}

SparseRow flatten_matrix(const Matrix<G>& m) {
  SparseRow out;
  int offset = 0;
  flatten_into<G>(m, offset, out);
  return out;
}

std::vector<BlockConstraint<G>> complex_weight_constraints(const MixedHodgeStructure& h,
                                                           const MixedHodgeStructure& h2) {
  std::vector<BlockConstraint<G>> out;
  const auto [a, b] = h.weight_range();
  for (int m = a - 1; m <= b; ++m) out.push_back({h.w_complex(m), h2.w_complex(m)});
  return out;
}

std::vector<BlockConstraint<Q>> rational_weight_constraints(const MixedHodgeStructure& h,
                                                            const MixedHodgeStructure& h2) {
  std::vector<BlockConstraint<Q>> out;
  const auto [a, b] = h.weight_range();
  for (int m = a - 1; m <= b; ++m) out.push_back({h.w(m), h2.w(m)});
  return out;
}

std::vector<BlockConstraint<G>> hodge_constraints(const MixedHodgeStructure& h, const MixedHodgeStructure& h2) {
  std::vector<BlockConstraint<G>> out;
  for (int p = h.hodge().first() - 1; p <= h.hodge().end(); ++p) out.push_back({h.f(p), h2.f(p)});
  return out;
}

/// The three Q-bases of Carlson's quotient, all as maps H_C -> H'_C.
struct HomBases {
  std::vector<Matrix<Q>> rational;
  std::vector<Matrix<G>> rational_c;
  std::vector<Matrix<G>> hodge;
  std::vector<Matrix<G>> numerator;
};

HomBases hom_bases(const MixedHodgeStructure& h, const MixedHodgeStructure& h2,
                   const std::vector<BlockConstraint<Q>>& extra) {
  HomBases out;
  auto rc = rational_weight_constraints(h, h2);
  rc.insert(rc.end(), extra.begin(), extra.end());
  out.rational = admissible_blocks<Q>(h2.dim(), h.dim(), rc);
  for (const auto& x : out.rational) out.rational_c.push_back(complexify(x, h, h2));
  auto wc = complex_weight_constraints(h, h2);
  out.numerator = admissible_blocks<G>(h2.dim(), h.dim(), wc);
  auto hc = hodge_constraints(h, h2);
  wc.insert(wc.end(), hc.begin(), hc.end());
  out.hodge = admissible_blocks<G>(h2.dim(), h.dim(), wc);
  return out;
}

std::vector<SparseRow> flattened(const std::vector<Matrix<G>>& ms) {
  std::vector<SparseRow> out;
  for (const auto& m : ms) out.push_back(flatten_matrix(m));
  return out;
}

}  // namespace

MixedHodgeStructure::MixedHodgeStructure(Flag<Q> weight, Flag<G> hodge, std::optional<Matrix<G>> comparison)
    : weight_(std::move(weight)), hodge_(std::move(hodge)) {
  const Index n = weight_.ambient();
  require(hodge_.ambient() == n, "MixedHodgeStructure: W and F live on spaces of different dimension");
  comparison_ = comparison ? *comparison : identity<G>(n);
  require(comparison_.rows() == n && comparison_.cols() == n, "MixedHodgeStructure: comparison has the wrong shape");
  if (!invertible(comparison_)) throw std::domain_error("MixedHodgeStructure: comparison is not invertible");
}

Subspace<G> MixedHodgeStructure::w_complex(int m) const { return image<G>(comparison_, to_gaussian(w(m))); }

Matrix<G> MixedHodgeStructure::conjugation() const { return mul<G>(comparison_, conj(inv(comparison_))); }

MixedHodgeStructure tate(int n) { return MixedHodgeStructure(Flag<Q>::trivial(1, 2 * n), Flag<G>::trivial(1, -n)); }

MixedHodgeStructure direct_sum(const std::vector<MixedHodgeStructure>& summands) {
  std::vector<const Flag<Q>*> ws;
  std::vector<const Flag<G>*> fs;
  std::vector<Matrix<G>> cs;
  for (const auto& h : summands) {
    ws.push_back(&h.weight());
    fs.push_back(&h.hodge());
    cs.push_back(h.comparison());
  }
  if (summands.empty()) return MixedHodgeStructure::zero();
  return MixedHodgeStructure(direct_sum<Q>(ws), direct_sum<G>(fs), direct_sum<G>(cs));
}

PurityReport purity(const Flag<G>& f, const Matrix<G>& conjugation, int weight) {
  PurityReport out;
  const Index n = f.ambient();
  if (n == 0) {
    out.pure = true;
    return out;
  }
  Subspace<G> total = Subspace<G>::zero(n);
  Index dims = 0;
  for (int p = weight - f.end() + 1; p <= f.end() - 1; ++p) {
    const Subspace<G> piece = intersect(f.at(p), conjugate_through(f.at(weight - p), conjugation));
    if (piece.is_zero()) continue;
    out.hodge_numbers[{p, weight - p}] = piece.dim();
    dims += piece.dim();
    total = sum(total, piece);
  }
  out.pure = dims == n && total.is_whole();
  return out;
}

PurityReport is_pure_hs(const MixedHodgeStructure& h, int weight) {
  return purity(h.hodge(), h.conjugation(), weight);
}

MhsReport is_mhs(const MixedHodgeStructure& h) {
  MhsReport out;
  if (h.dim() == 0) return out;
  const Matrix<G> a = h.conjugation();
  const auto [lo, hi] = h.weight_range();
  for (int m = lo; m <= hi; ++m) {
    const Subspace<G> wm = h.w_complex(m);
    const Quotient<G> q = quotient(wm, h.w_complex(m - 1));
    if (q.dim == 0) continue;
    const Flag<G> f = pushed(h.hodge(), q.projection, wm);
    const Matrix<G> ag = mul<G>(q.projection, mul<G>(a, conj(q.section)));
    PurityReport report = purity(f, ag, m);
    if (!report.pure) {
      out.ok = false;
      out.failing_weights.push_back(m);
    }
    out.graded[m] = std::move(report);
  }
  return out;
}

Index DeligneSplitting::dim(int p, int q) const {
  auto it = pieces.find({p, q});
  return it == pieces.end() ? 0 : it->second.dim();
}

DeligneSplitting deligne_splitting(const MixedHodgeStructure& h) {
  const MhsReport report = is_mhs(h);
  if (!report.ok) {
    const int m = report.failing_weights.front();
    throw NotMixedHodge(m, "deligne_splitting: Gr^W_" + std::to_string(m) + " is not pure of weight " +
                               std::to_string(m));
  }
  DeligneSplitting out;
  if (h.dim() == 0) return out;
  const Matrix<G> a = h.conjugation();
  const auto [wlo, whi] = h.weight_range();
  const auto cf = [&](int q) { return conjugate_through(h.f(q), a); };
  for (int p = h.hodge().first() - 1; p <= h.hodge().end() - 1; ++p) {
    for (int m = wlo; m <= whi; ++m) {
      const int q = m - p;
      const Subspace<G> wm = h.w_complex(m);
      Subspace<G> inner = intersect(cf(q), wm);
      for (int j = 2; m - j >= wlo; ++j) inner = sum(inner, intersect(cf(q - j + 1), h.w_complex(m - j)));
      Subspace<G> piece = intersect(intersect(h.f(p), wm), inner);
      if (!piece.is_zero()) out.pieces[{p, q}] = std::move(piece);
    }
  }
  return out;
}

bool verify_splitting(const MixedHodgeStructure& h, const DeligneSplitting& s) {
  const Index n = h.dim();
  Subspace<G> total = Subspace<G>::zero(n);
  Index dims = 0;
  for (const auto& [pq, piece] : s.pieces) {
    const auto [p, q] = pq;
    if (!intersect(h.w_complex(p + q), h.f(p)).contains(piece)) return false;
    total = sum(total, piece);
    dims += piece.dim();
  }
  if (dims != n || total.dim() != n) return false;
  const auto collect = [&](const std::function<bool(int, int)>& keep) {
    Subspace<G> out = Subspace<G>::zero(n);
    for (const auto& [pq, piece] : s.pieces) {
      if (keep(pq.first, pq.second)) out = sum(out, piece);
    }
    return out;
  };
  const auto [wlo, whi] = h.weight_range();
  for (int m = wlo - 1; m <= whi; ++m) {
    if (!(collect([m](int p, int q) { return p + q <= m; }) == h.w_complex(m))) return false;
  }
  for (int l = h.hodge().first() - 1; l <= h.hodge().end(); ++l) {
    if (!(collect([l](int p, int) { return p >= l; }) == h.f(l))) return false;
  }
  return true;
}

Matrix<G> complexify(const Matrix<Q>& x, const MixedHodgeStructure& h, const MixedHodgeStructure& h2) {
  return mul<G>(h2.comparison(), mul<G>(to_gaussian(x), inv(h.comparison())));
}

std::vector<Matrix<Q>> hom_mhs(const MixedHodgeStructure& h, const MixedHodgeStructure& h2,
                               const std::vector<BlockConstraint<Q>>& extra) {
  const HomBases b = hom_bases(h, h2, extra);
  std::vector<SparseRow> rows = flattened(b.rational_c);
  const auto hodge_rows = flattened(b.hodge);
  rows.insert(rows.end(), hodge_rows.begin(), hodge_rows.end());
  std::vector<Matrix<Q>> out;
  for (const auto& c : relations(rows)) {
    Matrix<Q> x = zeros<Q>(h2.dim(), h.dim());
    for (std::size_t k = 0; k < b.rational.size(); ++k) {
      if (!c[k].is_zero()) x += b.rational[k] * c[k];
    }
    out.push_back(std::move(x));
  }
  return out;
}

CarlsonData carlson_data(const MixedHodgeStructure& h, const MixedHodgeStructure& h2) {
  const HomBases b = hom_bases(h, h2, {});
  CarlsonData out;
  out.numerator = static_cast<Index>(b.numerator.size());
  out.rational = static_cast<Index>(b.rational.size());
  out.hodge = static_cast<Index>(b.hodge.size());
  std::vector<SparseRow> rows = flattened(b.rational_c);
  const auto hodge_rows = flattened(b.hodge);
  rows.insert(rows.end(), hodge_rows.begin(), hodge_rows.end());
  out.intersection = static_cast<Index>(relations(rows).size());
  return out;
}

ExtGroup ext(const MixedHodgeStructure& h, const MixedHodgeStructure& h2, int n) {
  require(n >= 0, "ext: negative degree");
  ExtGroup out;
  out.degree = n;
  if (n >= 2) return out;
  if (n == 0) {
    for (const auto& x : hom_mhs(h, h2)) out.representatives.push_back(complexify(x, h, h2));
    out.dimension = static_cast<Index>(out.representatives.size());
    return out;
  }
  const HomBases b = hom_bases(h, h2, {});
  LinearSystem span(static_cast<int>(2 * h.dim() * h2.dim()));
  for (const auto* family : {&b.rational_c, &b.hodge}) {
    for (const auto& m : *family) span.add_equation(flatten_matrix(m), Rational(0));
  }
  for (const auto& m : b.numerator) {
    LinearSystem trial = span;
    trial.add_equation(flatten_matrix(m), Rational(0));
    if (trial.rank() == span.rank()) continue;
    span = std::move(trial);
    out.representatives.push_back(m);
  }
  out.dimension = static_cast<Index>(out.representatives.size());
  return out;
}

GradedShape MhsComplex::shape() const {
  GradedShape out{lo, {}};
  for (const auto& t : terms) out.dims.push_back(t.dim());
  return out;
}

Complex<Q> MhsComplex::rational_complex() const { return Complex<Q>(shape(), d); }

Diagram hodge_diagram(const MhsComplex& k) {
  const GradedShape shape = k.shape();
  const Complex<Q> kq = k.rational_complex();
  std::vector<Flag<G>> w0;
  std::vector<Flag<G>> wc;
  std::vector<Flag<G>> fc;
  std::map<int, Matrix<G>> dc;
  DiagramMap back(shape, shape, 0);
  for (int n = k.lo; n <= k.hi(); ++n) {
    const auto& t = k.term(n);
    w0.push_back(to_gaussian(t.weight()));
    wc.push_back(t.weight_complex());
    fc.push_back(t.hodge());
    back.set(n, inv(t.comparison()));
    if (n < k.hi()) {
      dc[n] = mul<G>(k.term(n + 1).comparison(), mul<G>(to_gaussian(kq.d(n)), inv(t.comparison())));
    }
  }
  const Complex<G> k0 = to_gaussian(kq);
  const DiagramVertex v0(k0, Filtration<G>(k.lo, w0));
  const DiagramVertex v2(Complex<G>(shape, dc), Filtration<G>(k.lo, wc), Filtration<G>(k.lo, fc));
  return Diagram(ZigzagShape::hodge(2), {v0, v0, v2}, {DiagramMap::identity(shape), back});
}

MhsComplex glue(const Diagram& k) {
  require_hodge_shape(k);
  const DiagramVertex& v0 = k.vertex(0);
  const DiagramVertex& vs = k.vertex(k.shape().size() - 1);
  require(v0.shape() == vs.shape(), "glue: end vertices have different shapes");
  MhsComplex out;
  out.lo = v0.lo();
  for (int n = v0.lo(); n <= v0.hi(); ++n) {
    const auto c = along_zigzag(k.shape(), v0.dim(n), [&](int u) { return k.phi(u).block(n); });
    if (!c) throw std::invalid_argument("glue: comparison maps are not invertible in degree " + std::to_string(n));
    out.terms.emplace_back(to_rational(v0.filtration().flag(n)), vs.hodge()->flag(n), *c);
    if (n < v0.hi()) out.d[n] = to_rational(v0.d(n));
  }
  return out;
}

Diagram dec_w(const Diagram& k) {
  std::vector<DiagramVertex> vs;
  for (const auto& v : k.vertices()) vs.push_back(decalage(v));
  return Diagram(k.shape(), std::move(vs), k.comparisons());
}

Diagram s_w(const Diagram& k) {
  std::vector<DiagramVertex> vs;
  for (const auto& v : k.vertices()) vs.push_back(shift(v));
  return Diagram(k.shape(), std::move(vs), k.comparisons());
}

std::optional<MixedHodgeStructure> cohomology_mhs(const Diagram& k, int n) {
  require_hodge_shape(k);
  const DiagramVertex& v0 = k.vertex(0);
  const DiagramVertex& vs = k.vertex(k.shape().size() - 1);
  const auto c = along_zigzag(k.shape(), v0.complex().betti(n), [&](int u) {
    const auto& a = k.shape().arrows[at(u)];
    return cohomology_map(k.phi(u), k.vertex(a.source).complex(), k.vertex(a.target).complex(), n);
  });
  if (!c) return std::nullopt;
  return MixedHodgeStructure(to_rational(cohomology_flag(v0.primary_only(), n)), cohomology_flag(vs.hodge_only(), n),
                             *c);
}

bool HodgeVerdict::pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomVerdict& a) { return a.pass; });
}

const AxiomVerdict& HodgeVerdict::axiom(std::string_view name) const {
  for (const auto& a : axioms) {
    if (a.axiom == name) return a;
  }
  throw std::out_of_range("HodgeVerdict: no axiom " + std::string(name));
}

HodgeVerdict check_mhc(const Diagram& k) {
  require_hodge_shape(k);
  HodgeVerdict out{"mhc", {{"MH0", true, {}}, {"MH1", true, {}}, {"MH2", true, {}}}};
  quis_axiom(k, 1, out.axioms[0]);
  strictness_axiom(k, out.axioms[1]);
  purity_axiom(k, true, out.axioms[0], out.axioms[2]);
  return out;
}

HodgeVerdict check_ahc(const Diagram& k) {
  require_hodge_shape(k);
  HodgeVerdict out{"ahc", {{"AH0", true, {}}, {"AH1", true, {}}, {"AH2", true, {}}}};
  quis_axiom(k, 0, out.axioms[0]);
  const DiagramVertex& vs = k.vertex(k.shape().size() - 1);
  AxiomVerdict& ah1 = out.axioms[1];
  degeneration(k.vertex(0).primary_only(), "(K_k, W)", ah1);
  degeneration(vs.hodge_only(), "(K_C, F)", ah1);
  {
    const auto [lo, hi] = vs.filtration().graded_window();
    for (int a = lo; a <= hi; ++a) degeneration(graded_hodge(vs, a), "(Gr^W_" + std::to_string(-a) + " K_C, F)", ah1);
  }
  {
    const DiagramVertex sw = swapped(vs);
    const auto [lo, hi] = sw.filtration().graded_window();
    for (int b = lo; b <= hi; ++b) degeneration(graded_hodge(sw, b), "(Gr_F^" + std::to_string(b) + " K_C, W)", ah1);
  }
  purity_axiom(k, false, out.axioms[0], out.axioms[2]);
  return out;
}

HodgeVerdict check_hodge(const Diagram& k, std::string_view mode) {
  if (mode == "mhc") return check_mhc(k);
  if (mode == "ahc") return check_ahc(k);
  throw std::invalid_argument("check_hodge: mode must be mhc or ahc");
}

Diagram cohomology_diagram(const Diagram& k) {
  std::vector<DiagramVertex> vs;
  for (const auto& v : k.vertices()) {
    GradedShape shape{v.lo(), {}};
    std::vector<Flag<G>> w;
    std::vector<Flag<G>> f;
    const auto primary = v.primary_only();
    for (int n = v.lo(); n <= v.hi(); ++n) {
      shape.dims.push_back(v.complex().betti(n));
      w.push_back(cohomology_flag(primary, n));
      if (v.bifiltered()) f.push_back(cohomology_flag(v.hodge_only(), n));
    }
    std::optional<Filtration<G>> hodge;
    if (v.bifiltered()) hodge = Filtration<G>(v.lo(), std::move(f));
    vs.emplace_back(Complex<G>::zero_differential(shape), Filtration<G>(v.lo(), std::move(w)), std::move(hodge));
  }
  std::vector<DiagramMap> phis;
  for (std::size_t u = 0; u < k.shape().arrows.size(); ++u) {
    const auto& a = k.shape().arrows[u];
    DiagramMap m(vs[at(a.source)].shape(), vs[at(a.target)].shape(), 0);
    for (int n = m.source().lo; n <= m.source().hi(); ++n) {
      m.set(n, cohomology_map(k.phi(static_cast<int>(u)), k.vertex(a.source).complex(), k.vertex(a.target).complex(),
                              n));
    }
    phis.push_back(std::move(m));
  }
  return Diagram(k.shape(), std::move(vs), std::move(phis));
}

bool MinimalModel::verify(const Diagram& k) const {
  const Diagram& h = cohomology;
  if (!is_ho_morphism(sigma, h, k) || !is_ho_morphism(rho, k, h)) return false;
  if (!(compose(k.shape(), rho, sigma) == PreMorphism::identity(h, 0))) return false;
  if (!check_ho_homotopy(homotopy, compose(k.shape(), sigma, rho), PreMorphism::identity(k, 0), k, k)) return false;
  for (int i = 0; i < k.shape().size(); ++i) {
    const auto& hc = h.vertex(i).complex();
    const auto& kc = k.vertex(i).complex();
    if (!is_quasi_isomorphism(sigma.f[at(i)], hc, kc) || !is_quasi_isomorphism(rho.f[at(i)], kc, hc)) return false;
  }
  return true;
}

MinimalModel minimal_model(const Diagram& k) {
  MinimalModel out;
  out.cohomology = cohomology_diagram(k);
  const Diagram& h = out.cohomology;
  const auto& shape = k.shape();

  // σ: Dσ = 0 and each σ_i^n a section of Z^n -> H^n.
  const PreMorphism sigma0 = PreMorphism::zero(h, k, 0, 0);
  const int dslots = slots(dpre(sigma0, h, k));
  SparseRow sections;
  std::vector<Matrix<G>> projections;
  {
    int offset = 0;
    for (int i = 0; i < shape.size(); ++i) {
      const auto& v = k.vertex(i);
      for (int n = v.lo(); n <= v.hi(); ++n) {
        const Quotient<G> q = quotient(v.complex().cycles(n), v.complex().boundaries(n));
        projections.push_back(q.projection);
        flatten_into<G>(identity<G>(q.dim), offset, sections);
      }
    }
  }
  const std::function<SparseRow(const PreMorphism&)> sigma_image = [&](const PreMorphism& s) {
    SparseRow tail;
    int offset = 0;
    std::size_t idx = 0;
    for (int i = 0; i < shape.size(); ++i) {
      const auto& v = k.vertex(i);
      for (int n = v.lo(); n <= v.hi(); ++n) {
        flatten_into<G>(mul<G>(projections[idx++], s.f[at(i)].block(n)), offset, tail);
      }
    }
    return concat(flatten(dpre(s, h, k)), dslots, tail);
  };
  auto sigma = solve_probed<PreMorphism, G>(admissible_premorphisms(h, k, 0, 0), sigma_image,
                                            concat({}, dslots, sections), sigma0);
  if (!sigma.solution) throw std::logic_error("minimal_model: no filtered sections; internal inconsistency");
  out.sigma = std::move(*sigma.solution);

  // ρ: Dρ = 0 and ρσ = 1.
  const PreMorphism rho0 = PreMorphism::zero(k, h, 0, 0);
  const int rslots = slots(dpre(rho0, k, h));
  const std::function<SparseRow(const PreMorphism&)> rho_image = [&](const PreMorphism& r) {
    return concat(flatten(dpre(r, k, h)), rslots, flatten(compose(shape, r, out.sigma)));
  };
  auto rho = solve_probed<PreMorphism, G>(admissible_premorphisms(k, h, 0, 0), rho_image,
                                          concat({}, rslots, flatten(PreMorphism::identity(h, 0))), rho0);
  if (!rho.solution) throw std::logic_error("minimal_model: no inverse with rho sigma = 1; internal inconsistency");
  out.rho = std::move(*rho.solution);

  auto homotopy = solve_ho_homotopy(compose(shape, out.sigma, out.rho), PreMorphism::identity(k, 0), k, k);
  if (!homotopy) throw std::logic_error("minimal_model: sigma rho is not homotopic to 1; internal inconsistency");
  out.homotopy = std::move(*homotopy);
  return out;
}

Homset homset(const Diagram& k, const Diagram& l) {
  Homset out;
  out.direct = homotopy_class_dimension(cohomology_diagram(k), cohomology_diagram(l), 0);
  const auto [klo, khi] = degree_window(k);
  const auto [llo, lhi] = degree_window(l);
  const auto mhs = [](const Diagram& d, int n) {
    auto h = cohomology_mhs(d, n);
    if (!h) throw std::invalid_argument("homset: comparison maps are not quasi-isomorphisms");
    return *h;
  };
  for (int n = std::min(klo, llo); n <= std::max(khi, lhi + 1); ++n) {
    const MixedHodgeStructure hk = mhs(k, n);
    HomsetSummand s{n, static_cast<Index>(hom_mhs(hk, mhs(l, n)).size()), ext(hk, mhs(l, n - 1), 1).dimension};
    out.total += s.hom + s.ext1;
    out.summands.push_back(s);
  }
  return out;
}

ClosureReport closure_check(const PreMorphism& f, const Diagram& k, const Diagram& l, std::string_view mode) {
  require(mode == "ahc" ? f.r == 0 : f.r == 1, "closure_check: stage must be 0 for ahc and 1 for mhc");
  ClosureReport out;
  out.weak_equivalence = is_weak_equivalence(f, k, l);
  out.source = check_hodge(k, mode);
  out.target = check_hodge(l, mode);
  return out;
}

MixedHodgeStructure random_mhs(Rng& rng, const MhsLimits& limits) {
  struct Block {
    int weight;
    int p;
    int q;
  };
  std::vector<Block> blocks;
  const int count = rng.uniform(1, limits.max_blocks);
  for (int b = 0; b < count; ++b) {
    const int m = rng.uniform(limits.weight_lo, limits.weight_hi);
    const int half = m >= 0 ? m / 2 : -((-m + 1) / 2);  // floor(m / 2)
    const int p = m % 2 == 0 ? half + (rng.coin() ? 1 : 0) : half + 1;
    blocks.push_back({m, p, m - p});
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.weight < b.weight; });
  Index n = 0;
  for (const auto& b : blocks) n += b.p == b.q ? 1 : 2;
  const Matrix<G> basis = to_gaussian(rng.invertible<Q>(n));
  std::vector<int> weights;
  std::vector<std::pair<int, Vector<G>>> generators;  // (Hodge index, vector)
  Index col = 0;
  for (const auto& b : blocks) {
    Index lower = 0;
    while (lower < static_cast<Index>(weights.size()) && weights[static_cast<std::size_t>(lower)] < b.weight) ++lower;
    const auto perturbation = [&]() {
      Vector<G> v = Vector<G>::Zero(n);
      for (Index j = 0; j < lower; ++j) v += basis.col(j) * rng.small_gaussian(0.5);
      return v;
    };
    if (b.p == b.q) {
      generators.emplace_back(b.p, basis.col(col) + perturbation());
      weights.push_back(b.weight);
      ++col;
    } else {
      const Vector<G> u = basis.col(col);
      const Vector<G> v = basis.col(col + 1) * Gaussian::i();
      generators.emplace_back(b.p, u + v + perturbation());
      generators.emplace_back(b.q, u - v + perturbation());
      weights.push_back(b.weight);
      weights.push_back(b.weight);
      col += 2;
    }
  }
  const Matrix<Q> rbasis = to_rational(basis);
  const int wlo = blocks.front().weight;
  const int whi = blocks.back().weight;
  const Flag<Q> w = Flag<Q>::tabulate(n, -whi, -wlo, [&](int t) {
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j) {
      if (weights[static_cast<std::size_t>(j)] <= -t) cols.push_back(j);
    }
    Matrix<Q> gens(static_cast<Index>(cols.size()), n);
    for (std::size_t r = 0; r < cols.size(); ++r) gens.row(static_cast<Index>(r)) = rbasis.col(cols[r]).transpose();
    return Subspace<Q>::span(gens);
  });
  int plo = generators.front().first;
  int phi = plo;
  for (const auto& [p, v] : generators) {
    plo = std::min(plo, p);
    phi = std::max(phi, p);
  }
  Flag<G> f = Flag<G>::tabulate(n, plo, phi, [&](int p) {
    std::vector<Vector<G>> rows;
    for (const auto& [index, v] : generators) {
      if (index >= p) rows.push_back(v);
    }
    Matrix<G> gens(static_cast<Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r) gens.row(static_cast<Index>(r)) = rows[r].transpose();
    return Subspace<G>::span(gens);
  });
  if (rng.coin()) return MixedHodgeStructure(w, f);
  const Matrix<G> c = rng.invertible<G>(n);
  return MixedHodgeStructure(w, f.transformed(c), c);
}

std::vector<MixedHodgeStructure> random_mhs_pool(Rng& rng, const MhsLimits& limits) {
  MhsLimits atom_limits = limits;
  atom_limits.max_blocks = std::min(limits.max_blocks, 2);
  std::vector<MixedHodgeStructure> pool;
  for (int a = 0; a < 2; ++a) pool.push_back(random_mhs(rng, atom_limits));
  pool.push_back(tate(rng.uniform(-1, 0)));
  return pool;
}

MhsComplex random_mhs_complex(Rng& rng, int degrees, const MhsLimits& limits) {
  return random_mhs_complex(rng, random_mhs_pool(rng, limits), degrees);
}

MhsComplex random_mhs_complex(Rng& rng, const std::vector<MixedHodgeStructure>& pool, int degrees) {
  MhsComplex out;
  for (int n = 0; n < degrees; ++n) {
    std::vector<MixedHodgeStructure> parts;
    const int count = rng.uniform(0, 2);
    for (int c = 0; c < count; ++c) parts.push_back(pool[at(rng.uniform(0, static_cast<int>(pool.size()) - 1))]);
    out.terms.push_back(direct_sum(parts));
  }
  for (int n = 0; n + 1 < degrees; ++n) {
    const auto& src = out.term(n);
    const auto& tgt = out.term(n + 1);
    std::vector<BlockConstraint<Q>> extra;
    if (n > 0) extra.push_back({image<Q>(out.d[n - 1]), Subspace<Q>::zero(tgt.dim())});
    Matrix<Q> d = zeros<Q>(tgt.dim(), src.dim());
    for (const auto& x : hom_mhs(src, tgt, extra)) d += x * rng.small_rational(0.4);
    out.d[n] = d;
  }
  return out;
}

Diagram p1_model() { return s_w(hodge_diagram(MhsComplex{0, {tate(0), MixedHodgeStructure::zero(), tate(-1)}, {}})); }

namespace {

Diagram with_zero_phi(const Diagram& k, int u, int n) {
  std::vector<DiagramMap> phis = k.comparisons();
  auto& phi = phis[at(u)];
  phi.set(n, zeros<G>(phi.block(n).rows(), phi.block(n).cols()));
  return Diagram(k.shape(), k.vertices(), std::move(phis));
}

/// x -> y with dx = y, weight 0, x of Hodge type 0 and y of Hodge type 1.
Diagram non_strict() {
  const GradedShape shape{0, {1, 1}};
  const Complex<G> c(shape, {{0, identity<G>(1)}});
  const Filtration<G> w = Filtration<G>::trivial(shape);
  const DiagramVertex v(c, w);
  const DiagramVertex vc(c, w, Filtration<G>(0, {Flag<G>::trivial(1, 0), Flag<G>::trivial(1, 1)}));
  return Diagram(ZigzagShape::hodge(2), {v, v, vc}, {DiagramMap::identity(shape), DiagramMap::identity(shape)});
}

}  // namespace

Diagram negative_control(std::string_view axiom) {
  if (axiom == "MH0") return with_zero_phi(p1_model(), 0, 2);
  if (axiom == "MH1" || axiom == "AH1") return non_strict();
  if (axiom == "MH2") {
    const MixedHodgeStructure wrong(Flag<Q>::trivial(1, -2), Flag<G>::trivial(1, 2));
    return s_w(hodge_diagram(MhsComplex{0, {tate(0), MixedHodgeStructure::zero(), wrong}, {}}));
  }
  if (axiom == "AH0") return with_zero_phi(hodge_diagram(MhsComplex{0, {tate(0)}, {}}), 0, 0);
  if (axiom == "AH2") {
    const MixedHodgeStructure wrong(Flag<Q>::trivial(1, 0), Flag<G>::trivial(1, 1));
    return hodge_diagram(MhsComplex{0, {wrong}, {}});
  }
  throw std::invalid_argument("negative_control: unknown axiom " + std::string(axiom));
}

}  // namespace hodgeworks
