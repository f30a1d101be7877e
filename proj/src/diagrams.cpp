#include "hodgeworks/diagrams.hpp"

#include <stdexcept>

#include "hodgeworks/solver.hpp"

namespace hodgeworks {

namespace {

using G = Gaussian;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

bool rational_map(const DiagramMap& f) {
  for (int n = f.source().lo; n <= f.source().hi(); ++n) {
    if (!is_rational(f.block(n))) return false;
  }
  return true;
}

bool rational_vertex(const DiagramVertex& k) {
  for (int n = k.lo() - 1; n <= k.hi(); ++n) {
    if (!is_rational(k.d(n))) return false;
  }
  for (int n = k.lo(); n <= k.hi(); ++n) {
    for (const auto& level : k.filtration().flag(n).levels()) {
      if (!is_rational(level.basis())) return false;
    }
  }
  return true;
}

struct Block {
  std::size_t row;
  std::size_t col;
  Matrix<G> m;
};

/// Block matrix from the summands of two direct sums in the given degrees.
Matrix<G> block_matrix(const std::vector<GradedShape>& rows, int row_degree, const std::vector<GradedShape>& cols,
                       int col_degree, const std::vector<Block>& blocks) {
  Matrix<G> out = zeros<G>(direct_sum(rows).dim(row_degree), direct_sum(cols).dim(col_degree));
  for (const auto& b : blocks) {
    if (b.m.size() == 0) continue;
    out.block(summand_offset(rows, b.row, row_degree), summand_offset(cols, b.col, col_degree), b.m.rows(),
              b.m.cols()) = b.m;
  }
  return out;
}

/// (-1)^{n(n-1)/2}: the sign of f_j φ - φ f_i in Df that makes D∘D vanish in
/// every degree; it is +1 for n = 0 and -1 for n = -1.
int comparison_sign(int n) {
  const long e = static_cast<long>(n) * (n - 1) / 2;
  return e % 2 == 0 ? 1 : -1;
}

PreMorphism empty_like(const PreMorphism& f, int degree) {
  PreMorphism out;
  out.degree = degree;
  out.r = f.r;
  return out;
}

}  // namespace

ZigzagShape ZigzagShape::hodge(int s) {
  require(s >= 2 && s % 2 == 0, "ZigzagShape::hodge: length must be even and at least 2");
  ZigzagShape out = uniform(s, VertexKind::Complex);
  out.kinds.front() = VertexKind::Rational;
  out.kinds.back() = VertexKind::Bifiltered;
  return out;
}

ZigzagShape ZigzagShape::uniform(int s, VertexKind kind) {
  require(s >= 0, "ZigzagShape::uniform: negative length");
  ZigzagShape out;
  out.kinds.assign(at(s + 1), kind);
  for (int v = 1; v <= s; v += 2) {
    out.arrows.push_back({v - 1, v});
    if (v + 1 <= s) out.arrows.push_back({v + 1, v});
  }
  return out;
}

std::vector<int> ZigzagShape::degrees() const {
  std::vector<int> deg(kinds.size(), 0);
  for (const auto& a : arrows) {
    require(a.source >= 0 && a.source < size() && a.target >= 0 && a.target < size() && a.source != a.target,
            "ZigzagShape: arrow out of range");
    deg[at(a.target)] = 1;
  }
  for (const auto& a : arrows) require(deg[at(a.source)] == 0, "ZigzagShape: no degree function");
  return deg;
}

bool operator==(const ZigzagShape& a, const ZigzagShape& b) {
  if (a.kinds != b.kinds || a.arrows.size() != b.arrows.size()) return false;
  for (std::size_t u = 0; u < a.arrows.size(); ++u) {
    if (a.arrows[u].source != b.arrows[u].source || a.arrows[u].target != b.arrows[u].target) return false;
  }
  return true;
}

Diagram::Diagram(ZigzagShape shape, std::vector<DiagramVertex> vertices, std::vector<DiagramMap> comparisons)
    : shape_(std::move(shape)), vertices_(std::move(vertices)), comparisons_(std::move(comparisons)) {
  shape_.degrees();
  require(vertices_.size() == shape_.kinds.size(), "Diagram: vertex count mismatch");
  require(comparisons_.size() == shape_.arrows.size(), "Diagram: comparison count mismatch");
  for (int i = 0; i < shape_.size(); ++i) {
    const auto& k = vertices_[at(i)];
    switch (shape_.kinds[at(i)]) {
      case VertexKind::Rational:
        require(!k.bifiltered() && rational_vertex(k), "Diagram: rational vertex carries non-rational data");
        break;
      case VertexKind::Complex:
        require(!k.bifiltered(), "Diagram: filtered vertex carries a hodge filtration");
        break;
      case VertexKind::Bifiltered:
        require(k.bifiltered(), "Diagram: bifiltered vertex lacks a hodge filtration");
        break;
    }
  }
  for (std::size_t u = 0; u < comparisons_.size(); ++u) {
    const auto& a = shape_.arrows[u];
    const auto& src = vertices_[at(a.source)];
    const auto& tgt = vertices_[at(a.target)];
    require(comparisons_[u].degree() == 0 && comparisons_[u].source() == src.shape() &&
                comparisons_[u].target() == tgt.shape(),
            "Diagram: comparison shape mismatch");
    if (shape_.kinds[at(a.target)] == VertexKind::Rational) {
      require(rational_map(comparisons_[u]), "Diagram: comparison into a rational vertex is not rational");
    }
    require(is_filtered_morphism(comparisons_[u], src, tgt), "Diagram: comparison is not a filtered morphism");
  }
}

Diagram Diagram::zero(const ZigzagShape& shape) {
  std::vector<DiagramVertex> vertices;
  for (auto kind : shape.kinds) {
    Complex<G> zero = Complex<G>::zero_differential({});
    if (kind == VertexKind::Bifiltered) {
      vertices.emplace_back(zero, Filtration<G>(), Filtration<G>());
    } else {
      vertices.push_back(DiagramVertex::trivially_filtered(zero));
    }
  }
  std::vector<DiagramMap> phis(shape.arrows.size(), DiagramMap(GradedShape{}, GradedShape{}, 0));
  return Diagram(shape, std::move(vertices), std::move(phis));
}

bool operator==(const Diagram& a, const Diagram& b) {
  if (!(a.shape_ == b.shape_) || !(a.vertices_ == b.vertices_)) return false;
  for (std::size_t u = 0; u < a.comparisons_.size(); ++u) {
    if (!a.comparisons_[u].equals(b.comparisons_[u])) return false;
  }
  return true;
}

PreMorphism PreMorphism::zero(const Diagram& x, const Diagram& y, int degree, int r) {
  PreMorphism out;
  out.degree = degree;
  out.r = r;
  for (int i = 0; i < x.shape().size(); ++i) out.f.emplace_back(x.vertex(i).shape(), y.vertex(i).shape(), degree);
  for (const auto& a : x.shape().arrows) {
    out.legs.emplace_back(x.vertex(a.source).shape(), y.vertex(a.target).shape(), degree - 1);
  }
  return out;
}

PreMorphism PreMorphism::identity(const Diagram& x, int r) {
  PreMorphism out = zero(x, x, 0, r);
  for (int i = 0; i < x.shape().size(); ++i) out.f[at(i)] = DiagramMap::identity(x.vertex(i).shape());
  return out;
}

PreMorphism PreMorphism::strict(const Diagram& x, const Diagram& y, std::vector<DiagramMap> f, int r) {
  PreMorphism out = zero(x, y, 0, r);
  require(f.size() == out.f.size(), "PreMorphism::strict: component count mismatch");
  out.f = std::move(f);
  return out;
}

bool PreMorphism::is_zero() const {
  for (const auto& m : f) {
    if (!m.is_zero()) return false;
  }
  for (const auto& m : legs) {
    if (!m.is_zero()) return false;
  }
  return true;
}

PreMorphism& PreMorphism::operator+=(const PreMorphism& o) {
  require(degree == o.degree && f.size() == o.f.size() && legs.size() == o.legs.size(),
          "PreMorphism: mismatched sum");
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += o.f[i];
  for (std::size_t u = 0; u < legs.size(); ++u) legs[u] += o.legs[u];
  return *this;
}

PreMorphism& PreMorphism::operator-=(const PreMorphism& o) {
  require(degree == o.degree && f.size() == o.f.size() && legs.size() == o.legs.size(),
          "PreMorphism: mismatched difference");
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= o.f[i];
  for (std::size_t u = 0; u < legs.size(); ++u) legs[u] -= o.legs[u];
  return *this;
}

PreMorphism& PreMorphism::operator*=(const Gaussian& s) {
  for (auto& m : f) m *= s;
  for (auto& m : legs) m *= s;
  return *this;
}

bool PreMorphism::equals(const PreMorphism& o) const {
  if (degree != o.degree || f.size() != o.f.size() || legs.size() != o.legs.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].equals(o.f[i])) return false;
  }
  for (std::size_t u = 0; u < legs.size(); ++u) {
    if (!legs[u].equals(o.legs[u])) return false;
  }
  return true;
}

PreMorphism dpre(const PreMorphism& f, const Diagram& x, const Diagram& y) {
  const int n = f.degree;
  PreMorphism out = empty_like(f, n + 1);
  for (int i = 0; i < x.shape().size(); ++i) {
    out.f.push_back(commutator(f.f[at(i)], x.vertex(i).complex(), y.vertex(i).complex()));
  }
  for (std::size_t u = 0; u < x.shape().arrows.size(); ++u) {
    const auto& a = x.shape().arrows[u];
    DiagramMap leg = commutator(f.legs[u], x.vertex(a.source).complex(), y.vertex(a.target).complex());
    if (n % 2 != 0) leg *= G(-1);
    DiagramMap twist = compose(f.f[at(a.target)], x.phi(static_cast<int>(u)));
    twist -= compose(y.phi(static_cast<int>(u)), f.f[at(a.source)]);
    if (comparison_sign(n) < 0) twist *= G(-1);
    leg += twist;
    out.legs.push_back(std::move(leg));
  }
  return out;
}

bool is_admissible(const PreMorphism& f, const Diagram& x, const Diagram& y) {
  const auto& shape = x.shape();
  if (!(shape == y.shape()) || f.f.size() != shape.kinds.size() || f.legs.size() != shape.arrows.size()) {
    return false;
  }
  const auto fits = [&](const DiagramMap& m, const DiagramVertex& s, const DiagramVertex& t, int degree,
                        bool rational) {
    if (!(m.source() == s.shape()) || !(m.target() == t.shape()) || m.degree() != degree) return false;
    if (rational && !rational_map(m)) return false;
    if (!preserves(m, s.filtration(), t.filtration(), degree * f.r)) return false;
    if (s.hodge() && t.hodge() && !preserves(m, *s.hodge(), *t.hodge(), 0)) return false;
    return true;
  };
  for (int i = 0; i < shape.size(); ++i) {
    if (!fits(f.f[at(i)], x.vertex(i), y.vertex(i), f.degree, shape.kinds[at(i)] == VertexKind::Rational)) {
      return false;
    }
  }
  for (std::size_t u = 0; u < shape.arrows.size(); ++u) {
    const auto& a = shape.arrows[u];
    if (!fits(f.legs[u], x.vertex(a.source), y.vertex(a.target), f.degree - 1,
              shape.kinds[at(a.target)] == VertexKind::Rational)) {
      return false;
    }
  }
  return true;
}

bool is_ho_morphism(const PreMorphism& f, const Diagram& x, const Diagram& y) {
  return f.degree == 0 && is_admissible(f, x, y) && dpre(f, x, y).is_zero();
}

PreMorphism compose(const ZigzagShape& shape, const PreMorphism& g, const PreMorphism& f) {
  require(g.f.size() == f.f.size() && g.legs.size() == f.legs.size(), "compose: shape mismatch");
  PreMorphism out = empty_like(f, g.degree + f.degree);
  for (std::size_t i = 0; i < f.f.size(); ++i) out.f.push_back(compose(g.f[i], f.f[i]));
  for (std::size_t u = 0; u < f.legs.size(); ++u) {
    const auto& a = shape.arrows[u];
    out.legs.push_back(compose(g.legs[u], f.f[at(a.source)]) + compose(g.f[at(a.target)], f.legs[u]));
  }
  return out;
}

PreMorphism invert(const ZigzagShape& shape, const PreMorphism& f) {
  require(f.degree == 0, "invert: degree must be zero");
  PreMorphism out = empty_like(f, 0);
  for (const auto& m : f.f) out.f.push_back(inverse(m));
  for (std::size_t u = 0; u < f.legs.size(); ++u) {
    const auto& a = shape.arrows[u];
    out.legs.push_back(-compose(out.f[at(a.target)], compose(f.legs[u], out.f[at(a.source)])));
  }
  return out;
}

bool check_ho_homotopy(const PreMorphism& h, const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                       const Diagram& y) {
  if (h.degree != -1 || !is_admissible(h, x, y)) return false;
  return dpre(h, x, y).equals(g - f);
}

std::vector<PreMorphism> admissible_premorphisms(const Diagram& x, const Diagram& y, int degree, int r) {
  const auto& shape = x.shape();
  std::vector<PreMorphism> out;
  const PreMorphism zero = PreMorphism::zero(x, y, degree, r);
  for (int i = 0; i < shape.size(); ++i) {
    const bool rational = shape.kinds[at(i)] == VertexKind::Rational;
    for (auto& m : admissible_maps(x.vertex(i), y.vertex(i), degree, degree * r, rational)) {
      PreMorphism e = zero;
      e.f[at(i)] = std::move(m);
      out.push_back(std::move(e));
    }
  }
  for (std::size_t u = 0; u < shape.arrows.size(); ++u) {
    const auto& a = shape.arrows[u];
    const bool rational = shape.kinds[at(a.target)] == VertexKind::Rational;
    for (auto& m :
         admissible_maps(x.vertex(a.source), y.vertex(a.target), degree - 1, (degree - 1) * r, rational)) {
      PreMorphism e = zero;
      e.legs[u] = std::move(m);
      out.push_back(std::move(e));
    }
  }
  return out;
}

SparseRow flatten(const PreMorphism& f) {
  SparseRow out;
  int offset = 0;
  const auto add = [&](const DiagramMap& m) {
    for (int n = m.source().lo; n <= m.source().hi(); ++n) flatten_into<G>(m.block(n), offset, out);
  };
  for (const auto& m : f.f) add(m);
  for (const auto& m : f.legs) add(m);
  return out;
}

namespace {

using Image = std::function<SparseRow(const PreMorphism&)>;

ProbeSolution<PreMorphism> probe(const std::vector<PreMorphism>& basis, const Image& image, const SparseRow& rhs,
                                 PreMorphism zero, const std::function<Rational(int)>& free_value = nullptr) {
  return solve_probed<PreMorphism, G>(basis, image, rhs, std::move(zero), free_value);
}

}  // namespace

std::optional<PreMorphism> solve_ho_homotopy(const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                                             const Diagram& y) {
  const auto basis = admissible_premorphisms(x, y, -1, f.r);
  const Image image = [&](const PreMorphism& h) { return flatten(dpre(h, x, y)); };
  auto sol = probe(basis, image, flatten(g - f), PreMorphism::zero(x, y, -1, f.r));
  return sol.solution;
}

int homotopy_class_dimension(const Diagram& x, const Diagram& y, int r) {
  const Image image = [&](const PreMorphism& h) { return flatten(dpre(h, x, y)); };
  const auto degree0 = admissible_premorphisms(x, y, 0, r);
  const auto cocycles = probe(degree0, image, {}, PreMorphism::zero(x, y, 0, r));
  // Coboundaries D h count only when D h is itself admissible (automatic at r = 0).
  std::vector<SparseRow> admissible;
  std::vector<SparseRow> boundaries;
  for (const auto& e : degree0) admissible.push_back(flatten(e));
  for (const auto& h : admissible_premorphisms(x, y, -1, r)) boundaries.push_back(image(h));
  std::vector<SparseRow> both = admissible;
  both.insert(both.end(), boundaries.begin(), boundaries.end());
  const int meet = span_rank(admissible) + span_rank(boundaries) - span_rank(both);
  return cocycles.nullity - meet;
}

DiagramCylinder diagram_double_cylinder(const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                                        const Diagram& y, const Diagram& z) {
  require(f.degree == 0 && g.degree == 0, "diagram_double_cylinder: ho-morphisms expected");
  const auto& shape = x.shape();
  require(shape == y.shape() && shape == z.shape(), "diagram_double_cylinder: shape mismatch");
  DiagramCylinder out;
  out.r = f.r;
  std::vector<DiagramVertex> vertices;
  for (int i = 0; i < shape.size(); ++i) {
    out.levels.push_back(double_cylinder(f.f[at(i)], g.f[at(i)], x.vertex(i), y.vertex(i), z.vertex(i), f.r));
    vertices.push_back(out.levels.back().complex);
  }
  std::vector<DiagramMap> psi;
  for (std::size_t u = 0; u < shape.arrows.size(); ++u) {
    const auto& a = shape.arrows[u];
    const auto& src = out.levels[at(a.source)];
    const auto& tgt = out.levels[at(a.target)];
    const int ui = static_cast<int>(u);
    DiagramMap m(src.complex.shape(), tgt.complex.shape(), 0);
    for (int n = src.complex.lo(); n <= src.complex.hi(); ++n) {
      m.set(n, block_matrix(tgt.summands, n, src.summands, n,
                            {{0, 0, x.phi(ui).block(n + 1)},
                             {1, 0, -f.legs[u].block(n + 1)},
                             {2, 0, g.legs[u].block(n + 1)},
                             {1, 1, y.phi(ui).block(n)},
                             {2, 2, z.phi(ui).block(n)}}));
    }
    psi.push_back(std::move(m));
  }
  out.diagram = Diagram(shape, std::move(vertices), std::move(psi));
  std::vector<DiagramMap> is;
  std::vector<DiagramMap> js;
  out.k = PreMorphism::zero(x, out.diagram, -1, f.r);
  for (int i = 0; i < shape.size(); ++i) {
    is.push_back(out.levels[at(i)].i);
    js.push_back(out.levels[at(i)].j);
    out.k.f[at(i)] = out.levels[at(i)].k;
  }
  out.i = PreMorphism::strict(z, out.diagram, std::move(is), f.r);
  out.j = PreMorphism::strict(y, out.diagram, std::move(js), f.r);
  return out;
}

DiagramCylinder diagram_cone(const PreMorphism& f, const Diagram& x, const Diagram& y) {
  const Diagram zero = Diagram::zero(x.shape());
  return diagram_double_cylinder(PreMorphism::zero(x, zero, 0, f.r), f, x, zero, y);
}

PreMorphism assemble(const DiagramCylinder& c, const PreMorphism& h, const PreMorphism& u, const PreMorphism& v) {
  require(h.degree == -1 && u.degree == 0 && v.degree == 0, "assemble: degrees must be -1, 0, 0");
  const auto& shape = c.diagram.shape();
  PreMorphism t = empty_like(u, 0);
  for (int i = 0; i < shape.size(); ++i) {
    t.f.push_back(assemble(c.levels[at(i)], h.f[at(i)], u.f[at(i)], v.f[at(i)]));
  }
  for (std::size_t a = 0; a < shape.arrows.size(); ++a) {
    const auto& arrow = shape.arrows[a];
    const auto& src = c.levels[at(arrow.source)];
    const GradedShape& w = u.legs[a].target();
    DiagramMap leg(src.complex.shape(), w, -1);
    for (int n = src.complex.lo(); n <= src.complex.hi(); ++n) {
      leg.set(n, hstack<G>({h.legs[a].block(n + 1), u.legs[a].block(n), v.legs[a].block(n)}, w.dim(n - 1)));
    }
    t.legs.push_back(std::move(leg));
  }
  return t;
}

DiagramLegs disassemble(const DiagramCylinder& c, const PreMorphism& t) {
  const auto& shape = c.diagram.shape();
  return {compose(shape, t, c.k), compose(shape, t, c.j), compose(shape, t, c.i)};
}

Factorization factorize(const PreMorphism& f, const Diagram& x, const Diagram& y) {
  require(f.degree == 0, "factorize: ho-morphism expected");
  const auto& shape = x.shape();
  Factorization out{f, diagram_double_cylinder(f, PreMorphism::identity(x, f.r), x, y, x), {}, {}};
  const Diagram& cyl = out.cyl.diagram;
  out.p = PreMorphism::zero(cyl, y, 0, f.r);
  out.contraction = PreMorphism::zero(cyl, cyl, -1, f.r);
  for (int i = 0; i < shape.size(); ++i) {
    const auto& level = out.cyl.levels[at(i)];
    const auto& ys = y.vertex(i).shape();
    for (int n = level.complex.lo(); n <= level.complex.hi(); ++n) {
      out.p.f[at(i)].set(n, block_matrix({ys}, n, level.summands, n,
                                         {{0, 1, identity<G>(ys.dim(n))}, {0, 2, f.f[at(i)].block(n)}}));
      out.contraction.f[at(i)].set(
          n, block_matrix(level.summands, n - 1, level.summands, n, {{0, 2, identity<G>(x.vertex(i).dim(n))}}));
    }
  }
  for (std::size_t u = 0; u < shape.arrows.size(); ++u) {
    const auto& a = shape.arrows[u];
    const auto& level = out.cyl.levels[at(a.source)];
    const auto& ys = y.vertex(a.target).shape();
    for (int n = level.complex.lo(); n <= level.complex.hi(); ++n) {
      out.p.legs[u].set(n, block_matrix({ys}, n - 1, level.summands, n, {{0, 2, f.legs[u].block(n)}}));
    }
  }
  return out;
}

PreMorphism induced_cylinder_map(const Factorization& ff, const Factorization& fg, const PreMorphism& a,
                                 const PreMorphism& b) {
  const auto& shape = ff.cyl.diagram.shape();
  require(compose(shape, fg.f, a).equals(compose(shape, b, ff.f)), "induced_cylinder_map: square does not commute");
  PreMorphism out = PreMorphism::zero(ff.cyl.diagram, fg.cyl.diagram, 0, ff.f.r);
  for (int i = 0; i < shape.size(); ++i) {
    const auto& src = ff.cyl.levels[at(i)];
    const auto& tgt = fg.cyl.levels[at(i)];
    for (int n = src.complex.lo(); n <= src.complex.hi(); ++n) {
      out.f[at(i)].set(n, block_matrix(tgt.summands, n, src.summands, n,
                                       {{0, 0, a.f[at(i)].block(n + 1)},
                                        {1, 1, b.f[at(i)].block(n)},
                                        {2, 2, a.f[at(i)].block(n)}}));
    }
  }
  for (std::size_t u = 0; u < shape.arrows.size(); ++u) {
    const auto& arrow = shape.arrows[u];
    const auto& src = ff.cyl.levels[at(arrow.source)];
    const auto& tgt = fg.cyl.levels[at(arrow.target)];
    for (int n = src.complex.lo(); n <= src.complex.hi(); ++n) {
      out.legs[u].set(n, block_matrix(tgt.summands, n - 1, src.summands, n,
                                      {{0, 0, -a.legs[u].block(n + 1)},
                                       {1, 1, b.legs[u].block(n)},
                                       {2, 2, a.legs[u].block(n)}}));
    }
  }
  return out;
}

bool Span::verify(const Diagram& x, const Diagram& y) const {
  const auto& f = factorization;
  const Diagram& cyl = f.cyl.diagram;
  const auto& shape = cyl.shape();
  const int r = f.f.r;
  if (!is_ho_morphism(f.cyl.i, x, cyl) || !is_ho_morphism(f.cyl.j, y, cyl) || !is_ho_morphism(f.p, cyl, y)) {
    return false;
  }
  if (!compose(shape, f.p, f.cyl.j).equals(PreMorphism::identity(y, r))) return false;
  return check_ho_homotopy(f.contraction, compose(shape, f.cyl.j, f.p), PreMorphism::identity(cyl, r), cyl, cyl);
}

Span rectify(const PreMorphism& f, const Diagram& x, const Diagram& y) { return Span{factorize(f, x, y)}; }

namespace {

/// Unknown pair (g, H) for the lifting problem.
struct LiftVariable {
  PreMorphism g;
  PreMorphism h;
  LiftVariable& operator+=(const LiftVariable& o) {
    g += o.g;
    h += o.h;
    return *this;
  }
  LiftVariable& operator*=(const G& s) {
    g *= s;
    h *= s;
    return *this;
  }
};

int flat_size(const PreMorphism& f) {
  int size = 0;
  const auto add = [&](const DiagramMap& m) {
    for (int n = m.source().lo; n <= m.source().hi(); ++n) size += 2 * static_cast<int>(m.block(n).size());
  };
  for (const auto& m : f.f) add(m);
  for (const auto& m : f.legs) add(m);
  return size;
}

SparseRow shifted(SparseRow row, int offset) {
  for (auto& [i, v] : row) i += offset;
  return row;
}

}  // namespace

std::optional<Lift> fibrant_lift(const PreMorphism& w, const PreMorphism& f, const Diagram& x, const Diagram& y,
                                 const Diagram& q, const std::function<Rational(int)>& free_value) {
  require(w.degree == 0 && f.degree == 0, "fibrant_lift: ho-morphisms expected");
  const auto& shape = x.shape();
  const int r = f.r;
  const LiftVariable zero{PreMorphism::zero(y, q, 0, r), PreMorphism::zero(x, q, -1, r)};
  if (x == y && w.equals(PreMorphism::identity(x, w.r))) return Lift{f, zero.h};
  std::vector<LiftVariable> basis;
  for (auto& g : admissible_premorphisms(y, q, 0, r)) basis.push_back({std::move(g), zero.h});
  for (auto& h : admissible_premorphisms(x, q, -1, r)) basis.push_back({zero.g, std::move(h)});
  const int offset = flat_size(PreMorphism::zero(y, q, 1, r));
  const std::function<SparseRow(const LiftVariable&)> image = [&](const LiftVariable& v) {
    SparseRow out = flatten(dpre(v.g, y, q));
    SparseRow second = shifted(flatten(dpre(v.h, x, q) + compose(shape, v.g, w)), offset);
    out.insert(out.end(), second.begin(), second.end());
    return out;
  };
  auto sol = solve_probed<LiftVariable, G>(basis, image, shifted(flatten(f), offset), zero, free_value);
  if (!sol.solution) return std::nullopt;
  return Lift{std::move(sol.solution->g), std::move(sol.solution->h)};
}

bool is_weak_equivalence(const PreMorphism& w, const Diagram& x, const Diagram& y) {
  if (!is_ho_morphism(w, x, y)) return false;
  for (int i = 0; i < x.shape().size(); ++i) {
    const auto& s = x.vertex(i);
    const auto& t = y.vertex(i);
    const bool ok = s.bifiltered() && t.bifiltered() ? is_er0_quis(w.f[at(i)], s, t, w.r)
                                                     : is_er_quis(w.f[at(i)], s, t, w.r);
    if (!ok) return false;
  }
  return true;
}

Diagram random_diagram(Rng& rng, const ZigzagShape& shape, const DiagramLimits& limits) {
  const FilteredShapeLimits fl{limits.max_degrees, limits.max_dim, limits.max_levels, limits.level_offset};
  const auto degrees = shape.degrees();
  std::vector<DiagramVertex> vertices(shape.kinds.size());
  const auto make = [&](VertexKind kind) -> DiagramVertex {
    switch (kind) {
      case VertexKind::Rational:
        return to_gaussian(random_filtered_complex<Rational>(rng, fl));
      case VertexKind::Complex:
        return random_filtered_complex<G>(rng, fl);
      case VertexKind::Bifiltered:
        break;
    }
    return random_bifiltered_complex<G>(rng, fl);
  };
  for (int i = 0; i < shape.size(); ++i) {
    if (degrees[at(i)] == 0) vertices[at(i)] = make(shape.kinds[at(i)]);
  }
  // A target vertex copies the source of its first incoming arrow half of the time.
  for (int i = 0; i < shape.size(); ++i) {
    if (degrees[at(i)] == 0) continue;
    vertices[at(i)] = make(shape.kinds[at(i)]);
    for (const auto& a : shape.arrows) {
      if (a.target != i || !rng.coin()) continue;
      const auto& src = vertices[at(a.source)];
      if (shape.kinds[at(i)] == VertexKind::Bifiltered && src.bifiltered()) {
        vertices[at(i)] = src;
      } else if (shape.kinds[at(i)] != VertexKind::Bifiltered) {
        vertices[at(i)] = src.primary_only();
      }
      break;
    }
  }
  std::vector<DiagramMap> phis;
  for (const auto& a : shape.arrows) {
    const auto& src = vertices[at(a.source)];
    const auto& tgt = vertices[at(a.target)];
    if (src.primary_only() == tgt.primary_only() && rng.coin(0.7)) {
      phis.push_back(DiagramMap::identity(src.shape()));
    } else {
      phis.push_back(random_filtered_morphism<G>(rng, src, tgt));
    }
    if (shape.kinds[at(a.target)] == VertexKind::Rational && !rational_map(phis.back())) {
      phis.back() = DiagramMap(src.shape(), tgt.shape(), 0);
    }
  }
  return Diagram(shape, std::move(vertices), std::move(phis));
}

PreMorphism random_ho_morphism(Rng& rng, const Diagram& x, const Diagram& y, int r) {
  const Image image = [&](const PreMorphism& h) { return flatten(dpre(h, x, y)); };
  auto sol = probe(admissible_premorphisms(x, y, 0, r), image, {}, PreMorphism::zero(x, y, 0, r),
                   [&](int) { return rng.small_rational(0.4); });
  return std::move(*sol.solution);
}

PreMorphism random_premorphism(Rng& rng, const Diagram& x, const Diagram& y, int degree, int r) {
  PreMorphism out = PreMorphism::zero(x, y, degree, r);
  for (auto& e : admissible_premorphisms(x, y, degree, r)) {
    const Rational c = rng.small_rational(0.5);
    if (c.is_zero()) continue;
    e *= G(c);
    out += e;
  }
  return out;
}

}  // namespace hodgeworks
