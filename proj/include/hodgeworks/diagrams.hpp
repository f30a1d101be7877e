#pragma once

#include <optional>
#include <vector>

#include "hodgeworks/homotopy.hpp"
#include "hodgeworks/linear_system.hpp"
#include "hodgeworks/random.hpp"

namespace hodgeworks {

/// Vertex categories: filtered over Q, filtered over Q(i), bifiltered over Q(i).
enum class VertexKind { Rational, Complex, Bifiltered };

struct Arrow {
  int source = 0;
  int target = 0;
};

/// Finite index category whose arrows all go from degree-0 to degree-1 vertices.
struct ZigzagShape {
  std::vector<VertexKind> kinds;
  std::vector<Arrow> arrows;

  /// 0 -> 1 <- 2 -> ... <- s with a rational first and a bifiltered last vertex; s even, s >= 2.
  static ZigzagShape hodge(int s = 2);
  /// Same arrows with every vertex of the given kind.
  static ZigzagShape uniform(int s, VertexKind kind);

  int size() const { return static_cast<int>(kinds.size()); }
  /// 0 for arrow sources and isolated vertices, 1 for arrow targets. Throws
  /// when no degree function exists or an arrow is out of range.
  std::vector<int> degrees() const;

  friend bool operator==(const ZigzagShape& a, const ZigzagShape& b);
};

using DiagramMap = GradedMap<Gaussian>;
using DiagramVertex = FilteredComplex<Gaussian>;

/// Vertices with comparison morphisms φ_u : u_*(X_i) -> X_j. Scalar extension
/// is the identity on storage and u_* forgets the hodge filtration.
class Diagram {
 public:
  Diagram() = default;
  /// Throws unless kinds match (rational data at rational vertices, hodge
  /// filtration exactly at bifiltered ones) and each φ_u is a filtered morphism.
  Diagram(ZigzagShape shape, std::vector<DiagramVertex> vertices, std::vector<DiagramMap> comparisons);
  /// Zero complexes at every vertex.
  static Diagram zero(const ZigzagShape& shape);

  const ZigzagShape& shape() const { return shape_; }
  const DiagramVertex& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const DiagramMap& phi(int u) const { return comparisons_[static_cast<std::size_t>(u)]; }
  const std::vector<DiagramVertex>& vertices() const { return vertices_; }
  const std::vector<DiagramMap>& comparisons() const { return comparisons_; }

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  ZigzagShape shape_;
  std::vector<DiagramVertex> vertices_;
  std::vector<DiagramMap> comparisons_;
};

/// (f_i, F_u): f_i : X_i -> Y_i of degree n, F_u : X_i -> Y_j of degree n - 1.
/// At stage r the primary filtrations shift by n r and (n - 1) r respectively;
/// hodge filtrations are preserved.
struct PreMorphism {
  int degree = 0;
  int r = 0;
  std::vector<DiagramMap> f;
  std::vector<DiagramMap> legs;

  static PreMorphism zero(const Diagram& x, const Diagram& y, int degree, int r);
  static PreMorphism identity(const Diagram& x, int r);
  /// Levelwise maps with zero legs.
  static PreMorphism strict(const Diagram& x, const Diagram& y, std::vector<DiagramMap> f, int r);

  bool is_zero() const;
  PreMorphism& operator+=(const PreMorphism& o);
  PreMorphism& operator-=(const PreMorphism& o);
  PreMorphism& operator*=(const Gaussian& s);
  friend PreMorphism operator+(PreMorphism a, const PreMorphism& b) { return a += b; }
  friend PreMorphism operator-(PreMorphism a, const PreMorphism& b) { return a -= b; }
  PreMorphism operator-() const {
    PreMorphism out = *this;
    out *= Gaussian(-1);
    return out;
  }
  bool equals(const PreMorphism& o) const;
  friend bool operator==(const PreMorphism& a, const PreMorphism& b) { return a.equals(b); }
};

/// Df = (d f_i - (-1)^n f_i d, F_u d + (-1)^n d F_u + ε_n (f_j φ_u - φ_u f_i)) with
/// ε_n = (-1)^{n(n-1)/2}. This agrees with ε_n = (-1)^n for n = 0, -1 (ho-morphisms
/// and their homotopies) and keeps D∘D = 0 in all degrees.
PreMorphism dpre(const PreMorphism& f, const Diagram& x, const Diagram& y);

/// Shapes, rationality at rational vertices and filtration shifts at stage r.
bool is_admissible(const PreMorphism& f, const Diagram& x, const Diagram& y);
/// Admissible of degree 0 with Df = 0.
bool is_ho_morphism(const PreMorphism& f, const Diagram& x, const Diagram& y);

/// gf = (g_i f_i, G_u f_i + g_j F_u).
PreMorphism compose(const ZigzagShape& shape, const PreMorphism& g, const PreMorphism& f);
/// (f_i^{-1}, -f_j^{-1} F_u f_i^{-1}); throws unless every f_i is invertible.
PreMorphism invert(const ZigzagShape& shape, const PreMorphism& f);

/// h admissible of degree -1 with Dh = g - f.
bool check_ho_homotopy(const PreMorphism& h, const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                       const Diagram& y);
/// Some h with Dh = g - f, or nothing.
std::optional<PreMorphism> solve_ho_homotopy(const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                                             const Diagram& y);

/// Q-basis of the admissible pre-morphisms of the given degree, each supported on one block.
std::vector<PreMorphism> admissible_premorphisms(const Diagram& x, const Diagram& y, int degree, int r);
SparseRow flatten(const PreMorphism& f);

/// Dimension over Q of ho-morphisms X ⇝ Y modulo homotopy at stage r.
int homotopy_class_dimension(const Diagram& x, const Diagram& y, int r);

/// Vertexwise double cylinders glued by ψ_u = [[φ, 0, 0], [-F_u, φ, 0], [G_u, 0, φ]].
struct DiagramCylinder {
  Diagram diagram;
  std::vector<DoubleCylinder<Gaussian>> levels;
  PreMorphism i;  // Z -> Cyl
  PreMorphism j;  // Y -> Cyl
  PreMorphism k;  // degree -1, a homotopy jf ≃ ig
  int r = 0;
};

DiagramCylinder diagram_double_cylinder(const PreMorphism& f, const PreMorphism& g, const Diagram& x,
                                        const Diagram& y, const Diagram& z);
/// C(f) = Cyl(0, f); `i` includes Y.
DiagramCylinder diagram_cone(const PreMorphism& f, const Diagram& x, const Diagram& y);

/// t_i(x, y, z) = h_i(x) + u_i(y) + v_i(z), T_u(x, y, z) = H_u(x) + U_u(y) + V_u(z).
PreMorphism assemble(const DiagramCylinder& c, const PreMorphism& h, const PreMorphism& u, const PreMorphism& v);

struct DiagramLegs {
  PreMorphism h;
  PreMorphism u;
  PreMorphism v;
};
/// (t k, t j, t i).
DiagramLegs disassemble(const DiagramCylinder& c, const PreMorphism& t);

/// X -i-> Cyl(f) <-j- Y with p(x, y, z) = y + f(z), P_u(x, y, z) = F_u(z).
struct Factorization {
  PreMorphism f;
  DiagramCylinder cyl;  // Cyl(f, 1_X)
  PreMorphism p;
  /// h_i(x, y, z) = (z, 0, 0), H_u = 0: a homotopy jp ≃ 1.
  PreMorphism contraction;
};

Factorization factorize(const PreMorphism& f, const Diagram& x, const Diagram& y);

/// (a, b)_* : Cyl(f) ⇝ Cyl(g) for a square g a = b f, with legs
/// (x, y, z) -> (-A_u x, B_u y, A_u z). Throws unless the square commutes exactly.
PreMorphism induced_cylinder_map(const Factorization& ff, const Factorization& fg, const PreMorphism& a,
                                 const PreMorphism& b);

/// The zig-zag X -i_f-> Cyl(f) <-j_f- Y with homotopy inverse p_f of j_f.
struct Span {
  Factorization factorization;
  const PreMorphism& i() const { return factorization.cyl.i; }
  const PreMorphism& j() const { return factorization.cyl.j; }
  const PreMorphism& p() const { return factorization.p; }
  /// pj = 1 exactly; jp ≃ 1 through the contraction.
  bool verify(const Diagram& x, const Diagram& y) const;
};

Span rectify(const PreMorphism& f, const Diagram& x, const Diagram& y);

struct Lift {
  PreMorphism g;  // Y ⇝ Q
  PreMorphism h;  // g w ≃ f
};

/// Solves for g with D g = 0 and H with DH = f - g w; nothing when unsolvable.
std::optional<Lift> fibrant_lift(const PreMorphism& w, const PreMorphism& f, const Diagram& x, const Diagram& y,
                                 const Diagram& q, const std::function<Rational(int)>& free_value = nullptr);

/// Every vertex map is an E_r-quasi-isomorphism (E_{r,0} at bifiltered vertices).
bool is_weak_equivalence(const PreMorphism& w, const Diagram& x, const Diagram& y);

struct DiagramLimits {
  int max_degrees = 3;
  int max_dim = 3;
  int max_levels = 3;
  int level_offset = 1;
};

Diagram random_diagram(Rng& rng, const ZigzagShape& shape, const DiagramLimits& limits = {});
/// Random ho-morphism, a random point of ker D on admissible degree-0 pre-morphisms.
PreMorphism random_ho_morphism(Rng& rng, const Diagram& x, const Diagram& y, int r);
/// Random admissible pre-morphism of any degree (D need not vanish).
PreMorphism random_premorphism(Rng& rng, const Diagram& x, const Diagram& y, int degree, int r);

}  // namespace hodgeworks
