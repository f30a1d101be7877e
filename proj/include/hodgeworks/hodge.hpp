#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hodgeworks/diagrams.hpp"
#include "hodgeworks/solver.hpp"

namespace hodgeworks {

/// H_k = Q^n with an increasing weight filtration (stored decreasing, W_m =
/// weight().at(-m)), H_C = Q(i)^n with a decreasing Hodge filtration F, and an
/// invertible comparison c : H_k ⊗ Q(i) -> H_C. W on H_C is c(W).
class MixedHodgeStructure {
 public:
  MixedHodgeStructure() = default;
  /// Throws unless the ambient dimensions agree and c is invertible. Purity is
  /// a property (is_mhs), not a constructor invariant.
  MixedHodgeStructure(Flag<Rational> weight, Flag<Gaussian> hodge,
                      std::optional<Matrix<Gaussian>> comparison = std::nullopt);
  static MixedHodgeStructure zero() { return MixedHodgeStructure(Flag<Rational>(0), Flag<Gaussian>(0)); }

  Index dim() const { return weight_.ambient(); }
  const Flag<Rational>& weight() const { return weight_; }
  const Flag<Gaussian>& hodge() const { return hodge_; }
  const Matrix<Gaussian>& comparison() const { return comparison_; }

  Subspace<Rational> w(int m) const { return weight_.at(-m); }
  /// c(W_m) inside H_C.
  Subspace<Gaussian> w_complex(int m) const;
  const Subspace<Gaussian>& f(int p) const { return hodge_.at(p); }
  /// W on H_C as a decreasing flag.
  Flag<Gaussian> weight_complex() const { return to_gaussian(weight_).transformed(comparison_); }
  /// Smallest and largest m with Gr_m^W possibly nonzero.
  std::pair<int, int> weight_range() const { return {-weight_.graded_hi(), -weight_.graded_lo()}; }
  /// A with v ↦ A·conj(v) the conjugation of H_C through the rational structure.
  Matrix<Gaussian> conjugation() const;

  friend bool operator==(const MixedHodgeStructure& a, const MixedHodgeStructure& b) {
    return a.weight_ == b.weight_ && a.hodge_ == b.hodge_ && equal(a.comparison_, b.comparison_);
  }

 private:
  Flag<Rational> weight_;
  Flag<Gaussian> hodge_;
  Matrix<Gaussian> comparison_ = Matrix<Gaussian>(0, 0);
};

/// Q(n): dimension one, weight -2n, type (-n, -n).
MixedHodgeStructure tate(int n);
MixedHodgeStructure direct_sum(const std::vector<MixedHodgeStructure>& summands);

/// Hodge numbers of F^p ∩ conj(F^q) with p + q = weight.
struct PurityReport {
  bool pure = false;
  std::map<std::pair<int, int>, Index> hodge_numbers;
};

/// Purity of a filtered space whose conjugation is v ↦ A·conj(v).
PurityReport purity(const Flag<Gaussian>& f, const Matrix<Gaussian>& conjugation, int weight);
/// Treats all of H as a single weight, ignoring W.
PurityReport is_pure_hs(const MixedHodgeStructure& h, int weight);

struct MhsReport {
  bool ok = true;
  std::vector<int> failing_weights;
  std::map<int, PurityReport> graded;
};

/// Every Gr_m^W pure of weight m.
MhsReport is_mhs(const MixedHodgeStructure& h);

class NotMixedHodge : public std::invalid_argument {
 public:
  NotMixedHodge(int weight, const std::string& what) : std::invalid_argument(what), weight_(weight) {}
  int weight() const { return weight_; }

 private:
  int weight_;
};

struct DeligneSplitting {
  std::map<std::pair<int, int>, Subspace<Gaussian>> pieces;  // nonzero I^{p,q} only
  Index dim(int p, int q) const;
};

/// I^{p,q} = F^p ∩ W_{p+q} ∩ (conj(F^q) ∩ W_{p+q} + Σ_{j≥2} conj(F^{q-j+1}) ∩ W_{p+q-j}).
/// Throws NotMixedHodge with the first impure weight.
DeligneSplitting deligne_splitting(const MixedHodgeStructure& h);
/// Direct sum, recovery of W and F, and I^{p,q} ⊆ W_{p+q} ∩ F^p.
bool verify_splitting(const MixedHodgeStructure& h, const DeligneSplitting& s);

/// Q-basis of rational maps H_k -> H'_k compatible with W, with F after
/// comparison, and with the extra rational constraints.
std::vector<Matrix<Rational>> hom_mhs(const MixedHodgeStructure& h, const MixedHodgeStructure& h2,
                                      const std::vector<BlockConstraint<Rational>>& extra = {});
/// c' X c^{-1}.
Matrix<Gaussian> complexify(const Matrix<Rational>& x, const MixedHodgeStructure& h, const MixedHodgeStructure& h2);

/// Dimensions over Q of the three subspaces of Hom^W(H_C, H'_C) in Carlson's quotient.
struct CarlsonData {
  Index numerator = 0;        // Hom^W(H_C, H'_C)
  Index rational = 0;         // Hom^W(H_k, H'_k)
  Index hodge = 0;            // Hom^W_F(H_C, H'_C)
  Index intersection = 0;     // Hom_MHS
};

CarlsonData carlson_data(const MixedHodgeStructure& h, const MixedHodgeStructure& h2);

struct ExtGroup {
  int degree = 0;
  Index dimension = 0;
  /// Maps H_C -> H'_C: Hom_MHS elements for degree 0, W-maps spanning a
  /// complement of the denominator for degree 1.
  std::vector<Matrix<Gaussian>> representatives;
};

ExtGroup ext(const MixedHodgeStructure& h, const MixedHodgeStructure& h2, int n);

/// Bounded complex of mixed Hodge structures on degrees [lo, lo + terms).
struct MhsComplex {
  int lo = 0;
  std::vector<MixedHodgeStructure> terms;
  std::map<int, Matrix<Rational>> d;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const MixedHodgeStructure& term(int n) const { return terms[static_cast<std::size_t>(n - lo)]; }
  GradedShape shape() const;
  Complex<Rational> rational_complex() const;
};

/// K_k -> K_k ⊗ Q(i) <- K_C over ZigzagShape::hodge(2), with the second
/// comparison c^{-1}. Throws unless d∘d = 0 and d is a morphism of MHS.
Diagram hodge_diagram(const MhsComplex& k);
/// Inverse of hodge_diagram on diagrams whose comparison maps are invertible in
/// every degree: H_k from the first vertex, F from the last, the comparison
/// composed along the zig-zag.
MhsComplex glue(const Diagram& k);

/// Vertexwise décalage / shift of W; F and the comparisons are unchanged.
Diagram dec_w(const Diagram& k);
Diagram s_w(const Diagram& k);

/// H^n(K) with induced W and F, rational structure carried along the zig-zag;
/// nothing when some H^n(φ_u) is not invertible.
std::optional<MixedHodgeStructure> cohomology_mhs(const Diagram& k, int n);

struct Witness {
  std::string axiom;
  int degree = 0;
  int level = 0;   // increasing weight index p, or the filtration index named in detail
  int stage = -1;  // spectral stage r where relevant
  std::string detail;
};

struct AxiomVerdict {
  std::string axiom;
  bool pass = true;
  std::vector<Witness> witnesses;
};

struct HodgeVerdict {
  std::string mode;
  std::vector<AxiomVerdict> axioms;

  bool pass() const;
  const AxiomVerdict& axiom(std::string_view name) const;
};

/// MH0: every φ_u an E_1-quasi-isomorphism for W, and every H^n(Gr^W φ_u)
/// invertible. MH1: d strict for F on each Gr_p^W K_C. MH2: H^n(Gr_p^W)
/// pure of weight p + n. Throws unless the shape is a hodge zig-zag.
HodgeVerdict check_mhc(const Diagram& k);
/// AH0: E_0-quasi-isomorphisms for W. AH1: (K_k, W), (K_C, F), (Gr^W K_C, F)
/// and (Gr_F K_C, W) degenerate at E_1. AH2: H^n(Gr_p^W) pure of weight p.
HodgeVerdict check_ahc(const Diagram& k);
HodgeVerdict check_hodge(const Diagram& k, std::string_view mode);

/// Cohomology H(K_i) with zero differential, induced filtrations and H(φ_u).
Diagram cohomology_diagram(const Diagram& k);

struct MinimalModel {
  Diagram cohomology;
  PreMorphism sigma;     // H(K) ⇝ K
  PreMorphism rho;       // K ⇝ H(K), with ρσ = 1
  PreMorphism homotopy;  // D h = 1 - σρ

  /// Replays every identity against K.
  bool verify(const Diagram& k) const;
};

/// Throws std::logic_error when the section or inverse systems are
/// unsolvable, which cannot happen for an absolute Hodge complex.
MinimalModel minimal_model(const Diagram& k);

struct HomsetSummand {
  int degree = 0;
  Index hom = 0;   // Hom_MHS(H^n K, H^n L)
  Index ext1 = 0;  // Ext^1(H^n K, H^{n-1} L)
};

struct Homset {
  std::vector<HomsetSummand> summands;
  Index total = 0;
  /// Classes of ho-morphisms H(K) ⇝ H(L) modulo homotopy, computed directly.
  Index direct = 0;
};

Homset homset(const Diagram& k, const Diagram& l);

struct ClosureReport {
  bool weak_equivalence = false;
  HodgeVerdict source;
  HodgeVerdict target;
  /// The partner passes exactly when the source does.
  bool consistent() const { return weak_equivalence && source.pass() == target.pass(); }
};

/// f at stage 0 for "ahc" and stage 1 for "mhc".
ClosureReport closure_check(const PreMorphism& f, const Diagram& k, const Diagram& l, std::string_view mode);

struct MhsLimits {
  int max_blocks = 3;
  int weight_lo = -2;
  int weight_hi = 2;
};

MixedHodgeStructure random_mhs(Rng& rng, const MhsLimits& limits = {});
/// Terms are sums drawn from a small pool of random MHS; differentials are
/// random morphisms of MHS with d∘d = 0.
MhsComplex random_mhs_complex(Rng& rng, int degrees = 3, const MhsLimits& limits = {});
/// Two atoms of at most two blocks and one Tate object.
std::vector<MixedHodgeStructure> random_mhs_pool(Rng& rng, const MhsLimits& limits = {});
MhsComplex random_mhs_complex(Rng& rng, const std::vector<MixedHodgeStructure>& pool, int degrees);

/// Q(0) in degree 0 and Q(-1) in degree 2 with zero differential, in the
/// S_W convention.
Diagram p1_model();
/// A diagram failing exactly the named axiom ("MH0", "MH1", "MH2", "AH0", "AH1", "AH2").
Diagram negative_control(std::string_view axiom);

}  // namespace hodgeworks
