#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torusos/core.hpp"
#include "torusos/hyperplane.hpp"
#include "torusos/lattice.hpp"
#include "torusos/toric.hpp"

namespace torusos {

/// Layer data shared by every ring computation on one arrangement: the poset,
/// local arrangements, and the quotient maps Z^d/Lambda_L -> Z^d/Lambda_L'.
///
/// H^1(L) is identified with Z^d/Lambda_L through v -> v * K^T, where the rows
/// of K are the HNF kernel basis of Lambda_L. The standard basis of Z^{d - rk L}
/// is the basis of H^1(L); on the torus it is x_1, ..., x_d.
class ToricCohomology {
 public:
  explicit ToricCohomology(const ToricArrangement& a);

  const ToricArrangement& arrangement() const { return poset_.arrangement(); }
  const LayerPoset& poset() const { return poset_; }
  std::size_t dim() const { return arrangement().dim(); }
  std::size_t layer_count() const { return poset_.size(); }
  std::size_t rank(std::size_t layer) const { return poset_.rank(layer); }
  /// d - rk L, the rank of H^1(L).
  std::size_t quotient_rank(std::size_t layer) const { return dim() - rank(layer); }
  const CentralArrangement& local(std::size_t layer) const { return locals_.at(layer); }

  /// Coordinates of the class of v in Z^d/Lambda_L.
  IntVector quotient_coordinates(std::size_t layer, const IntVector& v) const;
  /// Row-vector matrix of i^*: H^1(from) -> H^1(to). Requires from <= to.
  const IntMatrix& quotient_map(std::size_t from, std::size_t to) const;
  /// Induced map on the p-th exterior power, rows and columns in lexicographic order.
  const IntMatrix& exterior_map(std::size_t from, std::size_t to, std::size_t p) const;

  /// Layers L' with layer <= L', including layer itself.
  const std::vector<std::size_t>& above(std::size_t layer) const { return above_.at(layer); }
  const std::vector<std::size_t>& below(std::size_t layer) const { return below_.at(layer); }

  /// Layer index of the rank-1 layer Y_i when hypertorus i is connected.
  std::size_t layer_of_hypertorus(std::size_t i) const;

 private:
  LayerPoset poset_;
  std::vector<CentralArrangement> locals_;
  std::vector<IntMatrix> kernels_;
  std::vector<std::vector<std::size_t>> above_, below_;
  // keyed by (from, to); one exterior power per p
  std::map<std::pair<std::size_t, std::size_t>, std::vector<IntMatrix>> maps_;
};

/// Basis element of Lc_L = H^*(L) (x) OS^*(A[L]): an exterior monomial on the
/// basis of H^1(L) tensored with an NBC monomial of the local arrangement
/// (positions, not hypertorus labels).
struct ClassKey {
  std::size_t layer = 0;
  IndexSet exterior = 0;
  IndexSet os = 0;

  std::size_t degree() const { return popcount(exterior) + popcount(os); }
  friend bool operator==(const ClassKey&, const ClassKey&) = default;
  /// Layer, then exterior monomial, then OS monomial (each by size, then lex).
  friend bool operator<(const ClassKey& a, const ClassKey& b);
};

/// Element of the direct sum of the Lc_L, with integer coefficients on ClassKeys.
class ToricClass {
 public:
  using Terms = std::map<ClassKey, Integer>;

  ToricClass() = default;
  static ToricClass basis(std::size_t layer, IndexSet exterior, IndexSet os, const Integer& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const ClassKey& k) const;
  void add(const ClassKey& k, const Integer& c);

  /// The part supported on one layer.
  ToricClass component(std::size_t layer) const;
  /// The part of OS degree q.
  ToricClass os_part(std::size_t q) const;
  std::vector<std::size_t> layers() const;

  ToricClass& operator+=(const ToricClass& o);
  ToricClass& operator-=(const ToricClass& o);
  friend ToricClass operator+(ToricClass a, const ToricClass& b) { return a += b; }
  friend ToricClass operator-(ToricClass a, const ToricClass& b) { return a -= b; }
  friend ToricClass operator*(const Integer& c, const ToricClass& a);
  friend bool operator==(const ToricClass&, const ToricClass&) = default;

 private:
  Terms terms_;
};

/// "(L1.0, {0}, {1})": layer id, exterior subset, NBC set as hypertorus labels.
std::string key_label(const ToricCohomology& h, const ClassKey& k);
std::string class_str(const ToricCohomology& h, const ToricClass& c);

/// Degree-1 torus class v_1 x_1 + ... + v_d x_d.
ToricClass torus_class(const ToricCohomology& h, const IntVector& v);
/// 1 (x) e_i on the layer Y_i.
ToricClass hypertorus_class(const ToricCohomology& h, std::size_t i);

/// Basis of Lc_L^{rk L}: exterior monomials of every degree times top NBC monomials.
std::vector<ToricClass> layer_basis(const ToricCohomology& h, std::size_t layer);

/// Lc_{from <= to} applied to the `from` component of c; other components are ignored.
ToricClass diagram_map(const ToricCohomology& h, std::size_t from, std::size_t to, const ToricClass& c);

/// Product inside a single Lc_L with the Koszul sign (-1)^{deg(os) deg(exterior')}.
/// Both arguments must be supported on `layer`.
ToricClass cup(const ToricCohomology& h, std::size_t layer, const ToricClass& a, const ToricClass& b);

/// Every component of layer L has OS degree rk L.
bool is_a_form(const ToricCohomology& h, const ToricClass& c);

ToricClass multiply_A(const ToricCohomology& h, const ToricClass& a, const ToricClass& b);
ToricClass embed_p(const ToricCohomology& h, const ToricClass& a);
/// Projection onto the A-form components.
ToricClass project_pi(const ToricCohomology& h, const ToricClass& c);
bool is_coherent(const ToricCohomology& h, const ToricClass& c);
ToricClass multiply_B(const ToricCohomology& h, const ToricClass& a, const ToricClass& b);
/// Componentwise product in the direct sum of the rings Lc_L.
ToricClass multiply_natural(const ToricCohomology& h, const ToricClass& a, const ToricClass& b);

/// Keys of the basis of A^k (total degree k), in ClassKey order.
std::vector<ClassKey> ring_basis(const ToricCohomology& h, std::size_t k);
/// Coordinates of an A-form class of total degree k in ring_basis(h, k).
IntVector ring_coordinates(const ToricCohomology& h, const ToricClass& c, std::size_t k);

/// Coefficient of t^k in the Poincare polynomial, cross-checked against
/// sum over rank-q layers of binom(d - q, k - q) * |NBC_q(A[L])|.
Integer betti(const ToricArrangement& a, std::size_t k);

struct WhitneyRow {
  std::size_t layer;
  Integer mobius;
  std::size_t nbc;
  bool ok() const { return abs(mobius) == nbc; }
};
struct WhitneyReport {
  std::vector<WhitneyRow> rows;
  bool ok() const;
};
/// |mu(T, L)| against the number of maximal NBC sets of A[L], for every layer.
WhitneyReport whitney_check(const ToricCohomology& h);

struct GenerationRow {
  std::size_t degree;
  std::size_t betti;
  std::size_t product_rank;
  /// Index of the product lattice in A^k when it has full rank, otherwise 0.
  Integer index;
};
struct GenerationReport {
  std::vector<GenerationRow> rows;
  /// Full rank in every degree (over Q).
  bool generated() const;
  /// Full rank and index 1 in every degree.
  bool generated_over_z() const;
};
GenerationReport degree1_generation(const ToricCohomology& h);

/// Rank of {v in A^1 : u * v = 0} for a degree-1 A-form class u.
std::size_t annihilator_rank_deg1(const ToricCohomology& h, const ToricClass& u);

struct StructureConstant {
  std::size_t left, right, product;  // indices into GradedRingSnapshot::basis
  Integer coefficient;
};
struct GradedRingSnapshot {
  std::vector<std::size_t> degrees;
  /// basis[i] and its label; degree_of[i] is its total degree.
  std::vector<ClassKey> basis;
  std::vector<std::string> labels;
  std::vector<std::size_t> degree_of;
  std::vector<StructureConstant> constants;
};
/// Bases of the requested degrees; with `structure`, all products of pairs of
/// basis elements whose degrees sum to a requested degree.
GradedRingSnapshot ring_snapshot(const ToricCohomology& h, const std::vector<std::size_t>& degrees, bool structure);

}  // namespace torusos
