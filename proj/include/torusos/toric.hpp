#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusos/core.hpp"
#include "torusos/hyperplane.hpp"
#include "torusos/lattice.hpp"
#include "torusos/matroid.hpp"
#include "torusos/poset.hpp"

namespace torusos {

/// Y = {t : t^chi = exp(2 pi i phase)}.
struct Hypertorus {
  IntVector character;
  Rational phase;
};

class ToricArrangement {
 public:
  ToricArrangement() = default;
  /// Phases are reduced mod 1; characters must be nonzero of length `dim`.
  ToricArrangement(std::size_t dim, std::vector<Hypertorus> hypertori);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hypertori_.size(); }
  const std::vector<Hypertorus>& hypertori() const { return hypertori_; }
  const IntVector& character(std::size_t i) const { return hypertori_.at(i).character; }
  const Rational& phase(std::size_t i) const { return hypertori_.at(i).phase; }
  /// d x n matrix whose column i is the character of hypertorus i.
  IntMatrix character_matrix() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Hypertorus> hypertori_;
};

/// Connected component of an intersection: the coset of the subtorus annihilated by
/// a saturated lattice, cut out by phase values on its HNF basis.
struct Layer {
  IntMatrix lattice;   // HNF rows, saturated
  PhaseVector phases;  // one per lattice row, in [0, 1)
  IndexSet support = 0;

  std::size_t rank() const { return lattice.rows(); }
  /// phi(v) mod 1 for v in the lattice, nullopt when v is outside.
  std::optional<Rational> evaluate(const IntVector& v) const;

  friend bool operator==(const Layer& a, const Layer& b) { return a.lattice == b.lattice && a.phases == b.phases; }
  /// Canonical order: rank, then lattice entries, then phases.
  friend bool operator<(const Layer& a, const Layer& b);
};

/// Hypertori containing the layer given by (lattice, phases).
IndexSet layer_support(const ToricArrangement& a, const IntMatrix& lattice, const PhaseVector& phases);

class LayerPoset {
 public:
  LayerPoset() = default;
  LayerPoset(ToricArrangement arrangement, std::vector<Layer> layers);

  const ToricArrangement& arrangement() const { return arrangement_; }
  std::size_t size() const { return layers_.size(); }
  const std::vector<Layer>& layers() const { return layers_; }
  const Layer& layer(std::size_t i) const { return layers_.at(i); }
  std::size_t rank(std::size_t i) const { return layers_.at(i).rank(); }
  std::size_t max_rank() const;
  std::vector<std::size_t> of_rank(std::size_t q) const;
  /// "L<rank>.<index within rank>".
  std::string id(std::size_t i) const;
  /// Reverse inclusion: L <= L' iff L' lies inside L.
  bool leq(std::size_t i, std::size_t j) const { return poset_.leq(i, j); }
  std::optional<std::size_t> index_of(const Layer& l) const;
  const GradedPoset& poset() const { return poset_; }
  /// |mu(T, L)|-style Mobius value mu(bottom, L).
  Integer mobius(std::size_t i) const { return poset_.mobius(0, i); }

 private:
  ToricArrangement arrangement_;
  std::vector<Layer> layers_;
  GradedPoset poset_;
};

/// All layers, deduplicated by canonical form, ordered canonically; index 0 is the torus.
LayerPoset layer_poset(const ToricArrangement& a);

std::optional<std::vector<std::size_t>> poset_isomorphic(const LayerPoset& p, const LayerPoset& q);

/// Hyperplanes through the origin given by the characters of the hypertori
/// containing L, labelled by hypertorus index.
CentralArrangement local_arrangement(const ToricArrangement& a, const Layer& l);

/// Product of the invariant factors of the character columns indexed by s.
Integer multiplicity(const ToricArrangement& a, IndexSet s);

ToricArrangement deletion(const ToricArrangement& a, std::size_t i);
/// The arrangement induced on Y_i, written in coordinates of a (d-1)-torus.
ToricArrangement restriction(const ToricArrangement& a, std::size_t i);
/// True when the deletion-restriction identity applies at i: the character is
/// primitive and no other hypertorus contains Y_i.
bool restriction_is_valid(const ToricArrangement& a, std::size_t i);

/// Coefficients of the Poincare polynomial, constant term first.
std::vector<Integer> poincare_polynomial(const ToricArrangement& a);
std::vector<Integer> poincare_polynomial(const LayerPoset& poset);
/// N_j: number of pairs (L, N) with rk L = j and N a maximal NBC set of the local arrangement.
std::vector<Integer> nbc_pair_counts(const LayerPoset& poset);

MultiplicityOracle arithmetic_matroid(const ToricArrangement& a);

/// Polynomial helpers on coefficient vectors.
std::vector<Integer> poly_add(const std::vector<Integer>& a, const std::vector<Integer>& b);
std::vector<Integer> poly_shift(const std::vector<Integer>& a, std::size_t k);
std::string poly_str(const std::vector<Integer>& a);

}  // namespace torusos
