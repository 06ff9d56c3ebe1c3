#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "torusos/core.hpp"
#include "torusos/lattice.hpp"

namespace torusos {

struct Flat {
  IndexSet closure = 0;
  std::size_t rank = 0;
  friend bool operator==(const Flat&, const Flat&) = default;
};

/// Central hyperplane arrangement in Q^d given by integer normals. Proportional
/// normals are collapsed at construction, keeping the earliest one; the
/// surviving order is the order used for broken circuits.
class CentralArrangement {
 public:
  CentralArrangement();
  CentralArrangement(std::size_t dim, const std::vector<IntVector>& normals);
  /// `labels[i]` is the external identifier of normal i (defaults to i).
  CentralArrangement(std::size_t dim, const std::vector<IntVector>& normals,
                     const std::vector<std::size_t>& labels);

  std::size_t dim() const;
  std::size_t size() const;
  const IntVector& normal(std::size_t i) const;
  const std::vector<IntVector>& normals() const;
  std::size_t label(std::size_t i) const;
  const std::vector<std::size_t>& labels() const;
  std::optional<std::size_t> position_of_label(std::size_t label) const;

  std::size_t rank(IndexSet s) const;
  std::size_t rank() const;
  bool independent(IndexSet s) const { return rank(s) == popcount(s); }
  /// All hyperplanes containing the intersection of those in `s`.
  IndexSet closure(IndexSet s) const;
  IndexSet ground() const { return full_set(size()); }

  /// Minimal dependent sets, in increasing mask order.
  const std::vector<IndexSet>& circuits() const;
  /// Circuits with their minimum removed, parallel to circuits().
  const std::vector<IndexSet>& broken_circuits() const;
  bool is_nbc(IndexSet s) const;

  /// The sub-arrangement of hyperplanes in `closure`, labels carried along.
  CentralArrangement localize(IndexSet closure) const;

  friend bool operator==(const CentralArrangement& a, const CentralArrangement& b);

 private:
  struct Impl;
  static std::shared_ptr<const Impl> make(std::size_t dim, const std::vector<IntVector>& normals,
                                          const std::vector<std::size_t>& labels);
  std::shared_ptr<const Impl> impl_;
};

class IntersectionLattice {
 public:
  explicit IntersectionLattice(const CentralArrangement& a);

  /// Flats sorted by rank, then lexicographically by closure. Index 0 is the bottom.
  const std::vector<Flat>& flats() const { return flats_; }
  std::size_t size() const { return flats_.size(); }
  bool leq(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> index_of(IndexSet closure) const;
  /// mu(bottom, flats()[x]).
  const Integer& mobius(std::size_t x) const { return mobius_[x]; }

 private:
  std::vector<Flat> flats_;
  std::vector<Integer> mobius_;
};

IntersectionLattice intersection_lattice(const CentralArrangement& a);
Integer mobius(const IntersectionLattice& lattice, const Flat& x);

/// Independent k-sets without broken circuits, in lexicographic order.
std::vector<IndexSet> nbc_sets(const CentralArrangement& a, std::size_t k);

/// Integer combination of NBC monomials e_S of one arrangement.
class OSElement {
 public:
  using Terms = std::map<IndexSet, Integer, LexLess>;

  explicit OSElement(CentralArrangement a) : arrangement_(std::move(a)) {}
  static OSElement one(const CentralArrangement& a);
  /// The basis element e_S; `s` must be NBC.
  static OSElement monomial(const CentralArrangement& a, IndexSet s, const Integer& coeff = 1);

  const CentralArrangement& arrangement() const { return arrangement_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(IndexSet s) const;
  /// Adds c * e_S for an NBC set S.
  void add(IndexSet s, const Integer& c);

  OSElement& operator+=(const OSElement& o);
  OSElement& operator-=(const OSElement& o);
  friend OSElement operator+(OSElement a, const OSElement& b) { return a += b; }
  friend OSElement operator-(OSElement a, const OSElement& b) { return a -= b; }
  friend OSElement operator*(const Integer& c, const OSElement& a);
  friend bool operator==(const OSElement& a, const OSElement& b);

  std::string str() const;

 private:
  CentralArrangement arrangement_;
  Terms terms_;
};

/// NBC expansion of sign * e_{i1} ... e_{ik}.
OSElement os_reduce(const CentralArrangement& a, const std::vector<std::size_t>& monomial, int sign = 1);
/// NBC expansion of an arbitrary combination of (not necessarily NBC) sorted monomials.
OSElement os_straighten(const CentralArrangement& a, const std::map<IndexSet, Integer, LexLess>& combination);
OSElement os_multiply(const OSElement& a, const OSElement& b);

/// Terms whose monomial has closure exactly x.
OSElement brieskorn_project(const OSElement& a, const Flat& x);
/// Relabels an element of a sub-arrangement into `ambient` and reduces.
OSElement brieskorn_include(const OSElement& a, const CentralArrangement& ambient);

/// sum over rank-k flats of |mu| and the number of NBC k-sets; both are computed
/// and must agree.
std::size_t os_betti(const CentralArrangement& a, std::size_t k);

}  // namespace torusos
