#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusos/core.hpp"
#include "torusos/lattice.hpp"

namespace torusos {

/// Rank and multiplicity functions of an arithmetic matroid, tabulated over all
/// 2^n subsets of the ground set.
class MultiplicityOracle {
 public:
  MultiplicityOracle() = default;
  MultiplicityOracle(std::size_t n, std::size_t d, std::vector<std::size_t> ranks, std::vector<Integer> multiplicities);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  std::size_t rank(IndexSet s) const { return ranks_.at(s); }
  const Integer& multiplicity(IndexSet s) const { return mults_.at(s); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<Integer>& multiplicities() const { return mults_; }

  friend bool operator==(const MultiplicityOracle&, const MultiplicityOracle&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::size_t> ranks_{0};
  std::vector<Integer> mults_{Integer(1)};
};

/// Rank and multiplicity of every column subset of `a` (d rows, n columns).
MultiplicityOracle oracle_from_matrix(const IntMatrix& a);

/// Fills in an oracle from the values on all subsets of size <= d. The rank of a
/// larger set is the size of its largest independent subset, its multiplicity the
/// gcd of the multiplicities of its maximal independent subsets.
MultiplicityOracle complete_oracle(std::size_t n, std::size_t d,
                                   const std::map<IndexSet, std::pair<std::size_t, Integer>>& small_sets);

/// First d-subset (lexicographically) of rank d and multiplicity 1.
std::optional<std::vector<std::size_t>> find_unimodular_basis(const MultiplicityOracle& o);

/// A d x n matrix with identity columns at `basis` whose oracle equals `o`.
/// Throws InconsistentOracle when no such matrix exists.
IntMatrix reconstruct(const MultiplicityOracle& o, const std::vector<std::size_t>& basis);

/// True iff `b` is `a` with some columns negated.
bool column_sign_equivalent(const IntMatrix& a, const IntMatrix& b);
/// True iff `b` is `a` with some rows and some columns negated.
bool sign_equivalent(const IntMatrix& a, const IntMatrix& b);

struct AxiomViolation {
  std::string axiom;
  IndexSet set = 0;
  std::vector<std::size_t> elements;
  std::string detail;
};

struct AxiomReport {
  bool exhaustive = true;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Rank axioms (normalization, unit increments, local submodularity) and the
/// divisibility of multiplicities along single-element extensions. Pairwise
/// submodularity checks run only for n <= 10.
AxiomReport check_axioms(const MultiplicityOracle& o);

}  // namespace torusos
