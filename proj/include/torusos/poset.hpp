#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torusos/core.hpp"

namespace torusos {

/// Finite graded poset given by a rank per element and a full order table.
class GradedPoset {
 public:
  GradedPoset() = default;
  /// `leq[i][j]` is true iff element i <= element j. Reflexivity is enforced.
  GradedPoset(std::vector<std::size_t> ranks, std::vector<std::vector<bool>> leq);

  static GradedPoset chain(std::size_t n);
  static GradedPoset antichain(std::size_t n);

  std::size_t size() const { return ranks_.size(); }
  std::size_t rank(std::size_t i) const { return ranks_[i]; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }

  /// Cover relations (i, j): i < j with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  /// mu(x, y) of the Mobius function; zero unless x <= y.
  Integer mobius(std::size_t x, std::size_t y) const;
  /// The sub-poset {x : x <= top}, elements listed in increasing index order.
  GradedPoset down_set(std::size_t top, std::vector<std::size_t>* members = nullptr) const;

 private:
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<bool>> leq_;
};

/// Rank-preserving order isomorphism by backtracking. On success `result[i]` is the
/// image in `q` of element i of `p`.
std::optional<std::vector<std::size_t>> poset_isomorphic(const GradedPoset& p, const GradedPoset& q);

}  // namespace torusos
