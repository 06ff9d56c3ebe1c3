#pragma once

#include <random>
#include <vector>

#include "torusos/lattice.hpp"

namespace testsupport {

using torusos::IntMatrix;
using torusos::Integer;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Laplace expansion; only for the small matrices used as test oracles.
inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    const Integer minor = laplace_det(m.select(rows, cols));
    total += (j % 2 == 0 ? 1 : -1) * m(0, j) * minor;
  }
  return total;
}

// k-th determinantal divisor: gcd of all k x k minors.
inline Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  for (const auto& r : torusos::k_subsets(m.rows(), k))
    for (const auto& c : torusos::k_subsets(m.cols(), k)) {
      const Integer d = laplace_det(m.select(r, c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

}  // namespace testsupport
