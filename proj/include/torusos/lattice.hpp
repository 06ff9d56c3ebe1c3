#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusos/core.hpp"

namespace torusos {

/// Dense row-major matrix of arbitrary-precision integers with a fixed shape.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix select_cols(const std::vector<std::size_t>& cols) const;
  IntMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  /// This matrix with `row` appended at the bottom.
  IntMatrix append_row(const IntVector& row) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;
  std::string str() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;
  /// Shape first, then entries lexicographically.
  friend bool operator<(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntVector& v, const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
};

/// Row-style Hermite normal form: H = U*M, U unimodular, pivots positive,
/// entries above a pivot reduced into [0, pivot), zero rows last.
HermiteForm hermite_normal_form(const IntMatrix& m);

struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

/// S = U*M*V diagonal with d1 | d2 | ... and nonnegative entries.
/// Pivot: smallest nonzero |entry| of the active block, ties by lowest (row, col).
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal of the Smith form, in divisibility order.
std::vector<Integer> invariant_factors(const IntMatrix& m);

Integer product(const std::vector<Integer>& values);

std::size_t rank(const IntMatrix& m);

/// Bareiss elimination; the matrix must be square.
Integer determinant(const IntMatrix& m);

/// Inverse of a unimodular matrix (throws InvalidArgument otherwise).
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Rows with the zero rows removed.
IntMatrix nonzero_rows(const IntMatrix& m);

/// HNF basis (as rows) of the saturation of the row lattice of `basis`.
IntMatrix saturate(const IntMatrix& basis);

/// HNF basis (as rows) of {w : m * w = 0}. `m` has `d` columns; the result has `d` columns.
IntMatrix right_kernel(const IntMatrix& m);

/// Some integer x with x * a = b, if one exists.
std::optional<IntVector> solve_left(const IntMatrix& a, const IntVector& b);

/// Ascending p-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t p);

/// Matrix of the induced map on p-th exterior powers (row-vector convention):
/// entry (I, J) is the minor det M[I, J], I and J in lexicographic order.
IntMatrix exterior_power_map(const IntMatrix& m, std::size_t p);

struct PhaseConstraint {
  IntVector vector;
  Rational phase;
};

/// Every homomorphism phi: Lambda -> Q/Z with phi(v) = phase for each constraint,
/// given by its values on the rows of `lattice_basis`. Returns nullopt when the
/// constraints are inconsistent. The constraints must span a finite-index
/// subgroup of Lambda (UnderdeterminedPhase otherwise).
std::optional<std::vector<PhaseVector>> solve_phase_extension(
    const IntMatrix& lattice_basis, const std::vector<PhaseConstraint>& constraints);

/// Coordinates of `v` in the row basis `basis`, if v lies in the row lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v);

Integer gcd(const IntVector& v);

}  // namespace torusos
