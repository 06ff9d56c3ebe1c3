#include "torusos/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace torusos {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::ShapeMismatch, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  IntMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  return out;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  return out;
}

IntMatrix IntMatrix::select(const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
  return out;
}

IntMatrix IntMatrix::append_row(const IntVector& row) const {
  if (row.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "appended row has wrong length");
  IntMatrix out(rows_ + 1, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(row.begin(), row.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(rows_ * cols_));
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator<(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::ShapeMismatch, "vector-matrix shape mismatch");
  IntVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs_value(h(i, c)) < abs_value(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        const Integer q = -floor_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, q);
        u.add_row_multiple(i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = -floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, q);
      u.add_row_multiple(i, r, q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t diag = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    bool exhausted = false;
    for (;;) {
      std::size_t pi = s.rows(), pj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
          if (s(i, j) == 0) continue;
          if (pi == s.rows() || abs_value(s(i, j)) < abs_value(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == s.rows()) {
        exhausted = true;
        break;
      }
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        const Integer q = -floor_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        const Integer q = -floor_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, q);
        v.add_col_multiple(j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad_row = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad_row == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j) {
          Integer r;
          mpz_tdiv_r(r.get_mpz_t(), s(i, j).get_mpz_t(), s(t, t).get_mpz_t());
          if (r != 0) {
            bad_row = i;
            break;
          }
        }
      if (bad_row == s.rows()) break;
      s.add_row_multiple(t, bad_row, Integer(1));
      u.add_row_multiple(t, bad_row, Integer(1));
    }
    if (exhausted) break;
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (snf.S(i, i) != 0) out.push_back(snf.S(i, i));
  return out;
}

Integer product(const std::vector<Integer>& values) {
  Integer p = 1;
  for (const auto& v : values) p *= v;
  return p;
}

std::size_t rank(const IntMatrix& m) {
  // fraction-free elimination with content removal
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == a.rows()) continue;
    a.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Integer f = a(i, c), p = a(r, c);
      Integer g = 0;
      for (std::size_t j = c; j < a.cols(); ++j) {
        a(i, j) = a(i, j) * p - a(r, j) * f;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a(i, j).get_mpz_t());
      }
      if (g > 1)
        for (std::size_t j = c; j < a.cols(); ++j) mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), g.get_mpz_t());
    }
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  auto hnf = hermite_normal_form(m);
  if (hnf.H != IntMatrix::identity(m.rows()))
    throw Error(ErrorCode::InvalidArgument, "matrix is not unimodular");
  return std::move(hnf.U);
}

IntMatrix nonzero_rows(const IntMatrix& m) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) {
        keep.push_back(i);
        break;
      }
  }
  return m.select_rows(keep);
}

IntMatrix saturate(const IntMatrix& basis) {
  if (basis.rows() == 0) return IntMatrix(0, basis.cols());
  const auto snf = smith_normal_form(basis);
  std::size_t r = 0;
  while (r < std::min(basis.rows(), basis.cols()) && snf.S(r, r) != 0) ++r;
  const IntMatrix v_inv = unimodular_inverse(snf.V);
  std::vector<std::size_t> first(r);
  for (std::size_t i = 0; i < r; ++i) first[i] = i;
  return nonzero_rows(hermite_normal_form(v_inv.select_rows(first)).H);
}

IntMatrix right_kernel(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  std::size_t r = 0;
  while (r < std::min(m.rows(), m.cols()) && snf.S(r, r) != 0) ++r;
  std::vector<std::size_t> tail;
  for (std::size_t j = r; j < m.cols(); ++j) tail.push_back(j);
  return nonzero_rows(hermite_normal_form(snf.V.select_cols(tail).transpose()).H);
}

std::optional<IntVector> solve_left(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "right-hand side has wrong length");
  const IntMatrix c = a.transpose();  // c * x = b
  const auto snf = smith_normal_form(c);
  IntVector ub(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t k = 0; k < c.rows(); ++k) ub[i] += snf.U(i, k) * b[k];
  IntVector y(c.cols());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const bool has_pivot = i < c.cols() && snf.S(i, i) != 0;
    if (!has_pivot) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
    y[i] = ub[i] / snf.S(i, i);
  }
  IntVector x(c.cols());
  for (std::size_t i = 0; i < c.cols(); ++i)
    for (std::size_t k = 0; k < c.cols(); ++k) x[i] += snf.V(i, k) * y[k];
  return x;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v) {
  return solve_left(basis, v);
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > n) return out;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = p;
    while (i > 0 && cur[i - 1] == n - p + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

IntMatrix exterior_power_map(const IntMatrix& m, std::size_t p) {
  const auto row_sets = k_subsets(m.rows(), p);
  const auto col_sets = k_subsets(m.cols(), p);
  IntMatrix out(row_sets.size(), col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i)
    for (std::size_t j = 0; j < col_sets.size(); ++j)
      out(i, j) = determinant(m.select(row_sets[i], col_sets[j]));
  return out;
}

std::optional<std::vector<PhaseVector>> solve_phase_extension(
    const IntMatrix& lattice_basis, const std::vector<PhaseConstraint>& constraints) {
  const std::size_t r = lattice_basis.rows();
  IntMatrix coords(constraints.size(), r);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    auto c = lattice_coordinates(lattice_basis, constraints[i].vector);
    if (!c) throw Error(ErrorCode::ConstraintNotInLattice, "phase constraint vector lies outside the lattice");
    for (std::size_t j = 0; j < r; ++j) coords(i, j) = (*c)[j];
  }
  if (rank(coords) < r)
    throw Error(ErrorCode::UnderdeterminedPhase, "constraints do not span a finite-index subgroup");

  const auto snf = smith_normal_form(coords);
  const std::size_t m = constraints.size();
  std::vector<Rational> w(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (snf.U(i, k) != 0) w[i] = w[i] + Rational(snf.U(i, k)) * constraints[k].phase;
  for (std::size_t i = r; i < m; ++i)
    if (w[i].mod_one() != Rational()) return std::nullopt;

  // g_i ranges over (w_i + k) / d_i, k = 0..d_i-1; phi = V g (mod 1)
  std::vector<std::vector<Rational>> choices(r);
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& di = snf.S(i, i);
    for (Integer k = 0; k < di; ++k) choices[i].push_back(Rational(w[i].num() + k * w[i].den(), w[i].den() * di));
  }
  std::vector<PhaseVector> out;
  std::vector<std::size_t> pick(r, 0);
  for (;;) {
    PhaseVector phi(r);
    for (std::size_t i = 0; i < r; ++i) {
      Rational acc;
      for (std::size_t k = 0; k < r; ++k)
        if (snf.V(i, k) != 0) acc = acc + Rational(snf.V(i, k)) * choices[k][pick[k]];
      phi[i] = acc.mod_one();
    }
    out.push_back(std::move(phi));
    std::size_t pos = 0;
    while (pos < r && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
    if (pos == r) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer gcd(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

}  // namespace torusos
