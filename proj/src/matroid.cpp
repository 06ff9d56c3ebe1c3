#include "torusos/matroid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace torusos {

MultiplicityOracle::MultiplicityOracle(std::size_t n, std::size_t d, std::vector<std::size_t> ranks,
                                       std::vector<Integer> multiplicities)
    : n_(n), d_(d), ranks_(std::move(ranks)), mults_(std::move(multiplicities)) {
  if (n > 30) throw Error(ErrorCode::TooManyColumns, "ground set too large");
  const std::size_t expected = std::size_t{1} << n;
  if (ranks_.size() != expected || mults_.size() != expected)
    throw Error(ErrorCode::ShapeMismatch, "oracle tables must cover all subsets");
}

MultiplicityOracle oracle_from_matrix(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (n > max_ground_set())
    throw Error(ErrorCode::TooManyColumns, "matrix has " + std::to_string(n) + " columns; the limit is " +
                                               std::to_string(max_ground_set()) + " (raise with TORUSOS_MAX_N)");
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::size_t> ranks(total);
  std::vector<Integer> mults(total);
  for (std::size_t s = 0; s < total; ++s) {
    const auto cols = elements(static_cast<IndexSet>(s));
    const auto sub = a.select_cols(cols);
    const auto f = invariant_factors(sub);
    ranks[s] = f.size();
    mults[s] = product(f);
  }
  return MultiplicityOracle(n, a.rows(), std::move(ranks), std::move(mults));
}

MultiplicityOracle complete_oracle(std::size_t n, std::size_t d,
                                   const std::map<IndexSet, std::pair<std::size_t, Integer>>& small_sets) {
  if (n > max_ground_set()) throw Error(ErrorCode::TooManyColumns, "oracle ground set exceeds the subset limit");
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::size_t> ranks(total);
  std::vector<Integer> mults(total);
  std::vector<bool> known(total, false);
  for (const auto& [s, v] : small_sets) {
    if (s >= total) throw Error(ErrorCode::IndexOutOfRange, "oracle entry outside the ground set");
    ranks[s] = v.first;
    mults[s] = v.second;
    known[s] = true;
  }
  for (std::size_t s = 0; s < total; ++s) {
    const auto set = static_cast<IndexSet>(s);
    if (known[s]) continue;
    if (popcount(set) <= d)
      throw Error(ErrorCode::ParseError, "oracle is missing the entry for a subset of size <= d");
    // independent subsets of size <= d are all tabulated
    std::size_t best = 0;
    for (IndexSet t = set;; t = (t - 1) & set) {
      if (popcount(t) <= d && ranks[t] == popcount(t)) best = std::max(best, popcount(t));
      if (t == 0) break;
    }
    Integer g = 0;
    for (IndexSet t = set;; t = (t - 1) & set) {
      if (popcount(t) == best && ranks[t] == best) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mults[t].get_mpz_t());
      if (t == 0) break;
    }
    ranks[s] = best;
    mults[s] = g;
  }
  return MultiplicityOracle(n, d, std::move(ranks), std::move(mults));
}

std::optional<std::vector<std::size_t>> find_unimodular_basis(const MultiplicityOracle& o) {
  for (const auto& b : k_subsets(o.n(), o.d())) {
    const IndexSet s = to_index_set(b);
    if (o.rank(s) == o.d() && o.multiplicity(s) == 1) return b;
  }
  return std::nullopt;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Sign bookkeeping for the entries x_{ij} of the non-basis block.
struct SignSolver {
  const MultiplicityOracle& o;
  std::vector<std::size_t> rows;     // basis element of each row
  std::vector<std::size_t> columns;  // non-basis elements
  std::vector<std::vector<Integer>> magnitude;
  std::vector<std::vector<int>> sign;  // 0 = not yet determined

  std::size_t d() const { return rows.size(); }
  std::size_t k() const { return columns.size(); }
  bool edge(std::size_t i, std::size_t j) const { return magnitude[i][j] != 0; }

  // Vertices 0..d-1 are rows, d..d+k-1 columns. Shortest path over determined entries.
  std::vector<std::size_t> known_path(std::size_t from_row, std::size_t to_col) const {
    const std::size_t total = d() + k();
    std::vector<std::size_t> prev(total, total);
    std::deque<std::size_t> queue{from_row};
    prev[from_row] = from_row;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (v == d() + to_col) break;
      for (std::size_t w = 0; w < total; ++w) {
        if (prev[w] != total) continue;
        const bool adjacent = v < d() ? (w >= d() && sign[v][w - d()] != 0) : (w < d() && sign[w][v - d()] != 0);
        if (!adjacent) continue;
        prev[w] = v;
        queue.push_back(w);
      }
    }
    if (prev[d() + to_col] == total) return {};
    std::vector<std::size_t> path;
    for (std::size_t v = d() + to_col; v != from_row; v = prev[v]) path.push_back(v);
    path.push_back(from_row);
    std::reverse(path.begin(), path.end());
    return path;
  }

  Integer target(const std::vector<std::size_t>& cyc_rows, const std::vector<std::size_t>& cyc_cols) const {
    IndexSet s = 0;
    for (auto r : rows) s |= singleton(r);
    for (auto i : cyc_rows) s &= ~singleton(rows[i]);
    for (auto j : cyc_cols) s |= singleton(columns[j]);
    return o.rank(s) == rows.size() ? o.multiplicity(s) : Integer(0);
  }

  Integer minor(const std::vector<std::size_t>& cyc_rows, const std::vector<std::size_t>& cyc_cols, std::size_t ei,
                std::size_t ej, int trial) const {
    IntMatrix m(cyc_rows.size(), cyc_cols.size());
    for (std::size_t a = 0; a < cyc_rows.size(); ++a)
      for (std::size_t b = 0; b < cyc_cols.size(); ++b) {
        const std::size_t i = cyc_rows[a], j = cyc_cols[b];
        if (!edge(i, j)) continue;
        int s = sign[i][j];
        if (i == ei && j == ej) s = trial;
        if (s == 0) throw std::logic_error("undetermined entry inside a chordless cycle");
        m(a, b) = s * magnitude[i][j];
      }
    const Integer det = determinant(m);
    return det < 0 ? Integer(-det) : det;
  }
};

}  // namespace

IntMatrix reconstruct(const MultiplicityOracle& o, const std::vector<std::size_t>& basis) {
  const std::size_t n = o.n(), d = o.d();
  if (basis.size() != d) throw Error(ErrorCode::InvalidArgument, "basis must have d elements");
  IndexSet bset = 0;
  for (auto b : basis) {
    if (b >= n) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
    if (contains(bset, b)) throw Error(ErrorCode::InvalidArgument, "basis has repeated elements");
    bset |= singleton(b);
  }
  if (o.rank(bset) != d) throw Error(ErrorCode::InvalidArgument, "named basis is not independent");
  if (o.multiplicity(bset) != 1) throw Error(ErrorCode::InvalidArgument, "named basis does not have multiplicity 1");

  SignSolver solver{o, elements(bset), {}, {}, {}};
  for (std::size_t j = 0; j < n; ++j)
    if (!contains(bset, j)) solver.columns.push_back(j);
  const std::size_t k = solver.k();
  solver.magnitude.assign(d, std::vector<Integer>(k));
  solver.sign.assign(d, std::vector<int>(k, 0));
  // |x_ij| = |det| after swapping basis element i for column j
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const IndexSet s = (bset & ~singleton(solver.rows[i])) | singleton(solver.columns[j]);
      if (o.rank(s) == d) solver.magnitude[i][j] = o.multiplicity(s);
    }

  // spanning forest: first nonzero of every row, first nonzero of every column, then the rest
  UnionFind uf(d + k);
  auto take = [&](std::size_t i, std::size_t j) {
    if (solver.edge(i, j) && solver.sign[i][j] == 0 && uf.unite(i, d + j)) solver.sign[i][j] = 1;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (solver.edge(i, j)) {
        take(i, j);
        break;
      }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i)
      if (solver.edge(i, j)) {
        take(i, j);
        break;
      }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i) take(i, j);

  // Remaining entries, closest first: the shortest determined path between the
  // endpoints closes a chordless cycle, whose minor fixes the sign.
  for (;;) {
    std::size_t best_i = d, best_j = k;
    std::vector<std::size_t> best_path;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        if (!solver.edge(i, j) || solver.sign[i][j] != 0) continue;
        auto path = solver.known_path(i, j);
        if (path.empty()) throw std::logic_error("spanning forest does not connect an entry");
        if (best_i == d || path.size() < best_path.size()) {
          best_i = i;
          best_j = j;
          best_path = std::move(path);
        }
      }
    if (best_i == d) break;
    std::vector<std::size_t> cyc_rows, cyc_cols;
    for (auto v : best_path) (v < d ? cyc_rows : cyc_cols).push_back(v < d ? v : v - d);
    std::sort(cyc_rows.begin(), cyc_rows.end());
    std::sort(cyc_cols.begin(), cyc_cols.end());
    const Integer want = solver.target(cyc_rows, cyc_cols);
    const bool plus = solver.minor(cyc_rows, cyc_cols, best_i, best_j, 1) == want;
    const bool minus = solver.minor(cyc_rows, cyc_cols, best_i, best_j, -1) == want;
    if (plus == minus)
      throw Error(ErrorCode::InconsistentOracle, "no sign of entry (" + std::to_string(best_i) + ", " +
                                                     std::to_string(solver.columns[best_j]) +
                                                     ") matches the multiplicity of its cycle");
    solver.sign[best_i][best_j] = plus ? 1 : -1;
  }

  IntMatrix out(d, n);
  for (std::size_t i = 0; i < d; ++i) out(i, solver.rows[i]) = 1;
  for (std::size_t j = 0; j < k; ++j) {
    int flip = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const Integer v = solver.sign[i][j] * solver.magnitude[i][j];
      if (flip == 0 && v != 0) flip = v > 0 ? 1 : -1;
      out(i, solver.columns[j]) = v;
    }
    if (flip < 0) out.negate_col(solver.columns[j]);
  }

  if (!(oracle_from_matrix(out) == o))
    throw Error(ErrorCode::InconsistentOracle, "reconstructed matrix does not reproduce the oracle");
  return out;
}

bool column_sign_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "matrices differ in shape");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    bool same = true, negated = true;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) != b(i, j)) same = false;
      if (a(i, j) != -b(i, j)) negated = false;
    }
    if (!same && !negated) return false;
  }
  return true;
}

bool sign_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "matrices differ in shape");
  // propagate row and column signs over the support graph
  const std::size_t r = a.rows(), c = a.cols();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if ((a(i, j) == 0) != (b(i, j) == 0) || abs(a(i, j)) != abs(b(i, j))) return false;
  std::vector<int> sign(r + c, 0);
  for (std::size_t start = 0; start < r + c; ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w = 0; w < r + c; ++w) {
        if ((v < r) == (w < r)) continue;
        const std::size_t i = v < r ? v : w, j = v < r ? w - r : v - r;
        if (a(i, j) == 0) continue;
        // b_ij = s_i * a_ij * t_j
        const int rel = a(i, j) == b(i, j) ? 1 : -1;
        const int need = sign[v] * rel;
        if (sign[w] == 0) {
          sign[w] = need;
          queue.push_back(w);
        } else if (sign[w] != need) {
          return false;
        }
      }
    }
  }
  return true;
}

AxiomReport check_axioms(const MultiplicityOracle& o) {
  AxiomReport report;
  const std::size_t n = o.n();
  const IndexSet total = full_set(n);
  report.exhaustive = n <= 10;
  auto fail = [&](std::string axiom, IndexSet s, std::vector<std::size_t> elems, std::string detail) {
    report.violations.push_back({std::move(axiom), s, std::move(elems), std::move(detail)});
  };
  if (o.rank(0) != 0) fail("rank-empty", 0, {}, "rank of the empty set is " + std::to_string(o.rank(0)));
  for (IndexSet s = 0;; ++s) {
    if (o.multiplicity(s) <= 0) fail("multiplicity-positive", s, {}, "multiplicity " + o.multiplicity(s).get_str());
    if (o.rank(s) > popcount(s)) fail("rank-bounded", s, {}, "rank exceeds set size");
    for (std::size_t x = 0; x < n; ++x) {
      if (contains(s, x)) continue;
      const IndexSet sx = s | singleton(x);
      const std::size_t rs = o.rank(s), rx = o.rank(sx);
      if (rx < rs || rx > rs + 1) {
        fail("rank-unit-increment", s, {x},
             "rank goes from " + std::to_string(rs) + " to " + std::to_string(rx));
        continue;
      }
      const Integer& ms = o.multiplicity(s);
      const Integer& mx = o.multiplicity(sx);
      if (ms > 0 && mx > 0) {
        const bool ok = rx == rs ? mpz_divisible_p(ms.get_mpz_t(), mx.get_mpz_t())
                                 : mpz_divisible_p(mx.get_mpz_t(), ms.get_mpz_t());
        if (!ok)
          fail("multiplicity-divisibility", s, {x},
               "m(S)=" + ms.get_str() + ", m(S+x)=" + mx.get_str() + (rx == rs ? " (dependent)" : " (independent)"));
      }
      if (!report.exhaustive) continue;
      for (std::size_t y = x + 1; y < n; ++y) {
        if (contains(s, y)) continue;
        const IndexSet sy = s | singleton(y);
        if (o.rank(sx) + o.rank(sy) < o.rank(sx | singleton(y)) + rs)
          fail("rank-submodular", s, {x, y}, "r(S+x) + r(S+y) < r(S+x+y) + r(S)");
      }
    }
    if (s == total) break;
  }
  return report;
}

}  // namespace torusos
