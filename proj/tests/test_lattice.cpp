#include <doctest.h>

#include <random>

#include "support.hpp"
#include "torusos/lattice.hpp"

using namespace torusos;
using testsupport::laplace_det;

namespace {

// Postcondition checker for the row-style Hermite form.
bool is_row_hermite(const IntMatrix& h) {
  std::size_t last_pivot_col = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = h.cols();
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        p = j;
        break;
      }
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && p <= last_pivot_col) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last_pivot_col = p;
  }
  return true;
}

void check_hnf(const IntMatrix& m) {
  const auto [h, u] = hermite_normal_form(m);
  CHECK(h == u * m);
  CHECK(testsupport::abs(laplace_det(u)) == 1);
  CHECK(is_row_hermite(h));
}

void check_snf(const IntMatrix& m) {
  const auto [s, u, v] = smith_normal_form(m);
  CHECK(s == u * m * v);
  CHECK(testsupport::abs(laplace_det(u)) == 1);
  CHECK(testsupport::abs(laplace_det(v)) == 1);
  Integer running = 1;
  const std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j) CHECK(s(i, j) == 0);
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(s(i, i) >= 0);
    if (i + 1 < k && s(i, i) != 0) CHECK(mpz_divisible_p(s(i + 1, i + 1).get_mpz_t(), s(i, i).get_mpz_t()));
    if (i + 1 < k && s(i, i) == 0) CHECK(s(i + 1, i + 1) == 0);
    // the product of the first i+1 diagonal entries is the determinantal divisor
    running *= s(i, i);
    CHECK(running == testsupport::determinantal_divisor(m, i + 1));
  }
}

}  // namespace

TEST_CASE("hermite form: fixed cases") {
  auto id = IntMatrix::identity(2);
  auto hnf = hermite_normal_form(id);
  CHECK(hnf.H == id);
  CHECK(hnf.U == id);

  IntMatrix swap{{0, 1}, {1, 0}};
  hnf = hermite_normal_form(swap);
  CHECK(hnf.H == IntMatrix::identity(2));
  CHECK(hnf.U == swap);

  check_hnf(IntMatrix{{2, 4}, {0, 3}});
  check_hnf(IntMatrix(0, 3));
  check_hnf(IntMatrix(3, 0));
  check_hnf(IntMatrix{{0, 0}, {0, 0}});
  check_hnf(IntMatrix{{4, 6, 2}, {2, 3, 1}, {6, 9, 3}});
}

TEST_CASE("hermite form: random postconditions") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    check_hnf(testsupport::random_matrix(rng, r, c, -6, 6));
  }
}

TEST_CASE("smith form: fixed cases") {
  auto z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.S.is_zero());
  auto d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(d.S == IntMatrix{{1, 0}, {0, 6}});
  auto e = smith_normal_form(IntMatrix{{1, 1}, {0, 5}});
  CHECK(e.S == IntMatrix{{1, 0}, {0, 5}});
  check_snf(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
}

TEST_CASE("smith form: random postconditions against determinantal divisors") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    check_snf(testsupport::random_matrix(rng, r, c, -5, 5));
  }
}

TEST_CASE("invariant factors") {
  CHECK(invariant_factors(IntMatrix::identity(3)) == std::vector<Integer>{1, 1, 1});
  CHECK(invariant_factors(IntMatrix{{1, 1}, {0, 5}}) == std::vector<Integer>{1, 5});
  CHECK(invariant_factors(IntMatrix{{2}, {4}}) == std::vector<Integer>{2});
  CHECK(invariant_factors(IntMatrix(2, 2)).empty());
  CHECK(product({}) == 1);
}

TEST_CASE("rank and determinant agree with the Laplace oracle") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    auto m = testsupport::random_matrix(rng, n, n, -4, 4);
    CHECK(determinant(m) == laplace_det(m));
    CHECK((rank(m) == n) == (laplace_det(m) != 0));
  }
  CHECK(rank(IntMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(rank(IntMatrix(0, 4)) == 0);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("saturate") {
  CHECK(saturate(IntMatrix{{2, 0}}) == IntMatrix{{1, 0}});
  CHECK(saturate(IntMatrix{{1, 5}}) == IntMatrix{{1, 5}});
  CHECK(saturate(IntMatrix(0, 2)).rows() == 0);
  CHECK(saturate(IntMatrix{{2, 4}, {1, 2}}) == IntMatrix{{1, 2}});

  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 3, d = 2 + rng() % 2;
    auto b = testsupport::random_matrix(rng, r, d, -4, 4);
    auto s = saturate(b);
    CHECK(saturate(s) == s);
    CHECK(hermite_normal_form(s).H == s);
    CHECK(s.rows() == rank(b));
    // the input lattice sits inside with index = product of invariant factors of b in s-coordinates
    IntMatrix coords(b.rows(), s.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
      auto c = lattice_coordinates(s, b.row(i));
      REQUIRE(c.has_value());
      for (std::size_t j = 0; j < s.rows(); ++j) coords(i, j) = (*c)[j];
    }
    // saturated: the top determinantal divisor of s is 1
    if (s.rows() > 0) CHECK(testsupport::determinantal_divisor(s, s.rows()) == 1);
    const auto f = invariant_factors(coords);
    CHECK(f.size() == s.rows());
    CHECK(product(f) * testsupport::determinantal_divisor(s, s.rows()) ==
          (s.rows() ? testsupport::determinantal_divisor(b, s.rows()) : Integer(1)));
  }
}

TEST_CASE("right kernel and solve_left") {
  auto k = right_kernel(IntMatrix{{1, 5}});
  REQUIRE(k.rows() == 1);
  CHECK(k == IntMatrix{{5, -1}});  // HNF of +-(5,-1) has a positive pivot
  CHECK(right_kernel(IntMatrix(0, 2)) == IntMatrix::identity(2));

  auto x = solve_left(IntMatrix{{1, 0}, {1, 5}}, IntVector{3, 10});
  REQUIRE(x.has_value());
  CHECK((*x) * IntMatrix{{1, 0}, {1, 5}} == IntVector{3, 10});
  CHECK_FALSE(solve_left(IntMatrix{{2, 0}}, IntVector{1, 0}).has_value());
  CHECK_FALSE(solve_left(IntMatrix(0, 2), IntVector{1, 0}).has_value());

  std::mt19937 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testsupport::random_matrix(rng, 1 + rng() % 3, 3, -4, 4);
    auto ker = right_kernel(m);
    CHECK(ker.rows() == 3 - rank(m));
    CHECK((m * ker.transpose()).is_zero());
    if (ker.rows() > 0) CHECK(testsupport::determinantal_divisor(ker, ker.rows()) == 1);
  }
}

TEST_CASE("exterior power map") {
  IntMatrix m{{1, 2}, {3, 4}};
  CHECK(exterior_power_map(m, 0) == IntMatrix{{1}});
  CHECK(exterior_power_map(m, 1) == m);
  CHECK(exterior_power_map(m, 2) == IntMatrix{{-2}});

  std::mt19937 rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = testsupport::random_matrix(rng, 3, 3, -3, 3);
    auto b = testsupport::random_matrix(rng, 3, 3, -3, 3);
    for (std::size_t p = 0; p <= 3; ++p)
      CHECK(exterior_power_map(a * b, p) == exterior_power_map(a, p) * exterior_power_map(b, p));
  }
}

namespace {

// Brute force: phases on the basis rows from the grid {j / N}.
std::vector<PhaseVector> brute_force_phases(const IntMatrix& basis, const std::vector<PhaseConstraint>& cons, long grid) {
  std::vector<PhaseVector> out;
  const std::size_t r = basis.rows();
  std::vector<long> pick(r, 0);
  for (;;) {
    PhaseVector phi(r);
    for (std::size_t i = 0; i < r; ++i) phi[i] = Rational(pick[i], grid);
    bool ok = true;
    for (const auto& c : cons) {
      auto coords = lattice_coordinates(basis, c.vector);
      Rational v;
      for (std::size_t i = 0; i < r; ++i) v = v + Rational((*coords)[i]) * phi[i];
      if ((v - c.phase).mod_one() != Rational()) ok = false;
    }
    if (ok) out.push_back(phi);
    std::size_t pos = 0;
    while (pos < r && ++pick[pos] == grid) pick[pos++] = 0;
    if (pos == r) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("phase extension: fixed cases") {
  auto z2 = IntMatrix::identity(2);
  auto sols = solve_phase_extension(z2, {{{1, 0}, Rational(0)}, {{1, 5}, Rational(0)}});
  REQUIRE(sols.has_value());
  CHECK(sols->size() == 5);

  auto quarter = solve_phase_extension(IntMatrix{{1, 0}}, {{{2, 0}, Rational(1, 2)}});
  REQUIRE(quarter.has_value());
  CHECK(*quarter == std::vector<PhaseVector>{{Rational(1, 4)}, {Rational(3, 4)}});

  CHECK_THROWS_AS(solve_phase_extension(z2, {{{1, 0}, Rational(0)}}), Error);
  CHECK_THROWS_AS(solve_phase_extension(IntMatrix{{1, 0}}, {{{0, 1}, Rational(0)}}), Error);

  // x = 0 and x = 1/2 on the same generator: inconsistent
  auto none = solve_phase_extension(IntMatrix{{1, 0}}, {{{1, 0}, Rational(0)}, {{1, 0}, Rational(1, 2)}});
  CHECK_FALSE(none.has_value());
}

TEST_CASE("phase extension: count and brute force on random systems") {
  std::mt19937 rng(17);
  int consistent = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto basis = IntMatrix::identity(2);
    const std::size_t m = 2 + rng() % 2;
    std::vector<PhaseConstraint> cons;
    IntMatrix coords(m, 2);
    for (std::size_t i = 0; i < m; ++i) {
      IntVector v{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3};
      coords(i, 0) = v[0];
      coords(i, 1) = v[1];
      cons.push_back({v, Rational(static_cast<long>(rng() % 2), 2)});
    }
    if (rank(coords) < 2) continue;
    const auto sols = solve_phase_extension(basis, cons);
    const long grid = 2 * testsupport::determinantal_divisor(coords, 2).get_si();
    const auto brute = brute_force_phases(basis, cons, grid);
    if (!sols) {
      CHECK(brute.empty());
      continue;
    }
    ++consistent;
    CHECK(*sols == brute);
    CHECK(Integer(static_cast<long>(sols->size())) == product(invariant_factors(coords)));
  }
  CHECK(consistent > 10);
}
