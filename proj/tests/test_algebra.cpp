#include <doctest.h>

#include <random>

#include "toric_fixtures.hpp"
#include "torusos/algebra.hpp"

using namespace torusos;
using testsupport::arrangement_a1;
using testsupport::arrangement_a2;
using testsupport::arrangement_example2;

namespace {

IntVector vec(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

ToricClass tau_sum(const ToricCohomology& h) {
  ToricClass out;
  for (auto p : h.poset().of_rank(2)) out += ToricClass::basis(p, 0, 0b11);
  return out;
}

ToricClass random_basis_class(std::mt19937& rng, const ToricCohomology& h) {
  for (;;) {
    const auto keys = ring_basis(h, rng() % (h.dim() + 1));
    if (keys.empty()) continue;
    const auto& k = keys[rng() % keys.size()];
    return ToricClass::basis(k.layer, k.exterior, k.os);
  }
}

std::size_t degree_of(const ToricClass& c) { return c.terms().begin()->first.degree(); }

// arrangements small enough for exhaustive ring checks
ToricArrangement small_random(std::mt19937& rng, std::size_t max_n) {
  return testsupport::random_toric(rng, 3, max_n);
}

}  // namespace

TEST_CASE("layer bases of the first two-line example") {
  const ToricCohomology h(arrangement_a1());
  CHECK(layer_basis(h, 0).size() == 4);
  CHECK(layer_basis(h, h.layer_of_hypertorus(0)).size() == 2);
  for (auto p : h.poset().of_rank(2)) CHECK(layer_basis(h, p).size() == 1);
  for (std::size_t l = 0; l < h.layer_count(); ++l)
    CHECK(layer_basis(h, l).size() ==
          (std::size_t{1} << h.quotient_rank(l)) * nbc_sets(h.local(l), h.rank(l)).size());
}

TEST_CASE("quotient coordinates") {
  const ToricCohomology h(arrangement_a1());
  const auto h10 = h.layer_of_hypertorus(0), h15 = h.layer_of_hypertorus(1);
  CHECK(h.quotient_coordinates(0, vec({3, -2})) == vec({3, -2}));
  CHECK(h.quotient_coordinates(h10, vec({1, 0})) == vec({0}));
  CHECK(h.quotient_coordinates(h15, vec({1, 5})) == vec({0}));
  CHECK(h.quotient_coordinates(h15, vec({0, 1})) != vec({0}));
  // the quotient map to a point is zero and the map from T is the coordinate map
  for (auto p : h.poset().of_rank(2)) CHECK(h.quotient_map(0, p).cols() == 0);
  CHECK(h.quotient_map(0, h15).row(0) == h.quotient_coordinates(h15, vec({1, 0})));
  CHECK(h.quotient_map(0, h15).row(1) == h.quotient_coordinates(h15, vec({0, 1})));
}

TEST_CASE("diagram maps") {
  const ToricCohomology h(arrangement_a1());
  const auto h10 = h.layer_of_hypertorus(0), h15 = h.layer_of_hypertorus(1);
  const auto x1 = torus_class(h, vec({1, 0}));
  CHECK(diagram_map(h, 0, h10, x1).is_zero());
  CHECK(diagram_map(h, 0, h15, torus_class(h, vec({1, 5}))).is_zero());
  CHECK_FALSE(diagram_map(h, 0, h15, x1).is_zero());
  const auto y1 = hypertorus_class(h, 0);
  CHECK(diagram_map(h, h10, h10, y1) == y1);
  CHECK_THROWS_AS(diagram_map(h, h10, h15, y1), Error);
  CHECK_THROWS_AS(diagram_map(h, h10, 0, y1), Error);
}

TEST_CASE("products in the first two-line example") {
  const ToricCohomology h(arrangement_a1());
  const auto x1 = torus_class(h, vec({1, 0})), x2 = torus_class(h, vec({0, 1}));
  const auto y1 = hypertorus_class(h, 0), y2 = hypertorus_class(h, 1);
  CHECK(multiply_A(h, x1, y1).is_zero());
  CHECK(multiply_A(h, torus_class(h, vec({1, 5})), y2).is_zero());
  CHECK(multiply_A(h, x1, x2) == ToricClass::basis(0, 0b11, 0));
  CHECK(multiply_A(h, x2, x1) == ToricClass::basis(0, 0b11, 0, -1));
  // Koszul convention: the sum of the five point classes with sign +
  CHECK(multiply_A(h, y1, y2) == tau_sum(h));
  CHECK(multiply_A(h, y2, y1) == Integer(-1) * tau_sum(h));
  CHECK(multiply_A(h, y1, y1).is_zero());
  CHECK_THROWS_AS(multiply_A(h, ToricClass::basis(0, 0, 1), x1), Error);
}

TEST_CASE("products in the second two-line example") {
  const ToricCohomology h(arrangement_a2());
  const auto y1 = hypertorus_class(h, 0), y2 = hypertorus_class(h, 1);
  CHECK(multiply_A(h, torus_class(h, vec({2, 5})), y2).is_zero());
  CHECK(multiply_A(h, torus_class(h, vec({1, 0})), y1).is_zero());
  CHECK(multiply_A(h, y1, y2) == tau_sum(h));
}

TEST_CASE("annihilator ranks in degree one") {
  const ToricCohomology a(arrangement_a1());
  CHECK(annihilator_rank_deg1(a, torus_class(a, vec({1, 0}))) == 2);
  CHECK(annihilator_rank_deg1(a, hypertorus_class(a, 0)) == 2);
  CHECK(annihilator_rank_deg1(a, torus_class(a, vec({1, 5}))) == 2);
  CHECK(annihilator_rank_deg1(a, hypertorus_class(a, 1)) == 2);
  CHECK(annihilator_rank_deg1(a, torus_class(a, vec({0, 1}))) == 1);

  const ToricCohomology b(arrangement_a2());
  CHECK(annihilator_rank_deg1(b, torus_class(b, vec({1, 0}))) == 2);
  CHECK(annihilator_rank_deg1(b, hypertorus_class(b, 0)) == 2);
  CHECK(annihilator_rank_deg1(b, torus_class(b, vec({2, 5}))) == 2);
  CHECK(annihilator_rank_deg1(b, hypertorus_class(b, 1)) == 2);
  CHECK(annihilator_rank_deg1(b, torus_class(b, vec({0, 1}))) == 1);

  CHECK_THROWS_AS(annihilator_rank_deg1(a, tau_sum(a)), Error);
}

TEST_CASE("embedding, projection and coherence on the first example") {
  const ToricCohomology h(arrangement_a1());
  const auto y1 = hypertorus_class(h, 0);
  const auto p = embed_p(h, y1);
  CHECK(p.terms().size() == 6);
  for (auto pt : h.poset().of_rank(2)) {
    const auto pos = h.local(pt).position_of_label(0);
    REQUIRE(pos);
    CHECK(p.coefficient({pt, 0, singleton(*pos)}) == 1);
  }
  CHECK(is_coherent(h, p));
  CHECK(project_pi(h, p) == y1);
  CHECK(embed_p(h, ToricClass{}).is_zero());
  CHECK(is_coherent(h, ToricClass{}));
  // a top-rank generator has nothing above it
  const auto t0 = ToricClass::basis(h.poset().of_rank(2).front(), 0, 0b11);
  CHECK(embed_p(h, t0) == t0);

  // OS-degree-1 class on a point with no rank-1 sources
  const auto pt = h.poset().of_rank(2).front();
  CHECK_FALSE(is_coherent(h, ToricClass::basis(pt, 0, 0b01)));

  const auto x1 = torus_class(h, vec({1, 0}));
  CHECK(multiply_B(h, embed_p(h, x1), embed_p(h, y1)).is_zero());
  CHECK(multiply_B(h, embed_p(h, ToricClass::basis(0, 0, 0)), p) == p);
  CHECK_THROWS_AS(multiply_B(h, ToricClass::basis(pt, 0, 0b01), p), Error);
}

TEST_CASE("vanishing law for layers meeting in too small a rank") {
  // y1 * y1: rk 1 + rk 1 exceeds the rank of H10 cap H10
  const ToricCohomology h(arrangement_a1());
  const auto y1 = hypertorus_class(h, 0);
  for (auto t : h.above(h.layer_of_hypertorus(0))) {
    const auto img = diagram_map(h, h.layer_of_hypertorus(0), t, y1);
    CHECK(cup(h, t, img, img).is_zero());
  }

  std::mt19937 rng(71);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ToricCohomology g(small_random(rng, 4));
    for (std::size_t l = 1; l < g.layer_count(); ++l)
      for (std::size_t m = 1; m < g.layer_count(); ++m) {
        const auto lattice = saturate(IntMatrix::from_rows(
            [&] {
              std::vector<IntVector> rows;
              for (std::size_t i = 0; i < g.rank(l); ++i) rows.push_back(g.poset().layer(l).lattice.row(i));
              for (std::size_t i = 0; i < g.rank(m); ++i) rows.push_back(g.poset().layer(m).lattice.row(i));
              return rows;
            }(),
            g.dim()));
        if (lattice.rows() >= g.rank(l) + g.rank(m)) continue;
        const auto a = layer_basis(g, l), b = layer_basis(g, m);
        const auto& al = a[rng() % a.size()];
        const auto& bm = b[rng() % b.size()];
        for (auto t : g.above(l)) {
          if (!g.poset().leq(m, t)) continue;
          CHECK(cup(g, t, diagram_map(g, l, t, al), diagram_map(g, m, t, bm)).is_zero());
          ++checked;
        }
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("Whitney check") {
  const ToricCohomology a(arrangement_a1());
  const auto report = whitney_check(a);
  CHECK(report.ok());
  CHECK(report.rows[0].mobius == 1);
  for (auto p : a.poset().of_rank(2)) {
    CHECK(report.rows[p].mobius == 1);
    CHECK(report.rows[p].nbc == 1);
  }

  const ToricCohomology e(arrangement_example2());
  const auto r2 = whitney_check(e);
  CHECK(r2.ok());
  std::size_t triple_points = 0;
  for (auto p : e.poset().of_rank(2))
    if (r2.rows[p].nbc == 2) {
      CHECK(abs(r2.rows[p].mobius) == 2);
      ++triple_points;
    }
  CHECK(triple_points == 2);

  std::mt19937 rng(72);
  for (int trial = 0; trial < 30; ++trial) CHECK(whitney_check(ToricCohomology(small_random(rng, 5))).ok());
}

TEST_CASE("Betti numbers") {
  CHECK(betti(arrangement_a1(), 0) == 1);
  CHECK(betti(arrangement_a1(), 1) == 4);
  CHECK(betti(arrangement_a1(), 2) == 8);
  CHECK(betti(arrangement_a1(), 3) == 0);
  CHECK(betti(arrangement_example2(), 2) == 12);

  std::mt19937 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = small_random(rng, 5);
    const ToricCohomology h(a);
    const auto p = poincare_polynomial(a);
    for (std::size_t k = 0; k <= a.dim(); ++k) {
      const Integer expected = k < p.size() ? p[k] : Integer(0);
      CHECK(betti(a, k) == expected);
      CHECK(Integer(static_cast<unsigned long>(ring_basis(h, k).size())) == expected);
    }
  }
}

TEST_CASE("degree-one generation") {
  const ToricCohomology e(arrangement_example2());
  const auto r = degree1_generation(e);
  CHECK_FALSE(r.generated());
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[1].betti == 12);
  CHECK(r.rows[1].product_rank <= 11);

  // the point classes of the two-line example are reached only through y1 y2
  const auto a1 = degree1_generation(ToricCohomology(arrangement_a1()));
  CHECK_FALSE(a1.generated());
  CHECK(a1.rows[1].product_rank == 4);
  CHECK(a1.rows[1].betti == 8);

  const ToricCohomology boolean(ToricArrangement(2, {{vec({1, 0}), Rational(0)}, {vec({0, 1}), Rational(0)}}));
  const auto b = degree1_generation(boolean);
  CHECK(b.generated());
  CHECK(b.generated_over_z());

  const auto empty = degree1_generation(ToricCohomology(ToricArrangement(3, {})));
  CHECK(empty.generated_over_z());
  CHECK(empty.rows.back().betti == 1);
}

TEST_CASE("ring axioms on random arrangements") {
  std::mt19937 rng(74);
  for (int trial = 0; trial < 25; ++trial) {
    const ToricCohomology h(small_random(rng, 4));
    for (int k = 0; k < 6; ++k) {
      const auto a = random_basis_class(rng, h), b = random_basis_class(rng, h), c = random_basis_class(rng, h);
      CHECK(multiply_A(h, multiply_A(h, a, b), c) == multiply_A(h, a, multiply_A(h, b, c)));
      const int sign = (degree_of(a) * degree_of(b)) % 2 ? -1 : 1;
      CHECK(multiply_A(h, a, b) == Integer(sign) * multiply_A(h, b, a));
      const auto one = ToricClass::basis(0, 0, 0);
      CHECK(multiply_A(h, one, a) == a);
    }
  }
}

TEST_CASE("p is a ring isomorphism onto coherent elements") {
  std::mt19937 rng(75);
  for (int trial = 0; trial < 25; ++trial) {
    const ToricCohomology h(small_random(rng, 4));
    for (int k = 0; k < 5; ++k) {
      const auto a = random_basis_class(rng, h), b = random_basis_class(rng, h);
      const auto pa = embed_p(h, a), pb = embed_p(h, b);
      CHECK(is_coherent(h, pa));
      CHECK(project_pi(h, pa) == a);
      const auto prod = multiply_B(h, pa, pb);
      CHECK(prod == embed_p(h, multiply_A(h, a, b)));
      CHECK(prod == multiply_natural(h, pa, pb));
    }
  }
}

TEST_CASE("ring snapshot") {
  const ToricCohomology h(arrangement_a1());
  const auto s = ring_snapshot(h, {2}, false);
  CHECK(s.basis.size() == 8);
  CHECK(s.constants.empty());
  CHECK(s.labels.front() == "(L0.0, {0,1}, {})");

  const auto full = ring_snapshot(h, {2}, true);
  CHECK(full.degrees == std::vector<std::size_t>{0, 1, 2});
  CHECK(full.basis.size() == 13);
  CHECK_FALSE(full.constants.empty());

  // the empty arrangement gives the exterior algebra
  const ToricCohomology t(ToricArrangement(2, {}));
  const auto ext = ring_snapshot(t, {0, 1, 2}, true);
  CHECK(ext.basis.size() == 4);
  std::size_t nonzero = 0;
  for (const auto& c : ext.constants)
    if (ext.degree_of[c.left] == 1 && ext.degree_of[c.right] == 1) {
      CHECK(c.left != c.right);
      CHECK(c.coefficient == (c.left < c.right ? 1 : -1));
      ++nonzero;
    }
  CHECK(nonzero == 2);
}
