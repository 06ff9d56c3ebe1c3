#pragma once

#include <random>

#include "torusos/toric.hpp"

namespace testsupport {

using torusos::Hypertorus;
using torusos::IntVector;
using torusos::Rational;
using torusos::ToricArrangement;

inline ToricArrangement arrangement_a1() {
  return ToricArrangement(2, {{{1, 0}, Rational(0)}, {{1, 5}, Rational(0)}});
}

inline ToricArrangement arrangement_a2() {
  return ToricArrangement(2, {{{1, 0}, Rational(0)}, {{2, 5}, Rational(0)}});
}

// three concurrent lines through the identity and a fourth at phase 1/3
inline ToricArrangement arrangement_example2() {
  return ToricArrangement(2, {{{1, 0}, Rational(0)},
                              {{1, 2}, Rational(0)},
                              {{1, 3}, Rational(0)},
                              {{0, 1}, Rational(1, 3)}});
}

inline ToricArrangement random_toric(std::mt19937& rng, std::size_t max_d, std::size_t max_n, bool centered = false) {
  const std::size_t d = 1 + rng() % max_d;
  const std::size_t n = rng() % (max_n + 1);
  std::uniform_int_distribution<long> entry(-3, 3);
  const Rational phases[] = {Rational(0), Rational(1, 2), Rational(1, 3)};
  std::vector<Hypertorus> h;
  while (h.size() < n) {
    IntVector chi(d);
    bool zero = true;
    for (auto& x : chi) {
      x = entry(rng);
      if (x != 0) zero = false;
    }
    if (zero) continue;
    h.push_back({chi, centered ? Rational(0) : phases[rng() % 3]});
  }
  return ToricArrangement(d, h);
}

}  // namespace testsupport
