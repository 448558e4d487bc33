#pragma once

// Shared algebra contexts for the test suites.

#include "foliq/algebra.hpp"
#include "foliq/toric.hpp"

namespace foliq::testing {

// Q(sqrt2) with sqrt2 in [7/5, 3/2].
inline AlgebraContext sqrt2_context() {
  MultiplicationTable t(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  t[0][0] = {1, 0};
  t[0][1] = t[1][0] = {0, 1};
  t[1][1] = {2, 0};
  return AlgebraContext::make({"1", "sqrt2"}, t,
                              {{1, 1}, {Rational(7, 5), Rational(3, 2)}});
}

// Q(phi) with phi^2 = phi + 1, phi in [8/5, 13/8].
inline AlgebraContext golden_context() {
  MultiplicationTable t(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  t[0][0] = {1, 0};
  t[0][1] = t[1][0] = {0, 1};
  t[1][1] = {1, 1};
  return AlgebraContext::make({"1", "phi"}, t, {{1, 1}, {Rational(8, 5), Rational(13, 8)}});
}

// Q(sqrt2, sqrt3) on the basis 1, sqrt2, sqrt3, sqrt6.
inline AlgebraContext biquadratic_context() {
  const std::size_t n = 4;
  MultiplicationTable t(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  auto set = [&](std::size_t a, std::size_t b, std::size_t c, long k) {
    t[a][b] = std::vector<Rational>(n);
    t[a][b][c] = k;
    t[b][a] = t[a][b];
  };
  for (std::size_t b = 0; b < n; ++b) set(0, b, b, 1);
  set(1, 1, 0, 2);
  set(2, 2, 0, 3);
  set(3, 3, 0, 6);
  set(1, 2, 3, 1);
  set(1, 3, 2, 2);
  set(2, 3, 1, 3);
  return AlgebraContext::make({"1", "sqrt2", "sqrt3", "sqrt6"}, t,
                              {{1, 1},
                               {Rational(7, 5), Rational(3, 2)},
                               {Rational(17, 10), Rational(7, 4)},
                               {Rational(12, 5), Rational(5, 2)}});
}

inline AlgebraVector rational_vector(std::initializer_list<Rational> xs) {
  AlgebraVector v;
  for (const auto& x : xs) v.push_back(AlgebraContext().from_rational(x));
  return v;
}

inline Facet rational_facet(std::initializer_list<Rational> normal, const Rational& bound) {
  return Facet{rational_vector(normal), AlgebraContext().from_rational(bound)};
}

// [0, k] as -x <= 0, x <= k.
inline SimplePolytope interval(const Rational& k) {
  return SimplePolytope{1, {rational_facet({-1}, 0), rational_facet({1}, k)}};
}

// The simplex x >= 0, y >= 0, x + y <= k.
inline SimplePolytope cp2(const Rational& k) {
  return SimplePolytope{2, {rational_facet({-1, 0}, 0), rational_facet({0, -1}, 0), rational_facet({1, 1}, k)}};
}

// -x <= 0, sqrt2 x <= sqrt2: the interval [0, 1] with an irrational normal.
inline SimplePolytope quasi_interval() {
  const auto ctx = sqrt2_context();
  return SimplePolytope{1, {Facet{{ctx.from_rational(-1)}, ctx.zero()},
                            Facet{{ctx.generator(1)}, ctx.generator(1)}}};
}

// [0, a] x [0, b].
inline SimplePolytope rectangle(const Rational& a, const Rational& b) {
  return SimplePolytope{2, {rational_facet({-1, 0}, 0), rational_facet({0, -1}, 0), rational_facet({1, 0}, a),
                            rational_facet({0, 1}, b)}};
}

}  // namespace foliq::testing
