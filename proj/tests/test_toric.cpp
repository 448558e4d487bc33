#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "foliq/error.hpp"
#include "foliq/toric.hpp"

using namespace foliq;
using namespace foliq::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

// Lattice points of a rational polytope by scanning the cube [-r, r]^n.
std::set<std::vector<long>> lattice_points(const SimplePolytope& p, long r) {
  std::set<std::vector<long>> out;
  std::vector<long> x(p.dimension, -r);
  for (;;) {
    bool inside = true;
    for (const auto& f : p.facets) {
      Rational s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += f.normal[i].rational_part() * x[i];
      if (s > f.bound.rational_part()) inside = false;
    }
    if (inside) out.insert(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == r) x[i++] = -r;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

// Every b in [0, r]^d with c - b in the image of pi^*, by exact elimination.
std::set<LatticeWeight> exhaustive_b_search(const PratoQuasifold& q, std::int64_t r) {
  std::set<LatticeWeight> out;
  const AlgebraMatrix pullback = q.pi().transpose();
  LatticeWeight b(q.facets(), 0);
  for (;;) {
    AlgebraVector target = q.constants();
    for (std::size_t i = 0; i < b.size(); ++i) target[i] -= AlgebraContext().from_rational(static_cast<long>(b[i]));
    if (image_preimage(pullback, target)) out.insert(b);
    std::size_t i = 0;
    while (i < b.size() && b[i] == r) b[i++] = 0;
    if (i == b.size()) break;
    ++b[i];
  }
  return out;
}

std::set<LatticeWeight> b_set(const QuantizationResult& r) {
  std::set<LatticeWeight> out;
  for (const auto& e : r.entries) out.insert(e.b);
  return out;
}

std::multiset<std::vector<long>> root_weights(const QuantizationResult& r) {
  std::multiset<std::vector<long>> out;
  for (const auto& e : r.entries) {
    std::vector<long> w;
    for (const auto& x : e.root) {
      REQUIRE(x.is_integer());
      w.push_back(x.rational_part().get_num().get_si());
    }
    out.insert(w);
  }
  return out;
}

AlgebraVector rv(std::initializer_list<Rational> xs) { return rational_vector(xs); }

}  // namespace

TEST_CASE("build_quasifold computes the kernel of pi") {
  CHECK(build_quasifold(interval(2)).kernel() == std::vector<AlgebraVector>{rv({1, 1})});
  CHECK(build_quasifold(cp2(2)).kernel() == std::vector<AlgebraVector>{rv({1, 1, 1})});
  const auto ctx = sqrt2_context();
  const auto q = build_quasifold(quasi_interval());
  REQUIRE(q.kernel().size() == 1);
  CHECK(q.kernel()[0] == AlgebraVector{ctx.generator(1), ctx.one()});
  for (const auto& k : q.kernel()) CHECK(is_zero(q.pi().apply(k)));
}

TEST_CASE("build_quasifold rejects bad polytopes") {
  CHECK(kind_of([] { build_quasifold(SimplePolytope{1, {rational_facet({-1}, 0)}}); }) == ErrorKind::Unbounded);
  // A quadrant is unbounded even though its normals span.
  CHECK(kind_of([] {
          build_quasifold(SimplePolytope{2, {rational_facet({-1, 0}, 0), rational_facet({0, -1}, 0)}});
        }) == ErrorKind::Unbounded);
  CHECK(kind_of([] {
          build_quasifold(SimplePolytope{1, {rational_facet({1}, -1), rational_facet({-1}, 0)}});
        }) == ErrorKind::Empty);
  CHECK(kind_of([] {
          build_quasifold(SimplePolytope{2, {rational_facet({1, 0}, 1), rational_facet({-1, 0}, 0)}});
        }) == ErrorKind::PiNotSurjective);
  // Square pyramid: four facets meet at the apex.
  const SimplePolytope pyramid{3,
                               {rational_facet({0, 0, -1}, 0), rational_facet({1, 0, 1}, 1),
                                rational_facet({-1, 0, 1}, 1), rational_facet({0, 1, 1}, 1),
                                rational_facet({0, -1, 1}, 1)}};
  CHECK(kind_of([&] { build_quasifold(pyramid); }) == ErrorKind::NotSimple);
  // The degenerate interval [0, 0] is a single point and is accepted.
  CHECK(build_quasifold(interval(0)).vertices().size() == 1);
}

TEST_CASE("vertices") {
  CHECK(vertices(interval(2)) == std::vector<AlgebraVector>{rv({0}), rv({2})});
  CHECK(vertices(cp2(1)) == std::vector<AlgebraVector>{rv({0, 0}), rv({0, 1}), rv({1, 0})});
  const auto ctx = sqrt2_context();
  const auto v = vertices(quasi_interval());
  REQUIRE(v.size() == 2);
  CHECK(v[0][0].is_zero());
  CHECK(v[1][0] == ctx.one());
}

TEST_CASE("quantize") {
  {
    const auto r = quantize(build_quasifold(interval(2)));
    REQUIRE(r.dimension() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r.entries[i].xi == rv({Rational(static_cast<long>(i))}));
      CHECK(r.entries[i].b == LatticeWeight{static_cast<std::int64_t>(i), 2 - static_cast<std::int64_t>(i)});
    }
  }
  {
    const auto r = quantize(build_quasifold(cp2(2)));
    CHECK(r.dimension() == 6);
    for (const auto& e : r.entries) {
      CHECK(e.xi[0].is_integer());
      CHECK(compare(e.xi[0] + e.xi[1], AlgebraContext().from_rational(2)) != std::strong_ordering::greater);
    }
  }
  {
    const auto q = build_quasifold(quasi_interval());
    const auto r = quantize(q);
    REQUIRE(r.dimension() == 1);
    CHECK(r.entries[0].xi == rv({1}));
    CHECK(r.entries[0].b == LatticeWeight{1, 0});
  }
}

TEST_CASE("quantization entries satisfy c - b = pi^*(xi) and lie in the polytope") {
  for (const auto& p : {interval(3), cp2(4), quasi_interval(), rectangle(2, 3), cp2(Rational(5, 2))}) {
    const auto q = build_quasifold(p);
    const auto r = quantize(q);
    std::set<LatticeWeight> seen;
    for (const auto& e : r.entries) {
      CHECK(q.constants() - to_algebra(e.b) == q.pullback(e.xi));
      CHECK(q.contains(e.xi));
      CHECK(seen.insert(e.b).second);
    }
  }
}

TEST_CASE("CP2 quantization counts lattice points") {
  for (long k = 0; k <= 12; ++k) {
    const auto p = cp2(k);
    const auto r = quantize(build_quasifold(p));
    CHECK(r.dimension() == static_cast<std::size_t>((k + 1) * (k + 2) / 2));
    CHECK(r.dimension() == lattice_points(p, 14).size());
  }
}

TEST_CASE("quantize agrees with the exhaustive b-search") {
  for (const auto& p : {interval(3), cp2(3), quasi_interval(), rectangle(1, 2), cp2(Rational(7, 3)),
                        interval(Rational(1, 2))}) {
    const auto q = build_quasifold(p);
    CHECK(b_set(quantize(q)) == exhaustive_b_search(q, 8));
  }
}

TEST_CASE("bohr_sommerfeld") {
  const auto q = build_quasifold(interval(2));
  CHECK(bohr_sommerfeld(q, rv({1})) == 1);
  CHECK(bohr_sommerfeld(q, rv({Rational(1, 2)})) == 0);
  CHECK(kind_of([&] { bohr_sommerfeld(q, rv({3})); }) == ErrorKind::OutsidePolytope);
  const auto qi = build_quasifold(quasi_interval());
  CHECK(bohr_sommerfeld(qi, rv({0})) == 0);
  CHECK(bohr_sommerfeld(qi, rv({1})) == 1);
}

TEST_CASE("every quantization weight is a Bohr-Sommerfeld point") {
  for (const auto& p : {cp2(3), quasi_interval(), rectangle(2, 1), interval(0)}) {
    const auto q = build_quasifold(p);
    for (const auto& e : quantize(q).entries) CHECK(bohr_sommerfeld(q, e.xi) == 1);
  }
}

TEST_CASE("shifting moves the Bohr-Sommerfeld test to the origin") {
  const auto q = build_quasifold(cp2(3));
  for (long x = 0; x <= 3; ++x)
    for (long y = 0; x + y <= 3; ++y)
      for (const Rational& frac : {Rational(0), Rational(1, 3)}) {
        const AlgebraVector xi = rv({Rational(x), Rational(y) - frac});
        if (!q.contains(xi)) continue;
        const auto s = shift(q, xi);
        CHECK(bohr_sommerfeld(q, xi) == bohr_sommerfeld(s, rv({0, 0})));
        CHECK(s.to_root(rv({0, 0})) == xi);
      }
}

TEST_CASE("reduce_in_stages") {
  const auto q = build_quasifold(cp2(2));
  {
    const auto r = quantize(reduce_in_stages(q, {rv({1, -1})}, rv({0, 0})));
    CHECK(r.dimension() == 2);
    CHECK(root_weights(r) == std::multiset<std::vector<long>>{{0, 0}, {1, 1}});
  }
  {
    // Level with <xi', (1,-1)> = 1: only (1,0) satisfies x + y <= 2.
    const auto r = quantize(reduce_in_stages(q, {rv({1, -1})}, rv({1, 0})));
    CHECK(r.dimension() == 1);
    CHECK(root_weights(r) == std::multiset<std::vector<long>>{{1, 0}});
  }
  {
    const auto r = quantize(reduce_in_stages(build_quasifold(cp2(3)), {rv({1, -1})}, rv({1, 0})));
    CHECK(root_weights(r) == std::multiset<std::vector<long>>{{1, 0}, {2, 1}});
  }
  {
    // Nothing quotiented: the quasifold shifted by the level.
    const auto s = reduce_in_stages(q, {}, rv({1, 0}));
    CHECK(s.constants() == q.constants() - q.pullback(rv({1, 0})));
    CHECK(root_weights(quantize(s)) == root_weights(quantize(q)));
  }
  {
    const auto iv = build_quasifold(interval(2));
    const auto point = reduce_in_stages(iv, {rv({1})}, rv({1}));
    CHECK(point.dimension() == 0);
    CHECK(quantize(point).dimension() == static_cast<std::size_t>(bohr_sommerfeld(iv, rv({1}))));
    CHECK(quantize(reduce_in_stages(iv, {rv({1})}, rv({Rational(1, 2)}))).dimension() == 0);
  }
  CHECK(kind_of([&] { reduce_in_stages(q, {rv({1, -1})}, rv({3, 0})); }) == ErrorKind::EmptySlice);
  CHECK(kind_of([&] { reduce_in_stages(q, {rv({1, -1})}, rv({2, 0})); }) == ErrorKind::NotTransverse);
}

TEST_CASE("reduced kernels contain the old kernel and the lifts of h'") {
  const auto q = build_quasifold(cp2(2));
  for (auto strategy : {LiftStrategy::Canonical, LiftStrategy::Alternate}) {
    const auto r = reduce_in_stages(q, {rv({1, -1})}, rv({0, 0}), strategy);
    CHECK(r.kernel().size() == 2);
    for (const auto& k : r.kernel()) CHECK(is_zero(r.pi().apply(k)));
    CHECK(rank(AlgebraMatrix::from_rows(AlgebraContext(), r.kernel(), 3)) == 2);
  }
}

TEST_CASE("the reduced quantization does not depend on the lift strategy") {
  const SimplePolytope cube{3,
                            {rational_facet({-1, 0, 0}, 0), rational_facet({0, -1, 0}, 0),
                             rational_facet({0, 0, -1}, 0), rational_facet({1, 0, 0}, 2),
                             rational_facet({0, 1, 0}, 2), rational_facet({0, 0, 1}, 2)}};
  const auto q = build_quasifold(cube);
  const std::vector<std::vector<AlgebraVector>> hs{{rv({1, -1, 0})}, {rv({1, 1, 1})}, {rv({1, 0, -1}), rv({0, 1, -1})}};
  for (const auto& h : hs) {
    const auto a = quantize(reduce_in_stages(q, h, rv({1, 1, 1}), LiftStrategy::Canonical));
    const auto b = quantize(reduce_in_stages(q, h, rv({1, 1, 1}), LiftStrategy::Alternate));
    CHECK(root_weights(a) == root_weights(b));
    CHECK(b_set(a) == b_set(b));
  }
}

TEST_CASE("reductions in stages compose") {
  const SimplePolytope cube{3,
                            {rational_facet({-1, 0, 0}, 0), rational_facet({0, -1, 0}, 0),
                             rational_facet({0, 0, -1}, 0), rational_facet({1, 0, 0}, 3),
                             rational_facet({0, 1, 0}, 2), rational_facet({0, 0, 1}, 2)}};
  struct Case {
    SimplePolytope p;
    AlgebraVector h1, h2, xi1, xi2;
  };
  const std::vector<Case> cases{
      {cube, rv({1, -1, 0}), rv({0, 1, -1}), rv({1, 0, 0}), rv({0, 0, 0})},
      {cube, rv({1, 1, 0}), rv({0, 0, 1}), rv({1, 1, 0}), rv({0, 0, 1})},
      {cp2(4), rv({1, -1}), rv({1, 1}), rv({1, 0}), rv({2, 1})},
  };
  for (const auto& c : cases) {
    const auto q = build_quasifold(c.p);
    const auto once = reduce_in_root_coordinates(q, {c.h1}, c.xi1);
    const auto twice = reduce_in_root_coordinates(once, {c.h2}, c.xi2);
    // h1 + h2 at the level that agrees with xi1 on h1 and with xi2 on h2.
    const auto both_level = [&] {
      const auto m = AlgebraMatrix::from_rows(AlgebraContext(), {c.h1, c.h2}, c.h1.size());
      return *image_preimage(m, {dot(c.xi1, c.h1), dot(c.xi2, c.h2)});
    }();
    const auto direct = reduce_in_root_coordinates(q, {c.h1, c.h2}, both_level);
    const auto a = quantize(twice), b = quantize(direct);
    CHECK(root_weights(a) == root_weights(b));
    CHECK(b_set(a) == b_set(b));
    CHECK(a.dimension() > 0);
  }
}

TEST_CASE("ambient and root characters") {
  const auto q = build_quasifold(cp2(1));
  const auto r = quantize(q);
  const auto amb = ambient_character(q, r);
  CHECK(amb.dimension() == 3);
  CHECK(amb.multiplicity({0, 0, 0}) == 1);
  CHECK(amb.multiplicity({-1, 0, 1}) == 1);
  const auto root = root_character(q, r);
  CHECK(root.multiplicity({0, 0}) == 1);
  CHECK(root.multiplicity({1, 0}) == 1);
  CHECK(root.multiplicity({0, 1}) == 1);

  const auto qi = build_quasifold(quasi_interval());
  const auto amb_i = ambient_character(qi, quantize(qi));
  CHECK(!amb_i.is_integral());
  CHECK(amb_i.dimension() == 1);
  // The only weight is c - b = (-1, sqrt2).
  const auto ctx = sqrt2_context();
  CHECK(amb_i.multiplicity_at({ctx.from_rational(-1), ctx.generator(1)}) == 1);
}

TEST_CASE("halved enclosures give identical quantizations") {
  const auto p = quasi_interval();
  auto tight = p;
  const auto ctx = sqrt2_context().tightened().tightened();
  for (auto& f : tight.facets) {
    for (auto& x : f.normal) x = ctx.element(x.coefficients());
    f.bound = ctx.element(f.bound.coefficients());
  }
  const auto a = quantize(build_quasifold(p)), b = quantize(build_quasifold(tight));
  REQUIRE(a.dimension() == b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    CHECK(a.entries[i].b == b.entries[i].b);
    CHECK(to_string(a.entries[i].xi) == to_string(b.entries[i].xi));
  }
}
