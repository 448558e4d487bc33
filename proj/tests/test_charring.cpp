#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "foliq/charring.hpp"
#include "foliq/error.hpp"

using namespace foliq;
using foliq::testing::rational_vector;
using foliq::testing::sqrt2_context;

namespace {

TorusCharacter integral(std::size_t rank,
                        std::initializer_list<std::pair<LatticeWeight, std::int64_t>> terms) {
  TorusCharacter c(rank);
  for (const auto& [w, m] : terms) c.add(w, m);
  return c;
}

TorusCharacter random_character(std::mt19937_64& rng, std::size_t rank) {
  std::uniform_int_distribution<int> coord(-3, 3), mult(-2, 3), count(0, 5);
  TorusCharacter c(rank);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    LatticeWeight w(rank);
    for (auto& x : w) x = coord(rng);
    c.add(w, mult(rng));
  }
  return c;
}

}  // namespace

TEST_CASE("char_product") {
  const auto c = integral(1, {{{3}, 2}, {{-1}, -1}});
  CHECK(char_product(TorusCharacter::unit(1), c) == c);

  const auto a = integral(1, {{{2}, 1}, {{0}, 1}, {{-2}, 1}});
  const auto b = integral(1, {{{0}, 1}, {{-2}, -1}});
  CHECK(char_product(a, b) == integral(1, {{{2}, 1}, {{-4}, -1}}));

  CHECK(char_product(integral(1, {{{1}, 1}}), integral(1, {{{1}, 1}})) == integral(1, {{{2}, 1}}));
  CHECK(char_product(a, b).size() == 2);  // cancelled weights are not stored

  CHECK_THROWS_AS(char_product(TorusCharacter::unit(1), TorusCharacter::unit(2)), Error);
}

TEST_CASE("char_product is commutative and associative with a neutral unit") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_character(rng, 2);
    const auto b = random_character(rng, 2);
    const auto c = random_character(rng, 2);
    CHECK(char_product(a, b) == char_product(b, a));
    CHECK(char_product(char_product(a, b), c) == char_product(a, char_product(b, c)));
    CHECK(char_product(a, TorusCharacter::unit(2)) == a);
  }
}

TEST_CASE("shifted products add their offsets") {
  const auto ctx = sqrt2_context();
  const AlgebraVector half_root{ctx.from_rational(Rational(1, 2)), ctx.generator(1)};
  TorusCharacter a(2, half_root);
  a.add_value(half_root, 1);
  const auto sq = char_product(a, a);
  CHECK(sq.multiplicity_at({ctx.one(), ctx.from_rational(2) * ctx.generator(1)}) == 1);
  CHECK(sq.dimension() == 1);
}

TEST_CASE("invariant_part keeps exactly the annihilated weights") {
  const auto ctx = sqrt2_context();
  const AlgebraVector shift{ctx.zero(), ctx.generator(1)};
  TorusCharacter c(2, shift);
  for (int b1 = 0; b1 <= 1; ++b1)
    for (int b2 = 0; b2 <= 1; ++b2)
      c.add_value(shift - rational_vector({b1, b2}), 1);
  REQUIRE(c.size() == 4);
  const SubalgebraData h{{{ctx.generator(1), ctx.one()}}};
  const auto kept = invariant_part(c, h);
  REQUIRE(kept.size() == 1);
  CHECK(kept.multiplicity_at({ctx.from_rational(-1), ctx.generator(1)}) == 1);

  CHECK(invariant_part(c, SubalgebraData{}) == c);

  const auto d = integral(2, {{{1, 1}, 1}, {{1, -1}, 1}});
  CHECK(invariant_part(d, SubalgebraData{{rational_vector({1, 1})}}) == integral(2, {{{1, -1}, 1}}));
}

TEST_CASE("invariant_part is an additive idempotent projection and composes on nested subalgebras") {
  std::mt19937_64 rng(9);
  const SubalgebraData small{{rational_vector({1, -1, 0})}};
  const SubalgebraData big{{rational_vector({1, -1, 0}), rational_vector({0, 1, -1})}};
  for (int i = 0; i < 30; ++i) {
    const auto a = random_character(rng, 3);
    const auto b = random_character(rng, 3);
    const auto pa = invariant_part(a, small);
    CHECK(invariant_part(pa, small) == pa);
    CHECK(invariant_part(a + b, small) == pa + invariant_part(b, small));
    CHECK(invariant_part(invariant_part(a, big), small) == invariant_part(a, big));
  }
}

TEST_CASE("restrict_along") {
  const auto c = integral(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(restrict_along(c, {{1, 0}, {0, 1}}) == c);
  CHECK(restrict_along(c, {{1, 1}}) == integral(1, {{{1}, 2}}));
  CHECK(restrict_along(integral(2, {{{2, 1}, 3}}), {{1, -1}}) == integral(1, {{{1}, 3}}));
  CHECK_THROWS_AS(restrict_along(c, {{1, 1, 1}}), Error);
}

TEST_CASE("finite_group_invariants") {
  const auto c = integral(1, {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}, {{4}, 1}});
  CHECK(finite_group_invariants(c, {2}, {{1}}) == integral(1, {{{0}, 1}, {{2}, 1}, {{4}, 1}}));
  CHECK(finite_group_invariants(c, {1}, {{1}}) == c);
  CHECK(finite_group_invariants(integral(1, {{{1}, 1}, {{2}, 1}}), {3}, {{1}}).empty());
  CHECK(finite_group_invariants(integral(1, {{{-2}, 1}, {{-3}, 1}}), {2}, {{1}}) ==
        integral(1, {{{-2}, 1}}));
  CHECK_THROWS_AS(finite_group_invariants(c, {2, 3}, {{1}}), Error);
}

TEST_CASE("weights outside the offset coset are rejected") {
  const auto ctx = sqrt2_context();
  TorusCharacter c(1, {ctx.generator(1)});
  try {
    c.add_value({ctx.one()}, 1);
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainMismatch);
  }
  TorusCharacter z(1, rational_vector({3}));
  CHECK(z.is_integral());
}
