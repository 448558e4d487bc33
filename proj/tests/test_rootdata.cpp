#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include "foliq/error.hpp"
#include "foliq/rootdata.hpp"

using namespace foliq;

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

IrrepLabel label(LatticeWeight w) { return IrrepLabel{std::move(w), {}}; }

TorusCharacter integral(std::size_t rank,
                        std::initializer_list<std::pair<LatticeWeight, std::int64_t>> terms) {
  TorusCharacter c(rank);
  for (const auto& [w, m] : terms) c.add(w, m);
  return c;
}

// Kostka numbers for GL3: semistandard tableaux of shape (a+b, b) with
// entries in {1,2,3}, counted by content. The weight with content (m1,m2,m3)
// has fundamental coordinates (m1-m2, m2-m3).
TorusCharacter a2_by_tableaux(std::int64_t a, std::int64_t b) {
  TorusCharacter c(2);
  const std::int64_t top = a + b;
  // Row 1: i ones, j twos, rest threes. Row 2: entries 2 or 3, p twos.
  for (std::int64_t i = 0; i <= top; ++i)
    for (std::int64_t j = 0; i + j <= top; ++j)
      for (std::int64_t p = 0; p <= b; ++p) {
        // Column strictness: row-2 box k sits below row-1 box k.
        bool ok = true;
        for (std::int64_t k = 0; k < b && ok; ++k) {
          const int upper = k < i ? 1 : (k < i + j ? 2 : 3);
          const int lower = k < p ? 2 : 3;
          ok = upper < lower;
        }
        if (!ok) continue;
        const std::array<std::int64_t, 3> m{i, j + p, (top - i - j) + (b - p)};
        c.add({m[0] - m[1], m[1] - m[2]}, 1);
      }
  return c;
}

// Weights of the standard representation of SU(3) and of its dual.
TorusCharacter a2_standard() { return integral(2, {{{1, 0}, 1}, {{-1, 1}, 1}, {{0, -1}, 1}}); }
TorusCharacter a2_dual() { return integral(2, {{{-1, 0}, 1}, {{1, -1}, 1}, {{0, 1}, 1}}); }

// Brute-force tensor product: sum every pair of weights.
TorusCharacter tensor(const TorusCharacter& a, const TorusCharacter& b) {
  TorusCharacter out(a.rank());
  for (const auto& [wa, ma] : a.terms())
    for (const auto& [wb, mb] : b.terms()) {
      LatticeWeight w(wa.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out.add(w, ma * mb);
    }
  return out;
}

}  // namespace

TEST_CASE("build_root_datum") {
  const auto a1 = build_root_datum("A", 1);
  REQUIRE(a1.simple_roots().size() == 1);
  CHECK(a1.simple_roots()[0].weight == LatticeWeight{2});
  CHECK(a1.weyl_group().size() == 2);
  CHECK(a1.rho() == LatticeWeight{1});

  const auto a2 = build_root_datum("A", 2);
  CHECK(a2.positive_roots().size() == 3);
  CHECK(a2.weyl_group().size() == 6);
  CHECK(build_root_datum("A", 3).weyl_group().size() == 24);

  CHECK(kind_of([] { build_root_datum("A", 0); }) == ErrorKind::UnsupportedType);
  CHECK(kind_of([] { build_root_datum("B", 2); }) == ErrorKind::UnsupportedType);
  CHECK(kind_of([] { RootDatum::from_cartan_matrix({{2, -1}, {-2, 2}}); }) == ErrorKind::UnsupportedType);
  // Affine A1 is not of finite type.
  CHECK(kind_of([] { RootDatum::from_cartan_matrix({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}); }) ==
        ErrorKind::UnsupportedType);
}

TEST_CASE("root datum invariants") {
  for (const auto& d : {build_root_datum("A", 1), build_root_datum("A", 2), build_root_datum("A", 3),
                        RootDatum::product(build_root_datum("A", 1), build_root_datum("A", 2))}) {
    // Closed under composition: every product of elements is an element.
    std::set<IntMatrix> elems(d.weyl_group().begin(), d.weyl_group().end());
    CHECK(elems.size() == d.weyl_group().size());
    for (const auto& g : d.weyl_group())
      for (const auto& h : d.weyl_group()) {
        IntMatrix gh(d.rank(), std::vector<std::int64_t>(d.rank(), 0));
        for (std::size_t i = 0; i < d.rank(); ++i)
          for (std::size_t k = 0; k < d.rank(); ++k)
            for (std::size_t j = 0; j < d.rank(); ++j) gh[i][j] += g[i][k] * h[k][j];
        CHECK(elems.count(gh) == 1);
      }
    // rho is the sum of fundamental weights and half the sum of positive roots.
    LatticeWeight sum_fw(d.weight_rank(), 0), sum_roots(d.rank(), 0);
    for (const auto& w : d.fundamental_weights())
      for (std::size_t i = 0; i < w.size(); ++i) sum_fw[i] += w[i];
    CHECK(sum_fw == d.rho());
    for (const auto& a : d.positive_roots()) {
      for (auto c : a.coords) CHECK(c >= 0);
      for (std::size_t i = 0; i < d.rank(); ++i) sum_roots[i] += a.weight[i];
    }
    for (std::size_t i = 0; i < d.rank(); ++i) CHECK(sum_roots[i] == 2 * d.rho()[i]);
  }
}

TEST_CASE("irrep_weight_multiplicities") {
  const auto a1 = build_root_datum("A", 1);
  CHECK(irrep_weight_multiplicities(a1, label({2})) == integral(1, {{{2}, 1}, {{0}, 1}, {{-2}, 1}}));
  CHECK(irrep_weight_multiplicities(a1, label({0})) == TorusCharacter::unit(1));

  const auto a2 = build_root_datum("A", 2);
  const auto adj = irrep_weight_multiplicities(a2, label({1, 1}));
  CHECK(adj.dimension() == 8);
  CHECK(adj.multiplicity({0, 0}) == 2);
  for (const auto& a : a2.positive_roots()) {
    CHECK(adj.multiplicity(a.weight) == 1);
    CHECK(adj.multiplicity({-a.weight[0], -a.weight[1]}) == 1);
  }
  CHECK(adj.size() == 7);

  CHECK(kind_of([&] { irrep_weight_multiplicities(a2, label({-1, 0})); }) == ErrorKind::InvalidLabel);
  CHECK(kind_of([&] { irrep_weight_multiplicities(a2, label({1})); }) == ErrorKind::InvalidLabel);
}

TEST_CASE("A1 irreps are unbroken strings of multiplicity one") {
  const auto a1 = build_root_datum("A", 1);
  for (std::int64_t k = 0; k <= 8; ++k) {
    TorusCharacter expected(1);
    for (std::int64_t j = 0; j <= k; ++j) expected.add({k - 2 * j}, 1);
    CHECK(irrep_weight_multiplicities(a1, label({k})) == expected);
  }
}

TEST_CASE("A2 multiplicities agree with semistandard tableaux counts") {
  const auto a2 = build_root_datum("A", 2);
  for (std::int64_t a = 0; a <= 4; ++a)
    for (std::int64_t b = 0; a + b <= 5; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(irrep_weight_multiplicities(a2, label({a, b})) == a2_by_tableaux(a, b));
    }
}

TEST_CASE("Freudenthal totals match closed-form dimensions") {
  const auto a1 = build_root_datum("A", 1);
  for (std::int64_t k = 0; k <= 8; ++k)
    CHECK(irrep_weight_multiplicities(a1, label({k})).dimension() == k + 1);
  const auto a2 = build_root_datum("A", 2);
  for (std::int64_t a = 0; a <= 8; ++a)
    for (std::int64_t b = 0; a + b <= 8; ++b) {
      const auto dim = irrep_weight_multiplicities(a2, label({a, b})).dimension();
      CHECK(dim == (a + 1) * (b + 1) * (a + b + 2) / 2);
      CHECK(Integer(static_cast<long>(dim)) == weyl_dimension(a2, label({a, b})));
    }
  const auto a3 = build_root_datum("A", 3);
  // Fundamental representations of SU(4): 4, 6, 4; adjoint 15.
  CHECK(irrep_weight_multiplicities(a3, label({1, 0, 0})).dimension() == 4);
  CHECK(irrep_weight_multiplicities(a3, label({0, 1, 0})).dimension() == 6);
  CHECK(irrep_weight_multiplicities(a3, label({1, 0, 1})).dimension() == 15);
  CHECK(irrep_weight_multiplicities(a3, label({1, 0, 1})).multiplicity({0, 0, 0}) == 3);
}

TEST_CASE("wedge_n_minus") {
  CHECK(wedge_n_minus(build_root_datum("A", 1)) == integral(1, {{{0}, 1}, {{-2}, -1}}));
  CHECK(wedge_n_minus(RootDatum::trivial()) == TorusCharacter::unit(0));
  const auto w2 = wedge_n_minus(build_root_datum("A", 2));
  // Eight signed terms, the two copies of e^{-alpha1-alpha2} cancel.
  CHECK(w2.size() == 6);
  for (const auto& d : {build_root_datum("A", 1), build_root_datum("A", 2), build_root_datum("A", 3)}) {
    const auto w = wedge_n_minus(d);
    CHECK(w.multiplicity(LatticeWeight(d.rank(), 0)) == 1);
    CHECK(w.dimension() == 0);
  }
}

TEST_CASE("g_invariant_multiplicity") {
  const auto a1 = build_root_datum("A", 1);
  const auto v2 = irrep_weight_multiplicities(a1, label({2}));
  CHECK(g_invariant_multiplicity(a1, v2) == 0);
  CHECK(g_invariant_multiplicity(a1, TorusCharacter::unit(1)) == 1);
  CHECK(g_invariant_multiplicity(a1, v2 + TorusCharacter::unit(1)) == 1);
  CHECK(kind_of([&] { g_invariant_multiplicity(a1, integral(1, {{{2}, 1}})); }) ==
        ErrorKind::NotWeylSymmetric);

  const auto a2 = build_root_datum("A", 2);
  for (std::int64_t a = 0; a <= 4; ++a)
    for (std::int64_t b = 0; a + b <= 4; ++b)
      CHECK(g_invariant_multiplicity(a2, irrep_weight_multiplicities(a2, label({a, b}))) ==
            (a == 0 && b == 0 ? 1 : 0));
}

TEST_CASE("decompose_into_irreps") {
  const auto a1 = build_root_datum("A", 1);
  for (std::int64_t k = 0; k <= 6; ++k) {
    TorusCharacter c(1);
    for (std::int64_t j = 0; j <= k; ++j) c.add({k - 2 * j}, 1);
    CHECK(decompose_into_irreps(a1, c) == IrrepDecomposition{{label({k}), 1}});
  }
  CHECK(decompose_into_irreps(a1, integral(1, {{{0}, 2}})) == IrrepDecomposition{{label({0}), 2}});

  const auto a2 = build_root_datum("A", 2);
  const IrrepDecomposition expected{{label({1, 1}), 1}, {label({0, 0}), 1}};
  CHECK(decompose_into_irreps(a2, tensor(a2_standard(), a2_dual())) == expected);
  // 3 x 3 = 6 + 3bar.
  CHECK(decompose_into_irreps(a2, tensor(a2_standard(), a2_standard())) ==
        IrrepDecomposition{{label({2, 0}), 1}, {label({0, 1}), 1}});

  CHECK(kind_of([&] { decompose_into_irreps(a2, a2_standard() + integral(2, {{{1, 0}, 1}})); }) ==
        ErrorKind::NotWeylSymmetric);
  CHECK(kind_of([&] { decompose_into_irreps(a1, a2_standard()); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("virtual characters decompose with signed multiplicities") {
  const auto a1 = build_root_datum("A", 1);
  const auto c = irrep_weight_multiplicities(a1, label({3})) - irrep_weight_multiplicities(a1, label({1}));
  CHECK(decompose_into_irreps(a1, c) == IrrepDecomposition{{label({3}), 1}, {label({1}), -1}});
}

TEST_CASE("decompose_into_irreps round-trips random sums") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coeff(0, 3), coord(0, 3);
  const std::vector<RootDatum> data{build_root_datum("A", 1), build_root_datum("A", 2),
                                    RootDatum::product(build_root_datum("A", 1), build_root_datum("A", 1)),
                                    build_root_datum("A", 1, 1)};
  for (const auto& d : data) {
    for (int trial = 0; trial < 15; ++trial) {
      IrrepDecomposition sum;
      TorusCharacter c(d.weight_rank());
      for (int k = 0; k < 3; ++k) {
        IrrepLabel l;
        for (std::size_t i = 0; i < d.rank(); ++i) l.highest.push_back(coord(rng));
        for (std::size_t i = 0; i < d.center_rank(); ++i) l.central.push_back(coord(rng) - 1);
        const int m = coeff(rng);
        if (m == 0) continue;
        sum[l] += m;
        c += irrep_weight_multiplicities(d, l).scaled(m);
      }
      CHECK(decompose_into_irreps(d, c) == sum);
      const auto trivial_it = sum.find(IrrepLabel{LatticeWeight(d.rank(), 0), LatticeWeight(d.center_rank(), 0)});
      CHECK(g_invariant_multiplicity(d, c) == (trivial_it == sum.end() ? 0 : trivial_it->second));
    }
  }
}
