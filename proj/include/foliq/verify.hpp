#pragma once

// Cross-checks between independent computations. Every check compares exact
// integers per weight and keeps the first ten disagreements.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "foliq/localization.hpp"
#include "foliq/rootdata.hpp"
#include "foliq/toric.hpp"

namespace foliq {

struct WeightRow {
  std::string weight;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
};

struct CheckReport {
  static constexpr std::size_t kMaxCounterexamples = 10;

  std::string name;
  std::string digest;
  std::optional<std::uint64_t> seed;
  std::vector<WeightRow> table;
  std::vector<WeightRow> counterexamples;
  std::size_t mismatches = 0;
  std::vector<std::string> notes;

  bool pass() const { return mismatches == 0; }
  /// Appends a row; disagreeing rows also go to the counterexamples.
  void record(std::string weight, std::int64_t expected, std::int64_t actual);
};

/// Quantization multiplicities against the Bohr-Sommerfeld indicator on every
/// xi in the vertex box with pi^*(xi) in c + Z^d. The candidate grid is built
/// from a different set of facets than the one quantize enumerates over.
CheckReport qr0_check(const PratoQuasifold& q);

/// bohr_sommerfeld(q, xi) against the shifted quasifold at 0, and against the
/// multiplicity of 0 in the shifted quantization.
CheckReport shift_check(const PratoQuasifold& q, const AlgebraVector& xi);

/// Quantization of the reduced quasifold against the invariant part (under
/// lifts of h') of the ambient quantization character shifted by pi^*(xi').
/// h' and xi' are in the local coordinates of q.
CheckReport stages_check(const PratoQuasifold& q, const std::vector<AlgebraVector>& h,
                         const AlgebraVector& level);

/// Localized multiplicities for two random generic beta against the direct
/// lattice-membership test at `trials` random weights.
CheckReport localization_check(const SimplePolytope& p, std::size_t trials, std::uint64_t seed);

/// Gamma-invariants of the quantization, then reduction, against reduction,
/// then Gamma-invariants. Gamma acts on root t* weights through `pairing`;
/// h' and xi' are in root coordinates. Requires integral root weights.
CheckReport suspension_check(const PratoQuasifold& q, const std::vector<std::int64_t>& orders,
                             const IntMatrix& pairing, const std::vector<AlgebraVector>& h,
                             const AlgebraVector& level);

/// The T-character of the level-k coadjoint orbit of SU(2), obtained by
/// localization on [0, k] pushed along j -> k - 2j, decomposes as V_k.
CheckReport coadjoint_demo(const RootDatum& d, std::int64_t k);

struct RandomPolytopeOptions {
  std::size_t max_dimension = 3;
  std::size_t max_facets = 7;
  std::int64_t max_entry = 5;
  std::int64_t max_box_volume = 4096;  // product of quantize box widths
};

/// A bounded, simple, nonempty rational polytope by rejection sampling:
/// integer normals with entries in [-max_entry, max_entry], bounds p/q with
/// q in {1, 2} and 0 < p/q <= max_entry (so the origin is interior).
SimplePolytope random_rational_polytope(std::mt19937_64& rng, const RandomPolytopeOptions& options = {});

}  // namespace foliq
