#include "foliq/verify.hpp"

#include <algorithm>
#include <map>

#include "foliq/error.hpp"

namespace foliq {

namespace {

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::ShapeMismatch, "lattice coordinate overflows 64 bits");
  return z.get_si();
}

LatticeWeight integer_vector(const AlgebraVector& v) {
  LatticeWeight w;
  for (const auto& x : v) {
    if (!x.is_integer()) throw Error(ErrorKind::DomainMismatch, to_string(v) + " is not integral");
    w.push_back(to_int64(x.rational_part().get_num()));
  }
  return w;
}

SimplePolytope interval_polytope(std::int64_t k) {
  const AlgebraContext q;
  return SimplePolytope{1, {Facet{{q.from_rational(-1)}, q.zero()},
                            Facet{{q.one()}, q.from_rational(static_cast<long>(k))}}};
}

// Greedy choice of independent facet normals, scanning in the given order.
std::vector<std::size_t> independent_facets(const PratoQuasifold& q, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> chosen;
  std::vector<AlgebraVector> rows;
  for (auto j : order) {
    if (chosen.size() == q.dimension()) break;
    rows.push_back(q.normal(j));
    if (rank(AlgebraMatrix::from_rows(q.context(), rows, q.dimension())) == rows.size())
      chosen.push_back(j);
    else
      rows.pop_back();
  }
  return chosen;
}

void compare_characters(CheckReport& r, const TorusCharacter& expected, const TorusCharacter& actual) {
  std::map<LatticeWeight, std::pair<std::int64_t, std::int64_t>> rows;
  for (const auto& [w, m] : expected.terms()) rows[w].first = m;
  for (const auto& [w, m] : actual.terms()) rows[w].second = m;
  for (const auto& [w, em] : rows) r.record(to_string(expected.value(w)), em.first, em.second);
}

}  // namespace

void CheckReport::record(std::string weight, std::int64_t expected, std::int64_t actual) {
  WeightRow row{std::move(weight), expected, actual};
  if (expected != actual) {
    ++mismatches;
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(row);
  }
  table.push_back(std::move(row));
}

CheckReport qr0_check(const PratoQuasifold& q) {
  CheckReport r;
  r.name = "qr0";
  const QuantizationResult quant = quantize(q);
  std::map<std::string, std::int64_t> found;
  for (const auto& e : quant.entries) ++found[to_string(e.xi)];

  // Scan the facets from the back so the grid is parametrized differently
  // from quantize, which starts at the first vertex.
  std::vector<std::size_t> order(q.facets());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = order.size() - 1 - j;
  const std::vector<std::size_t> chosen = independent_facets(q, order);
  const std::size_t n = q.dimension();
  if (chosen.size() != n) throw Error(ErrorKind::PiNotSurjective, "facet normals do not span");

  // k_i = c_i - <xi, v_i> ranges over the integers between its vertex extremes.
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = chosen[k];
    bool first = true;
    for (const auto& v : q.vertices()) {
      const AlgebraElement gap = q.constants()[j] - dot(v, q.normal(j));
      const std::int64_t f = to_int64(floor(gap)), c = to_int64(ceil(gap));
      lo[k] = first ? f : std::min(lo[k], f);
      hi[k] = first ? c : std::max(hi[k], c);
      first = false;
    }
  }
  std::optional<AlgebraMatrix> inv;
  if (n > 0) {
    std::vector<AlgebraVector> rows;
    for (auto j : chosen) rows.push_back(q.normal(j));
    inv = inverse(AlgebraMatrix::from_rows(q.context(), rows, n));
  }

  std::vector<std::int64_t> ks = lo;
  std::size_t candidates = 0;
  if (!q.vertices().empty()) {
    for (;;) {
      AlgebraVector xi;
      if (n > 0) {
        AlgebraVector rhs(n);
        for (std::size_t k = 0; k < n; ++k)
          rhs[k] = q.constants()[chosen[k]] - q.context().from_rational(static_cast<long>(ks[k]));
        xi = inv->apply(rhs);
      }
      const AlgebraVector gap = q.constants() - q.pullback(xi);
      if (is_integral(gap)) {
        ++candidates;
        const std::int64_t expected = q.contains(xi) ? bohr_sommerfeld(q, xi) : 0;
        const std::string key = to_string(xi);
        const auto it = found.find(key);
        const std::int64_t actual = it == found.end() ? 0 : it->second;
        if (it != found.end()) found.erase(it);
        r.record(to_string(q.to_root(xi)), expected, actual);
      }
      std::size_t k = 0;
      while (k < n && ks[k] == hi[k]) {
        ks[k] = lo[k];
        ++k;
      }
      if (k == n) break;
      ++ks[k];
    }
  }
  for (const auto& [key, m] : found) {
    r.record("local " + key, 0, m);
    r.notes.push_back("quantization weight at local " + key + " is missing from the candidate grid");
  }
  r.notes.push_back("dimension " + std::to_string(quant.dimension()));
  r.notes.push_back("candidates " + std::to_string(candidates));
  return r;
}

CheckReport shift_check(const PratoQuasifold& q, const AlgebraVector& xi) {
  CheckReport r;
  r.name = "shift";
  const int before = bohr_sommerfeld(q, xi);
  const PratoQuasifold s = shift(q, xi);
  const AlgebraVector origin(q.dimension(), q.context().zero());
  r.record(to_string(q.to_root(xi)) + " shifted to 0", before, bohr_sommerfeld(s, origin));
  std::int64_t at_origin = 0;
  for (const auto& e : quantize(s).entries)
    if (is_zero(e.xi)) ++at_origin;
  r.record(to_string(q.to_root(xi)) + " in the shifted quantization", before, at_origin);
  return r;
}

CheckReport stages_check(const PratoQuasifold& q, const std::vector<AlgebraVector>& h,
                         const AlgebraVector& level) {
  CheckReport r;
  r.name = "stages";
  const PratoQuasifold reduced = reduce_in_stages(q, h, level);
  std::map<LatticeWeight, std::pair<std::int64_t, std::int64_t>> rows;  // b -> (expected, actual)
  std::map<LatticeWeight, std::string> labels;
  for (const auto& e : quantize(reduced).entries) {
    ++rows[e.b].second;
    labels[e.b] = to_string(e.root);
  }

  const QuantizationResult full = quantize(q);
  const AlgebraVector shifted = q.constants() - q.pullback(level);
  TorusCharacter ambient(q.facets(), shifted);
  for (const auto& e : full.entries) {
    ambient.add_value(shifted - to_algebra(e.b), 1);
    labels.emplace(e.b, to_string(e.root));
  }
  SubalgebraData lifts;
  for (const auto& v : h) {
    auto u = image_preimage(q.pi(), v);
    if (!u) throw Error(ErrorKind::PiNotSurjective, "cannot lift " + to_string(v));
    lifts.basis.push_back(std::move(*u));
  }
  const TorusCharacter kept = invariant_part(ambient, lifts);
  for (const auto& [w, m] : kept.terms()) rows[integer_vector(shifted - kept.value(w))].first += m;

  std::int64_t dim = 0;
  for (const auto& [b, em] : rows) {
    r.record(labels[b], em.first, em.second);
    dim += em.second;
  }
  r.notes.push_back("dimension " + std::to_string(dim));
  return r;
}

CheckReport localization_check(const SimplePolytope& p, std::size_t trials, std::uint64_t seed) {
  CheckReport r;
  r.name = "localization";
  r.seed = seed;
  const VertexFixedData vd = vertex_data(p);
  const std::size_t n = vd.dimension;
  std::mt19937_64 rng(seed);

  std::vector<PolarizingVector> betas;
  for (std::int64_t range = 5; betas.size() < 2; range *= 2) {
    std::uniform_int_distribution<std::int64_t> coord(-range, range);
    for (int attempt = 0; attempt < 1000 && betas.size() < 2; ++attempt) {
      PolarizingVector b{LatticeWeight(n)};
      for (auto& x : b.beta) x = coord(rng);
      try {
        require_generic(vd, b);
        betas.push_back(std::move(b));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonGenericBeta) throw;
      }
    }
  }
  for (const auto& b : betas) r.notes.push_back("beta " + to_string(b.beta));

  constexpr std::int64_t kMargin = 2;
  for (std::size_t t = 0; t < trials; ++t) {
    LatticeWeight lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::int64_t> pick(vd.lower[i] - kMargin, vd.upper[i] + kMargin);
      lambda[i] = pick(rng);
    }
    std::int64_t expected = 1;
    for (const auto& f : p.facets) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) s += f.normal[i].rational_part() * static_cast<long>(lambda[i]);
      if (s > f.bound.rational_part()) expected = 0;
    }
    const std::int64_t first = localized_multiplicity(vd, betas[0], lambda);
    const std::int64_t second = localized_multiplicity(vd, betas[1], lambda);
    r.record(to_string(lambda), expected, first);
    if (second != first) r.record(to_string(lambda) + " second beta", first, second);
  }
  return r;
}

CheckReport suspension_check(const PratoQuasifold& q, const std::vector<std::int64_t>& orders,
                             const IntMatrix& pairing, const std::vector<AlgebraVector>& h,
                             const AlgebraVector& level) {
  CheckReport r;
  r.name = "suspension";
  const std::size_t n = q.root_dimension();
  if (level.size() != n) throw Error(ErrorKind::ShapeMismatch, "level has wrong length");

  // Invariants first, then the level set {<xi - xi', h> = 0}.
  const TorusCharacter invariant = finite_group_invariants(root_character(q, quantize(q)), orders, pairing);
  AlgebraVector minus_level = level;
  for (auto& x : minus_level) x = -x;
  TorusCharacter down(n, minus_level), up(n, level);
  down.add_value(minus_level, 1);
  up.add_value(level, 1);
  const TorusCharacter lhs =
      char_product(invariant_part(char_product(invariant, down), SubalgebraData{h}), up);

  const PratoQuasifold reduced = reduce_in_root_coordinates(q, h, level);
  const TorusCharacter rhs = finite_group_invariants(root_character(reduced, quantize(reduced)), orders, pairing);
  compare_characters(r, lhs, rhs);
  r.notes.push_back("dimension " + std::to_string(rhs.dimension()));
  return r;
}

CheckReport coadjoint_demo(const RootDatum& d, std::int64_t k) {
  if (d.rank() != 1 || d.center_rank() != 0)
    throw Error(ErrorKind::UnsupportedType, "the coadjoint demo needs the A1 root datum");
  if (k < 0) throw Error(ErrorKind::InvalidLabel, "level must be nonnegative");
  CheckReport r;
  r.name = "coadjoint";

  const VertexFixedData vd = vertex_data(interval_polytope(k));
  const TorusCharacter strip = localized_character(vd, PolarizingVector{{1}}, {{-1, k + 1}});
  TorusCharacter top(1);
  top.add({k}, 1);
  const TorusCharacter c = char_product(restrict_along(strip, {{-2}}), top);
  std::string weights;
  for (const auto& [w, m] : c.terms()) weights += (weights.empty() ? "" : " ") + to_string(w) + ":" + std::to_string(m);
  r.notes.push_back("character " + weights);

  const IrrepDecomposition got = decompose_into_irreps(d, c);
  std::map<IrrepLabel, std::pair<std::int64_t, std::int64_t>> rows;
  rows[IrrepLabel{{k}, {}}].first = 1;
  for (const auto& [label, m] : got) rows[label].second = m;
  for (const auto& [label, em] : rows) r.record(to_string(label), em.first, em.second);
  return r;
}

SimplePolytope random_rational_polytope(std::mt19937_64& rng, const RandomPolytopeOptions& options) {
  const AlgebraContext q;
  std::uniform_int_distribution<std::size_t> dim_pick(1, options.max_dimension);
  std::uniform_int_distribution<std::int64_t> entry(-options.max_entry, options.max_entry);
  std::uniform_int_distribution<std::int64_t> den_pick(1, 2);
  for (;;) {
    const std::size_t n = dim_pick(rng);
    std::uniform_int_distribution<std::size_t> facet_pick(n + 1, std::max(n + 1, options.max_facets));
    const std::size_t d = facet_pick(rng);
    SimplePolytope p{n, {}};
    for (std::size_t j = 0; j < d; ++j) {
      AlgebraVector v(n);
      bool zero = true;
      for (auto& x : v) {
        const std::int64_t e = entry(rng);
        zero = zero && e == 0;
        x = q.from_rational(static_cast<long>(e));
      }
      if (zero) v[0] = q.one();
      const std::int64_t den = den_pick(rng);
      std::uniform_int_distribution<std::int64_t> num_pick(1, options.max_entry * den);
      p.facets.push_back(Facet{v, q.from_rational(Rational(static_cast<long>(num_pick(rng)), static_cast<long>(den)))});
    }
    try {
      const PratoQuasifold built = build_quasifold(p);
      // Reject polytopes whose quantization box is too large to scan.
      std::vector<std::int64_t> widths;
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t w = 0;
        for (const auto& v : built.vertices())
          w = std::max(w, to_int64(ceil(built.constants()[j] - dot(v, built.normal(j)))) + 1);
        widths.push_back(w);
      }
      std::sort(widths.rbegin(), widths.rend());
      std::int64_t volume = 1;
      for (std::size_t i = 0; i < n; ++i) volume *= widths[i];
      if (volume > options.max_box_volume) continue;
      return p;
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::Unbounded:
        case ErrorKind::NotSimple:
        case ErrorKind::Empty:
        case ErrorKind::PiNotSurjective:
          continue;
        default:
          throw;
      }
    }
  }
}

}  // namespace foliq
