#include "foliq/toric.hpp"

#include <algorithm>

#include "foliq/error.hpp"

namespace foliq {

namespace {

AlgebraContext context_of(const SimplePolytope& p) {
  AlgebraContext ctx;
  for (const auto& f : p.facets) {
    for (const auto& x : f.normal) ctx = join(ctx, x.context());
    ctx = join(ctx, f.bound.context());
  }
  return ctx;
}

bool at_most(const AlgebraElement& a, const AlgebraElement& b) {
  return compare(a, b) != std::strong_ordering::greater;
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

AlgebraMatrix normal_rows(const AlgebraContext& ctx, const SimplePolytope& p,
                          const std::vector<std::size_t>& which) {
  std::vector<AlgebraVector> rows;
  for (auto i : which) rows.push_back(p.facets[i].normal);
  return AlgebraMatrix::from_rows(ctx, rows, p.dimension);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::ShapeMismatch, "lattice coordinate overflows 64 bits");
  return z.get_si();
}

std::size_t affine_rank(const AlgebraContext& ctx, const std::vector<AlgebraVector>& points,
                        std::size_t dim) {
  if (points.size() < 2) return 0;
  std::vector<AlgebraVector> diffs;
  for (std::size_t k = 1; k < points.size(); ++k) diffs.push_back(points[k] - points[0]);
  return rank(AlgebraMatrix::from_rows(ctx, diffs, dim));
}

}  // namespace

std::vector<AlgebraVector> vertices(const SimplePolytope& p) {
  const AlgebraContext ctx = context_of(p);
  const std::size_t n = p.dimension;
  std::vector<AlgebraVector> out;
  for_each_subset(p.facets.size(), n, [&](const std::vector<std::size_t>& s) {
    AlgebraVector xi;
    if (n > 0) {
      const auto inv = inverse(normal_rows(ctx, p, s));
      if (!inv) return;
      AlgebraVector rhs;
      for (auto i : s) rhs.push_back(p.facets[i].bound);
      xi = inv->apply(rhs);
    }
    for (const auto& f : p.facets)
      if (!at_most(dot(xi, f.normal), f.bound)) return;
    out.push_back(std::move(xi));
  });
  std::sort(out.begin(), out.end(),
            [](const AlgebraVector& a, const AlgebraVector& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AlgebraVector PratoQuasifold::pullback(const AlgebraVector& xi) const {
  if (xi.size() != dimension())
    throw Error(ErrorKind::ShapeMismatch, "point has " + std::to_string(xi.size()) +
                                              " coordinates, expected " + std::to_string(dimension()));
  AlgebraVector out(facets(), context_.zero());
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t j = 0; j < facets(); ++j) out[j] += xi[i] * pi_(i, j);
  return out;
}

bool PratoQuasifold::contains(const AlgebraVector& xi) const {
  const AlgebraVector v = pullback(xi);
  for (std::size_t j = 0; j < facets(); ++j)
    if (!at_most(v[j], constants_[j])) return false;
  return true;
}

AlgebraVector PratoQuasifold::to_root(const AlgebraVector& xi) const {
  return frame_.origin + frame_.basis.apply(xi);
}

SimplePolytope PratoQuasifold::polytope() const {
  SimplePolytope p;
  p.dimension = dimension();
  for (std::size_t j = 0; j < facets(); ++j) p.facets.push_back({normal(j), constants_[j]});
  return p;
}

PratoQuasifold PratoQuasifold::assemble(const AlgebraContext& ctx, AlgebraMatrix pi,
                                        AlgebraVector constants, AffineFrame frame,
                                        std::vector<AlgebraVector> kernel) {
  PratoQuasifold q;
  q.context_ = ctx;
  q.pi_ = std::move(pi);
  q.constants_ = std::move(constants);
  q.frame_ = std::move(frame);
  q.kernel_ = std::move(kernel);
  q.vertices_ = foliq::vertices(q.polytope());
  return q;
}

PratoQuasifold build_quasifold(const SimplePolytope& p) {
  const std::size_t n = p.dimension;
  if (p.facets.empty()) throw Error(ErrorKind::Unbounded, "polytope has no facets");
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    if (p.facets[i].normal.size() != n)
      throw Error(ErrorKind::ShapeMismatch, "facet " + std::to_string(i) + " normal has wrong length");
    if (is_zero(p.facets[i].normal))
      throw Error(ErrorKind::ShapeMismatch, "facet " + std::to_string(i) + " has a zero normal");
  }
  const AlgebraContext ctx = context_of(p);
  const std::size_t d = p.facets.size();

  AlgebraMatrix pi(ctx, n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) pi(i, j) += p.facets[j].normal[i];
  if (rank(pi) != n) throw Error(ErrorKind::PiNotSurjective, "facet normals do not span t*");

  // A nonzero recession cone has an extreme ray cut out by n-1 independent
  // facet hyperplanes.
  if (n > 0) for_each_subset(d, n - 1, [&](const std::vector<std::size_t>& s) {
    const AlgebraMatrix m = normal_rows(ctx, p, s);
    const auto k = kernel_basis(m);
    if (k.size() != 1) return;
    for (int sign : {1, -1}) {
      const AlgebraVector y = scale(k[0], ctx.from_rational(sign));
      bool recedes = true;
      for (const auto& f : p.facets)
        if (compare(dot(y, f.normal), ctx.zero()) == std::strong_ordering::greater) {
          recedes = false;
          break;
        }
      if (recedes) throw Error(ErrorKind::Unbounded, "polytope recedes along " + to_string(y));
    }
  });

  AlgebraVector constants;
  for (const auto& f : p.facets) constants.push_back(f.bound);
  AlgebraMatrix identity(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) identity(i, i) = ctx.one();
  PratoQuasifold q = PratoQuasifold::assemble(ctx, pi, constants,
                                              AffineFrame{AlgebraVector(n, ctx.zero()), identity},
                                              kernel_basis(pi));
  if (q.vertices().empty()) throw Error(ErrorKind::Empty, "polytope is empty");
  if (q.vertices().size() > 1) {
    for (const auto& v : q.vertices()) {
      std::size_t active = 0;
      for (const auto& f : p.facets)
        if (dot(v, f.normal) == f.bound) ++active;
      if (active != n)
        throw Error(ErrorKind::NotSimple, std::to_string(active) + " facets meet at vertex " + to_string(v));
    }
  }
  return q;
}

QuantizationResult quantize(const PratoQuasifold& q) {
  const std::size_t n = q.dimension(), d = q.facets();
  const AlgebraContext& ctx = q.context();
  QuantizationResult result;
  if (q.vertices().empty()) return result;

  // n independent facets active at the first vertex. Fixing b on them fixes
  // xi, and the remaining b_j are read off.
  const AlgebraVector& v0 = q.vertices().front();
  const AlgebraVector at_v0 = q.pullback(v0);
  std::vector<std::size_t> chosen;
  std::vector<AlgebraVector> rows;
  for (std::size_t j = 0; j < d && chosen.size() < n; ++j) {
    if (!(at_v0[j] == q.constants()[j])) continue;
    rows.push_back(q.normal(j));
    if (rank(AlgebraMatrix::from_rows(ctx, rows, n)) == rows.size())
      chosen.push_back(j);
    else
      rows.pop_back();
  }
  if (chosen.size() != n) throw Error(ErrorKind::NotSimple, "vertex " + to_string(v0) + " is degenerate");
  std::optional<AlgebraMatrix> inv;
  if (n > 0) inv = inverse(AlgebraMatrix::from_rows(ctx, rows, n));

  // 0 <= b_i <= floor(c_i - min over vertices of <v, v_i>).
  std::vector<std::int64_t> upper(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = chosen[k];
    Integer best = -1;
    for (const auto& v : q.vertices()) {
      const Integer f = floor(q.constants()[j] - dot(v, q.normal(j)));
      if (f > best) best = f;
    }
    upper[k] = to_int64(best);
  }

  std::vector<bool> is_chosen(d, false);
  for (auto j : chosen) is_chosen[j] = true;
  std::vector<std::int64_t> bs(n, 0);
  for (;;) {
    AlgebraVector xi;
    if (n > 0) {
      AlgebraVector rhs(n);
      for (std::size_t k = 0; k < n; ++k)
        rhs[k] = q.constants()[chosen[k]] - ctx.from_rational(Rational(static_cast<long>(bs[k])));
      xi = inv->apply(rhs);
    }
    const AlgebraVector at = q.pullback(xi);
    LatticeWeight b(d, 0);
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j) {
      const AlgebraElement r = q.constants()[j] - at[j];
      if (!r.is_integer() || r.rational_part() < 0) {
        ok = false;
        break;
      }
      b[j] = to_int64(r.rational_part().get_num());
    }
    if (ok) result.entries.push_back({std::move(b), xi, q.to_root(xi)});

    std::size_t k = 0;
    while (k < n && bs[k] == upper[k]) bs[k++] = 0;
    if (k == n) break;
    ++bs[k];
  }
  std::sort(result.entries.begin(), result.entries.end(),
            [](const QuantizationEntry& a, const QuantizationEntry& b) { return a.b < b.b; });
  return result;
}

int bohr_sommerfeld(const PratoQuasifold& q, const AlgebraVector& xi) {
  if (!q.contains(xi)) throw Error(ErrorKind::OutsidePolytope, "point " + to_string(xi) + " is outside the polytope");
  const AlgebraVector gap = q.constants() - q.pullback(xi);
  for (const auto& x : gap)
    if (!x.is_integer()) return 0;
  return 1;
}

PratoQuasifold shift(const PratoQuasifold& q, const AlgebraVector& xi) {
  return PratoQuasifold::assemble(q.context(), q.pi(), q.constants() - q.pullback(xi),
                                  AffineFrame{q.to_root(xi), q.frame().basis}, q.kernel());
}

PratoQuasifold reduce_in_stages(const PratoQuasifold& q, const std::vector<AlgebraVector>& h,
                                const AlgebraVector& level, LiftStrategy strategy) {
  const std::size_t m = q.dimension();
  const AlgebraContext& ctx = q.context();
  for (const auto& v : h)
    if (v.size() != m) throw Error(ErrorKind::ShapeMismatch, "subalgebra vector has wrong length");
  if (level.size() != m) throw Error(ErrorKind::ShapeMismatch, "level has wrong length");

  // Columns of e span ann(h) in the local t*.
  std::vector<AlgebraVector> e = kernel_basis(AlgebraMatrix::from_rows(ctx, h, m));
  if (strategy == LiftStrategy::Alternate) {
    std::reverse(e.begin(), e.end());
    for (std::size_t k = 1; k < e.size(); ++k) e[k] = e[k] + e[k - 1];
  }
  const std::size_t r = e.size();
  AlgebraMatrix basis(ctx, m, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < m; ++i) basis(i, k) += e[k][i];

  const AlgebraMatrix pi = basis.transpose() * q.pi();
  std::vector<AlgebraVector> kernel;
  if (strategy == LiftStrategy::Canonical) {
    kernel = kernel_basis(pi);
  } else {
    std::vector<AlgebraVector> span = q.kernel();
    for (const auto& v : h) {
      auto lift = image_preimage(q.pi(), v);
      if (!lift) throw Error(ErrorKind::PiNotSurjective, "cannot lift " + to_string(v) + " along pi");
      span.push_back(std::move(*lift));
    }
    if (!span.empty()) {
      const Echelon ech = row_reduce(AlgebraMatrix::from_rows(ctx, span, q.facets()));
      for (std::size_t k = 0; k < ech.pivots.size(); ++k) kernel.push_back(ech.reduced.row(k));
    }
  }

  PratoQuasifold out = PratoQuasifold::assemble(
      ctx, pi, q.constants() - q.pullback(level),
      AffineFrame{q.to_root(level), q.frame().basis * basis}, std::move(kernel));
  if (out.vertices().empty())
    throw Error(ErrorKind::EmptySlice, "the level " + to_string(level) + " misses the polytope");
  if (affine_rank(ctx, out.vertices(), r) != r)
    throw Error(ErrorKind::NotTransverse,
                "the slice through " + to_string(level) + " is not full-dimensional");
  return out;
}

PratoQuasifold reduce_in_root_coordinates(const PratoQuasifold& q, const std::vector<AlgebraVector>& h_root,
                                          const AlgebraVector& level_root, LiftStrategy strategy) {
  const AffineFrame& f = q.frame();
  if (level_root.size() != q.root_dimension())
    throw Error(ErrorKind::ShapeMismatch, "level has wrong length");
  std::vector<AlgebraVector> h;
  AlgebraVector rhs;
  const AlgebraMatrix bt = f.basis.transpose();
  for (const auto& v : h_root) {
    if (v.size() != q.root_dimension()) throw Error(ErrorKind::ShapeMismatch, "subalgebra vector has wrong length");
    h.push_back(bt.apply(v));
    rhs.push_back(dot(level_root - f.origin, v));
  }
  // Any local point on the level set will do; the slice does not depend on it.
  AlgebraVector level(q.dimension(), q.context().zero());
  if (!h.empty()) {
    const auto sol = image_preimage(AlgebraMatrix::from_rows(q.context(), h, q.dimension()), rhs);
    if (!sol) throw Error(ErrorKind::EmptySlice, "the level is incompatible with earlier stages");
    level = *sol;
  }
  return reduce_in_stages(q, h, level, strategy);
}

TorusCharacter ambient_character(const PratoQuasifold& q, const QuantizationResult& r) {
  TorusCharacter c(q.facets(), q.constants());
  for (const auto& e : r.entries) c.add_value(q.constants() - to_algebra(e.b), 1);
  return c;
}

TorusCharacter root_character(const PratoQuasifold& q, const QuantizationResult& r) {
  TorusCharacter c(q.root_dimension());
  for (const auto& e : r.entries) {
    LatticeWeight w;
    for (const auto& x : e.root) {
      if (!x.is_integer())
        throw Error(ErrorKind::DomainMismatch, "weight " + to_string(e.root) + " is not integral");
      w.push_back(to_int64(x.rational_part().get_num()));
    }
    c.add(w, 1);
  }
  return c;
}

}  // namespace foliq
