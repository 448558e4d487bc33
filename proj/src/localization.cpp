#include "foliq/localization.hpp"

#include <algorithm>

#include "foliq/error.hpp"

namespace foliq {

namespace {

std::int64_t pairing(const LatticeWeight& a, const LatticeWeight& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t integer_of(const AlgebraElement& x, ErrorKind kind, const std::string& what) {
  if (!x.is_integer()) throw Error(kind, what + " " + x.to_string() + " is not an integer");
  return x.rational_part().get_num().get_si();
}

// The fixed-point datum cut out by the facets `active` at `point`.
FixedVertex make_vertex(const SimplePolytope& p, const LatticeWeight& point,
                        const std::vector<std::size_t>& active) {
  const std::size_t n = p.dimension;
  IntMatrix v(n, LatticeWeight(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      v[k][i] = integer_of(p.facets[active[k]].normal[i], ErrorKind::NotDelzant, "normal coordinate");

  AlgebraMatrix m(AlgebraContext(), n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) m(k, i) = AlgebraContext().from_rational(static_cast<long>(v[k][i]));
  const auto inv = inverse(m);
  if (!inv) throw Error(ErrorKind::NotDelzant, "dependent normals at vertex " + to_string(point));

  // Edges are the columns of -V^{-1}; the dual basis is -V.
  FixedVertex fv;
  fv.point = point;
  for (std::size_t j = 0; j < n; ++j) {
    LatticeWeight e(n);
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement x = -(*inv)(i, j);
      if (!x.is_integer())
        throw Error(ErrorKind::NotDelzant, "normals at vertex " + to_string(point) + " are not a Z-basis");
      e[i] = x.rational_part().get_num().get_si();
    }
    fv.edges.push_back(std::move(e));
    LatticeWeight w = v[j];
    for (auto& x : w) x = -x;
    fv.dual.push_back(std::move(w));
  }
  // Determinant +-1 of the edge matrix, via integrality of both inverses.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (pairing(fv.dual[j], fv.edges[k]) != (j == k ? 1 : 0))
        throw Error(ErrorKind::NotDelzant, "edge weights at " + to_string(point) + " are not a Z-basis");
  return fv;
}

}  // namespace

VertexFixedData vertex_data(const SimplePolytope& p) {
  for (const auto& f : p.facets) {
    for (const auto& x : f.normal)
      if (!x.is_rational()) throw Error(ErrorKind::IrrationalInput, "facet normal " + to_string(f.normal) + " is irrational");
    if (!f.bound.is_rational()) throw Error(ErrorKind::IrrationalInput, "facet constant " + f.bound.to_string() + " is irrational");
  }
  const PratoQuasifold q = build_quasifold(p);
  const std::size_t n = p.dimension;

  VertexFixedData vd;
  vd.dimension = n;
  vd.lower.assign(n, 0);
  vd.upper.assign(n, 0);
  bool first = true;
  for (const auto& v : q.vertices()) {
    LatticeWeight point(n);
    for (std::size_t i = 0; i < n; ++i) point[i] = integer_of(v[i], ErrorKind::NonIntegralVertex, "vertex coordinate");
    for (std::size_t i = 0; i < n; ++i) {
      vd.lower[i] = first ? point[i] : std::min(vd.lower[i], point[i]);
      vd.upper[i] = first ? point[i] : std::max(vd.upper[i], point[i]);
    }
    first = false;

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < p.facets.size(); ++j)
      if (dot(v, p.facets[j].normal) == p.facets[j].bound) active.push_back(j);
    if (active.size() == n) {
      vd.vertices.push_back(make_vertex(p, point, active));
    } else if (q.vertices().size() == 1 && active.size() == n + 1) {
      // Collapsed simplex: one cone per n-subset of the n + 1 facets.
      for (std::size_t skip = 0; skip <= n; ++skip) {
        std::vector<std::size_t> s;
        for (std::size_t k = 0; k <= n; ++k)
          if (k != skip) s.push_back(active[k]);
        vd.vertices.push_back(make_vertex(p, point, s));
      }
    } else {
      throw Error(ErrorKind::NotDelzant, std::to_string(active.size()) + " facets meet at " + to_string(point));
    }
  }
  return vd;
}

void require_generic(const VertexFixedData& vd, const PolarizingVector& beta) {
  if (beta.beta.size() != vd.dimension)
    throw Error(ErrorKind::ShapeMismatch, "polarizing vector has wrong length");
  for (const auto& v : vd.vertices)
    for (const auto& a : v.edges)
      if (pairing(a, beta.beta) == 0)
        throw Error(ErrorKind::NonGenericBeta,
                    "beta " + to_string(beta.beta) + " is orthogonal to edge " + to_string(a));
}

std::int64_t localized_multiplicity(const VertexFixedData& vd, const PolarizingVector& beta,
                                    const LatticeWeight& lambda) {
  require_generic(vd, beta);
  if (lambda.size() != vd.dimension) throw Error(ErrorKind::ShapeMismatch, "weight has wrong length");
  std::int64_t total = 0;
  LatticeWeight rel(vd.dimension);
  for (const auto& v : vd.vertices) {
    for (std::size_t i = 0; i < rel.size(); ++i) rel[i] = lambda[i] - v.point[i];
    bool inside = true;
    int sign = 1;
    for (std::size_t j = 0; j < v.edges.size(); ++j) {
      const std::int64_t t = pairing(v.dual[j], rel);
      if (pairing(v.edges[j], beta.beta) > 0) {
        inside = inside && t >= 0;
      } else {
        sign = -sign;
        inside = inside && t <= -1;
      }
    }
    if (inside) total += sign;
  }
  return total;
}

TorusCharacter localized_character(const VertexFixedData& vd, const PolarizingVector& beta,
                                   const IntegerBox& box) {
  require_generic(vd, beta);
  if (box.size() != vd.dimension) throw Error(ErrorKind::ShapeMismatch, "box has wrong dimension");
  TorusCharacter c(vd.dimension);
  for (const auto& [lo, hi] : box)
    if (lo > hi) return c;
  LatticeWeight lambda(vd.dimension);
  for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = box[i].first;
  for (;;) {
    const std::int64_t m = localized_multiplicity(vd, beta, lambda);
    if (m != 0) {
      for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] < vd.lower[i] || lambda[i] > vd.upper[i])
          throw Error(ErrorKind::ReconstructionMismatch,
                      "nonzero localized multiplicity at " + to_string(lambda) + " outside the vertex box");
      c.add(lambda, m);
    }
    std::size_t i = 0;
    while (i < lambda.size() && lambda[i] == box[i].second) {
      lambda[i] = box[i].first;
      ++i;
    }
    if (i == lambda.size()) break;
    ++lambda[i];
  }
  return c;
}

}  // namespace foliq
