#pragma once

// Signed-cone (Lawrence-Varchenko) evaluation of the quantization of a
// rational Delzant polytope, one weight at a time.
//
// At a vertex p with primitive edge generators alpha_j, a polarizing vector
// beta keeps the cone direction +alpha_j when <alpha_j, beta> > 0. An edge with
// <alpha_j, beta> < 0 is flipped: its direction becomes -alpha_j, the apex
// moves one step to p - alpha_j and the contribution picks up a factor -1.

#include <cstdint>
#include <utility>
#include <vector>

#include "foliq/charring.hpp"
#include "foliq/toric.hpp"

namespace foliq {

struct FixedVertex {
  LatticeWeight point;               // lambda_p
  std::vector<LatticeWeight> edges;  // alpha_{p,j}, a Z-basis of Z^n
  IntMatrix dual;                    // rows w_j with <w_j, alpha_k> = delta_jk
};

struct VertexFixedData {
  std::size_t dimension = 0;
  std::vector<FixedVertex> vertices;
  LatticeWeight lower, upper;  // bounding box of the vertices
};

/// Throws IrrationalInput for non-rational data, NonIntegralVertex for a
/// vertex off Z^n and NotDelzant when the facet normals at a vertex are not
/// integral or do not form a Z-basis. A polytope that degenerates to a
/// single point is read as the limit of a simplex (n + 1 facets through it).
VertexFixedData vertex_data(const SimplePolytope& p);

struct PolarizingVector {
  LatticeWeight beta;
};

/// Throws NonGenericBeta unless beta pairs nonzero with every edge.
void require_generic(const VertexFixedData& vd, const PolarizingVector& beta);

std::int64_t localized_multiplicity(const VertexFixedData& vd, const PolarizingVector& beta,
                                    const LatticeWeight& lambda);

using IntegerBox = std::vector<std::pair<std::int64_t, std::int64_t>>;  // inclusive [lo, hi]

/// localized_multiplicity over every lambda in the box. Nonzero values
/// outside the vertex bounding box raise ReconstructionMismatch.
TorusCharacter localized_character(const VertexFixedData& vd, const PolarizingVector& beta,
                                   const IntegerBox& box);

}  // namespace foliq
