#pragma once

// Quasifold presentations of (possibly irrational) simple polytopes.
//
// Convention: the polytope is {xi : <xi, v_i> <= c_i}. Much of the Delzant
// literature uses >= instead.
//
// A PratoQuasifold keeps the ambient R^d fixed through reductions: the facet
// index i and the integer vector b in c - b = pi^*(xi) identify weights across
// stages. Each quasifold also carries an affine frame that maps its local t*
// coordinates to the t* of the polytope it was first built from.

#include <optional>
#include <vector>

#include "foliq/algebra.hpp"
#include "foliq/charring.hpp"

namespace foliq {

struct Facet {
  AlgebraVector normal;   // v_i
  AlgebraElement bound;   // c_i
};

struct SimplePolytope {
  std::size_t dimension = 0;
  std::vector<Facet> facets;
};

/// Vertices by exact enumeration over n-subsets of facets, sorted
/// lexicographically. No simplicity or boundedness checks.
std::vector<AlgebraVector> vertices(const SimplePolytope& p);

struct AffineFrame {
  AlgebraVector origin;  // root coordinates of the local origin
  AlgebraMatrix basis;   // root x local
};

class PratoQuasifold {
 public:
  const AlgebraContext& context() const { return context_; }
  /// Dimension of the local torus (n for a freshly built quasifold).
  std::size_t dimension() const { return pi_.rows(); }
  /// Number of facets d.
  std::size_t facets() const { return pi_.cols(); }
  /// Dimension of the torus the root polytope lives in.
  std::size_t root_dimension() const { return frame_.origin.size(); }

  /// n x d, columns are the normals v_i.
  const AlgebraMatrix& pi() const { return pi_; }
  AlgebraVector normal(std::size_t i) const { return pi_.column(i); }
  /// Canonical basis of h = ker(pi).
  const std::vector<AlgebraVector>& kernel() const { return kernel_; }
  /// The constants c_i.
  const AlgebraVector& constants() const { return constants_; }
  const std::vector<AlgebraVector>& vertices() const { return vertices_; }
  const AffineFrame& frame() const { return frame_; }

  /// pi^*(xi), i.e. the vector (<xi, v_i>)_i.
  AlgebraVector pullback(const AlgebraVector& xi) const;
  bool contains(const AlgebraVector& xi) const;
  AlgebraVector to_root(const AlgebraVector& xi) const;
  SimplePolytope polytope() const;

  /// Unchecked constructor; computes the vertices. Used by the builders below.
  static PratoQuasifold assemble(const AlgebraContext& ctx, AlgebraMatrix pi, AlgebraVector constants,
                                 AffineFrame frame, std::vector<AlgebraVector> kernel);

 private:
  AlgebraContext context_;
  AlgebraMatrix pi_;
  std::vector<AlgebraVector> kernel_;
  AlgebraVector constants_;
  std::vector<AlgebraVector> vertices_;
  AffineFrame frame_;
};

/// Checks PiNotSurjective, Unbounded, Empty and NotSimple (a polytope that
/// is a single point is accepted as is), then computes pi, the kernel basis
/// and the vertices. The frame is the identity.
PratoQuasifold build_quasifold(const SimplePolytope& p);

struct QuantizationEntry {
  LatticeWeight b;      // c - b = pi^*(xi), b >= 0
  AlgebraVector xi;     // local t* coordinates
  AlgebraVector root;   // the same point in root t* coordinates
};

struct QuantizationResult {
  std::vector<QuantizationEntry> entries;  // sorted by b
  std::size_t dimension() const { return entries.size(); }
};

/// All b in Z_{>=0}^d with c - b in the image of pi^*.
QuantizationResult quantize(const PratoQuasifold& q);

/// 1 iff pi^*(xi) lies in c + Z^d. Throws OutsidePolytope when xi is not in
/// the polytope.
int bohr_sommerfeld(const PratoQuasifold& q, const AlgebraVector& xi);

/// Translates the polytope so that xi becomes the origin: constants
/// c - pi^*(xi), frame origin moved to xi.
PratoQuasifold shift(const PratoQuasifold& q, const AlgebraVector& xi);

enum class LiftStrategy {
  Canonical,  // canonical annihilator basis, kernel of the composed pi
  Alternate,  // another annihilator basis, kernel from h plus lifts of h'
};

/// Reduction by the subalgebra spanned by h (vectors in the local t) at the
/// level xi' (a local t* point): the slice of the polytope through xi'
/// parallel to ann(h), parametrized by a basis of ann(h). Both strategies
/// describe the same reduced space. Throws EmptySlice or NotTransverse.
PratoQuasifold reduce_in_stages(const PratoQuasifold& q, const std::vector<AlgebraVector>& h,
                                const AlgebraVector& level,
                                LiftStrategy strategy = LiftStrategy::Canonical);

/// Same reduction with h given in root t and the level as a root t* point.
PratoQuasifold reduce_in_root_coordinates(const PratoQuasifold& q,
                                          const std::vector<AlgebraVector>& h_root,
                                          const AlgebraVector& level_root,
                                          LiftStrategy strategy = LiftStrategy::Canonical);

/// The quantization as a character on R^d: weights c - b.
TorusCharacter ambient_character(const PratoQuasifold& q, const QuantizationResult& r);

/// The quantization as a character on root t*; requires integral root weights.
TorusCharacter root_character(const PratoQuasifold& q, const QuantizationResult& r);

}  // namespace foliq
