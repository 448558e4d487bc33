#pragma once

// Root data of compact groups with simply-laced Lie algebras, and the Weyl
// character bookkeeping built on them.
//
// Weights are integer vectors in fundamental-weight coordinates, followed by
// `center_rank` coordinates of a free abelian (central) factor on which the
// Weyl group acts trivially. Simple root i has weight coordinates equal to
// row i of the Cartan matrix. Roots are stored with their root coordinates as
// well; for a simply-laced datum (x, alpha) = sum_i x_i * c_i when alpha has
// root coordinates c.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "foliq/charring.hpp"

namespace foliq {

struct Root {
  LatticeWeight weight;  // fundamental-weight coordinates
  LatticeWeight coords;  // coefficients on the simple roots
};

class RootDatum {
 public:
  /// Rank-0 datum: trivial group, no roots.
  static RootDatum trivial(std::size_t center_rank = 0);
  /// Symmetric Cartan matrix with 2 on the diagonal and 0/-1 elsewhere, of
  /// finite type. Raises UnsupportedType otherwise.
  static RootDatum from_cartan_matrix(const IntMatrix& cartan, std::size_t center_rank = 0);
  /// Block-diagonal product; central factors are concatenated.
  static RootDatum product(const RootDatum& a, const RootDatum& b);

  std::size_t rank() const { return cartan_.size(); }
  std::size_t center_rank() const { return center_rank_; }
  /// Length of a weight vector: rank() + center_rank().
  std::size_t weight_rank() const { return rank() + center_rank_; }

  const IntMatrix& cartan() const { return cartan_; }
  const std::vector<Root>& simple_roots() const { return simple_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  /// Weight coordinates of the fundamental weights (unit vectors).
  std::vector<LatticeWeight> fundamental_weights() const;
  LatticeWeight rho() const;
  /// Weyl group elements acting on the semisimple coordinates.
  const std::vector<IntMatrix>& weyl_group() const { return weyl_; }
  /// det of each Weyl group element, in the order of weyl_group().
  const std::vector<int>& weyl_signs() const { return weyl_sign_; }

  /// s_i applied to a full weight (central coordinates untouched).
  LatticeWeight reflect(std::size_t i, const LatticeWeight& w) const;
  LatticeWeight act(const IntMatrix& element, const LatticeWeight& w) const;
  /// (x, y) = x^T A^{-1} y on the semisimple coordinates.
  Rational inner(const LatticeWeight& x, const LatticeWeight& y) const;
  bool is_dominant(const LatticeWeight& w) const;

 private:
  RootDatum() = default;
  void finish();

  IntMatrix cartan_;
  std::vector<std::vector<Rational>> cartan_inverse_;
  std::size_t center_rank_ = 0;
  std::vector<Root> simple_;
  std::vector<Root> positive_;
  std::vector<IntMatrix> weyl_;
  std::vector<int> weyl_sign_;
};

/// Supported: type "A" with rank >= 1.
RootDatum build_root_datum(const std::string& cartan_type, std::int64_t rank,
                           std::size_t center_rank = 0);

struct IrrepLabel {
  LatticeWeight highest;  // dominant, fundamental-weight coordinates
  LatticeWeight central;  // central character, one entry per central coordinate

  friend auto operator<=>(const IrrepLabel&, const IrrepLabel&) = default;
  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

std::string to_string(const IrrepLabel& label);

/// Weyl dimension formula prod_{alpha>0} (lambda+rho, alpha) / (rho, alpha).
Integer weyl_dimension(const RootDatum& d, const IrrepLabel& label);

/// Weight multiplicities of V_lambda by the Freudenthal recursion. The total
/// is checked against weyl_dimension.
TorusCharacter irrep_weight_multiplicities(const RootDatum& d, const IrrepLabel& label);

/// prod_{alpha>0} (1 - e^{-alpha}).
TorusCharacter wedge_n_minus(const RootDatum& d);

/// Multiplicity of the trivial representation; c must be Weyl-symmetric.
std::int64_t g_invariant_multiplicity(const RootDatum& d, const TorusCharacter& c);

using IrrepDecomposition = std::map<IrrepLabel, std::int64_t>;

/// Reads the irreducible multiplicities off c * wedge_n_minus on the dominant
/// chamber, checks rho-shifted antisymmetry elsewhere and reconstructs c.
IrrepDecomposition decompose_into_irreps(const RootDatum& d, const TorusCharacter& c);

/// Throws NotWeylSymmetric unless c is invariant under every simple reflection.
void require_weyl_symmetric(const RootDatum& d, const TorusCharacter& c);

}  // namespace foliq
