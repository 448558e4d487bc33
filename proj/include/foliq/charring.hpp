#pragma once

// Finite torus characters: weight -> multiplicity maps with virtual
// (negative) multiplicities allowed.
//
// A weight is stored as offset + lattice part, where the lattice part lives in
// Z^rank and the offset is a single algebra-valued vector shared by every
// weight of the character. Offsets are normalized so that the rational part of
// each coordinate lies in [0, 1); an offset that normalizes to zero is dropped
// and the character is "integral". Lattice arithmetic therefore stays in Z and
// irrationality is confined to the offset.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "foliq/algebra.hpp"

namespace foliq {

using LatticeWeight = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

std::string to_string(const LatticeWeight& w);
AlgebraVector to_algebra(const LatticeWeight& w);

class TorusCharacter {
 public:
  /// Empty integral character on Z^rank.
  explicit TorusCharacter(std::size_t rank = 0);
  /// Empty character whose weights lie in offset + Z^rank.
  TorusCharacter(std::size_t rank, const AlgebraVector& offset);

  /// The unit {0 -> 1}.
  static TorusCharacter unit(std::size_t rank);

  std::size_t rank() const { return rank_; }
  bool is_integral() const { return offset_.empty(); }
  /// Normalized offset; empty for integral characters.
  const AlgebraVector& offset() const { return offset_; }
  const std::map<LatticeWeight, std::int64_t>& terms() const { return terms_; }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Signed sum of multiplicities (the virtual dimension).
  std::int64_t dimension() const;

  std::int64_t multiplicity(const LatticeWeight& lattice) const;
  /// Multiplicity at an arbitrary weight value; 0 when off the domain.
  std::int64_t multiplicity_at(const AlgebraVector& weight) const;

  /// Adds to the weight offset + lattice.
  void add(const LatticeWeight& lattice, std::int64_t multiplicity);
  /// Adds at an explicit weight value; it must lie in offset + Z^rank.
  void add_value(const AlgebraVector& weight, std::int64_t multiplicity);

  AlgebraVector value(const LatticeWeight& lattice) const;
  bool same_domain(const TorusCharacter& other) const;

  TorusCharacter& operator+=(const TorusCharacter& rhs);
  TorusCharacter& operator-=(const TorusCharacter& rhs);
  friend TorusCharacter operator+(TorusCharacter a, const TorusCharacter& b) { return a += b; }
  friend TorusCharacter operator-(TorusCharacter a, const TorusCharacter& b) { return a -= b; }
  TorusCharacter scaled(std::int64_t factor) const;

  friend bool operator==(const TorusCharacter& a, const TorusCharacter& b);

 private:
  // Lattice part of a weight value relative to the stored offset, or throws
  // DomainMismatch.
  LatticeWeight lattice_of(const AlgebraVector& weight) const;

  std::size_t rank_;
  AlgebraVector offset_;
  std::map<LatticeWeight, std::int64_t> terms_;
};

/// A list of vectors spanning a subalgebra (of R^d or of t).
struct SubalgebraData {
  std::vector<AlgebraVector> basis;
};

TorusCharacter char_product(const TorusCharacter& a, const TorusCharacter& b);

/// Keeps exactly the weights pairing to zero with every basis vector of h.
TorusCharacter invariant_part(const TorusCharacter& c, const SubalgebraData& h);

/// Pushes weights along the integer matrix a (rows x rank); collisions add.
TorusCharacter restrict_along(const TorusCharacter& c, const IntMatrix& a);

/// Invariants of Z_{orders[0]} x ... acting through the weight functionals in
/// the rows of pairing: keeps w with pairing[i] . w = 0 mod orders[i].
TorusCharacter finite_group_invariants(const TorusCharacter& c,
                                       const std::vector<std::int64_t>& orders,
                                       const IntMatrix& pairing);

}  // namespace foliq
