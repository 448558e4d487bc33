#pragma once

// Exact arithmetic in a declared number ring: a finite-dimensional commutative
// Q-algebra presented by structure constants over generators g0 = 1, g1..gm,
// together with rational enclosures of the real value of each generator.
//
// Trust boundary: the generators are assumed Q-linearly independent as real
// numbers. Under that assumption an element is zero iff all of its
// coefficients are zero, so every equality test below is exact. Enclosures
// are only consulted to decide the sign of a nonzero element.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace foliq {

using Rational = mpq_class;
using Integer = mpz_class;

struct Interval {
  Rational lo;
  Rational hi;
};

/// table[a][b] holds the coefficients of g_a * g_b in the generator basis.
using MultiplicationTable = std::vector<std::vector<std::vector<Rational>>>;

class AlgebraElement;

class AlgebraContext {
 public:
  static constexpr unsigned kDefaultRefineBudget = 64;

  /// The rational field: a single generator g0 = 1.
  AlgebraContext();

  /// Validates the table (unit row/column, symmetry) and the enclosures
  /// (each must isolate one real root of the generator's minimal relation
  /// and be consistent with every table product under interval arithmetic).
  static AlgebraContext make(std::vector<std::string> names,
                             MultiplicationTable table,
                             std::vector<Interval> enclosures,
                             unsigned refine_budget = kDefaultRefineBudget);

  std::size_t dimension() const;
  bool is_rational_field() const { return dimension() == 1; }
  const std::vector<std::string>& names() const;
  const std::vector<Rational>& product(std::size_t a, std::size_t b) const;
  const std::vector<Interval>& enclosures() const;
  unsigned refine_budget() const;

  AlgebraContext with_refine_budget(unsigned budget) const;
  /// Same algebra with every non-unit enclosure halved around its generator.
  AlgebraContext tightened() const;
  /// One midpoint-halving step applied to every generator enclosure.
  std::vector<Interval> refine(const std::vector<Interval>& current) const;

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement from_rational(const Rational& q) const;
  AlgebraElement generator(std::size_t index) const;
  AlgebraElement element(std::vector<Rational> coefficients) const;

  /// Structural equality: same generator names and multiplication table.
  /// Enclosures and refinement budget are presentation details.
  bool operator==(const AlgebraContext& other) const;

 private:
  struct Impl;
  static std::shared_ptr<const Impl> rational_impl();
  explicit AlgebraContext(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

class AlgebraElement {
 public:
  /// Zero over Q.
  AlgebraElement();
  AlgebraElement(AlgebraContext context, std::vector<Rational> coefficients);

  const AlgebraContext& context() const { return context_; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  bool is_zero() const;
  /// True when every non-unit coefficient vanishes.
  bool is_rational() const;
  const Rational& rational_part() const { return coefficients_.front(); }
  /// A rational integer (in Z, not merely an algebraic integer).
  bool is_integer() const;

  /// Interval evaluation against the given generator enclosures.
  Interval enclose(const std::vector<Interval>& generators) const;

  /// Solves the multiplication-by-this linear system for the unit.
  /// Throws NotInvertible when the element is a zero divisor.
  AlgebraElement inverse() const;

  /// Human-readable form, e.g. "-1 + 3/2*sqrt2".
  std::string to_string() const;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const Rational& rhs);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const AlgebraElement& b) { return a *= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Rational& q) { return a *= q; }
  friend AlgebraElement operator*(const Rational& q, AlgebraElement a) { return a *= q; }

  /// Exact equality (coefficient-wise, after aligning contexts).
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  // Brings both operands into a common context. Elements over the bare
  // rational field embed into any context; two distinct non-trivial contexts
  // raise ContextMismatch.
  void align(const AlgebraElement& other);

  AlgebraContext context_;
  std::vector<Rational> coefficients_;
};

/// Exact when a == b; otherwise the sign of a - b by interval refinement,
/// raising Undecidable once the context's refinement budget is exhausted.
std::strong_ordering compare(const AlgebraElement& a, const AlgebraElement& b);

/// The common context of two operands: Q embeds into anything, two distinct
/// non-trivial algebras raise ContextMismatch.
AlgebraContext join(const AlgebraContext& a, const AlgebraContext& b);

Integer floor(const AlgebraElement& a);
Integer ceil(const AlgebraElement& a);

using AlgebraVector = std::vector<AlgebraElement>;

AlgebraElement dot(const AlgebraVector& a, const AlgebraVector& b);
AlgebraVector operator+(const AlgebraVector& a, const AlgebraVector& b);
AlgebraVector operator-(const AlgebraVector& a, const AlgebraVector& b);
AlgebraVector scale(const AlgebraVector& v, const AlgebraElement& s);
bool is_zero(const AlgebraVector& v);
bool is_integral(const AlgebraVector& v);
std::string to_string(const AlgebraVector& v);
/// Lexicographic comparison by real value (uses compare per coordinate).
std::strong_ordering compare(const AlgebraVector& a, const AlgebraVector& b);

class AlgebraMatrix {
 public:
  AlgebraMatrix() = default;
  AlgebraMatrix(const AlgebraContext& context, std::size_t rows, std::size_t cols);
  static AlgebraMatrix from_rows(const AlgebraContext& context,
                                 const std::vector<AlgebraVector>& rows,
                                 std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const AlgebraContext& context() const { return context_; }

  AlgebraElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const AlgebraElement& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  AlgebraVector row(std::size_t i) const;
  AlgebraVector column(std::size_t j) const;
  AlgebraMatrix transpose() const;
  AlgebraVector apply(const AlgebraVector& x) const;
  AlgebraMatrix operator*(const AlgebraMatrix& rhs) const;

 private:
  AlgebraContext context_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<AlgebraElement> entries_;
};

struct Echelon {
  AlgebraMatrix reduced;             // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon row_reduce(AlgebraMatrix m);
std::size_t rank(const AlgebraMatrix& m);

/// Canonical kernel basis: one vector per free column, with a 1 in that
/// column and 0 in the other free columns.
std::vector<AlgebraVector> kernel_basis(const AlgebraMatrix& m);

/// Some x with m * x == target, free coordinates set to zero; nullopt when
/// the system is inconsistent.
std::optional<AlgebraVector> image_preimage(const AlgebraMatrix& m, const AlgebraVector& target);

/// Inverse of a square matrix; nullopt when singular.
std::optional<AlgebraMatrix> inverse(const AlgebraMatrix& m);

}  // namespace foliq
