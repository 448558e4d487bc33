#include "foliq/charring.hpp"

#include <utility>

#include "foliq/error.hpp"

namespace foliq {

namespace {

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::DomainMismatch, "weight coordinate overflows 64 bits");
  return z.get_si();
}

struct NormalizedOffset {
  AlgebraVector offset;  // empty when integral
  LatticeWeight shift;   // raw offset = offset + shift
};

NormalizedOffset normalize(const AlgebraVector& raw) {
  NormalizedOffset n;
  n.shift.resize(raw.size());
  AlgebraVector reduced = raw;
  bool integral = true;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Rational& q = raw[i].rational_part();
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    n.shift[i] = to_int64(f);
    reduced[i] -= raw[i].context().from_rational(Rational(f));
    if (!reduced[i].is_zero()) integral = false;
  }
  if (!integral) n.offset = std::move(reduced);
  return n;
}

void require_same_domain(const TorusCharacter& a, const TorusCharacter& b) {
  if (!a.same_domain(b))
    throw Error(ErrorKind::DomainMismatch, "characters live on different weight domains");
}

}  // namespace

std::string to_string(const LatticeWeight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

AlgebraVector to_algebra(const LatticeWeight& w) {
  AlgebraVector v;
  v.reserve(w.size());
  const AlgebraContext q;
  for (auto x : w) v.push_back(q.from_rational(Rational(static_cast<long>(x))));
  return v;
}

TorusCharacter::TorusCharacter(std::size_t rank) : rank_(rank) {}

TorusCharacter::TorusCharacter(std::size_t rank, const AlgebraVector& offset) : rank_(rank) {
  if (offset.size() != rank) throw Error(ErrorKind::DomainMismatch, "offset length differs from rank");
  offset_ = normalize(offset).offset;
}

TorusCharacter TorusCharacter::unit(std::size_t rank) {
  TorusCharacter c(rank);
  c.add(LatticeWeight(rank, 0), 1);
  return c;
}

std::int64_t TorusCharacter::dimension() const {
  std::int64_t sum = 0;
  for (const auto& [w, m] : terms_) sum += m;
  return sum;
}

std::int64_t TorusCharacter::multiplicity(const LatticeWeight& lattice) const {
  const auto it = terms_.find(lattice);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t TorusCharacter::multiplicity_at(const AlgebraVector& weight) const {
  if (weight.size() != rank_) return 0;
  const AlgebraVector rel = offset_.empty() ? weight : weight - offset_;
  if (!foliq::is_integral(rel)) return 0;
  LatticeWeight w(rank_);
  for (std::size_t i = 0; i < rank_; ++i) w[i] = to_int64(rel[i].rational_part().get_num());
  return multiplicity(w);
}

void TorusCharacter::add(const LatticeWeight& lattice, std::int64_t multiplicity) {
  if (lattice.size() != rank_) throw Error(ErrorKind::DomainMismatch, "weight has wrong rank");
  if (multiplicity == 0) return;
  auto [it, inserted] = terms_.try_emplace(lattice, multiplicity);
  if (!inserted) {
    it->second += multiplicity;
    if (it->second == 0) terms_.erase(it);
  }
}

LatticeWeight TorusCharacter::lattice_of(const AlgebraVector& weight) const {
  if (weight.size() != rank_) throw Error(ErrorKind::DomainMismatch, "weight has wrong rank");
  const AlgebraVector rel = offset_.empty() ? weight : weight - offset_;
  LatticeWeight w(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (!rel[i].is_integer())
      throw Error(ErrorKind::DomainMismatch,
                  "weight " + to_string(weight) + " is not in the character's lattice coset");
    w[i] = to_int64(rel[i].rational_part().get_num());
  }
  return w;
}

void TorusCharacter::add_value(const AlgebraVector& weight, std::int64_t multiplicity) {
  add(lattice_of(weight), multiplicity);
}

AlgebraVector TorusCharacter::value(const LatticeWeight& lattice) const {
  AlgebraVector v = to_algebra(lattice);
  return offset_.empty() ? v : v + offset_;
}

bool TorusCharacter::same_domain(const TorusCharacter& other) const {
  if (rank_ != other.rank_ || offset_.size() != other.offset_.size()) return false;
  for (std::size_t i = 0; i < offset_.size(); ++i)
    if (!(offset_[i] == other.offset_[i])) return false;
  return true;
}

TorusCharacter& TorusCharacter::operator+=(const TorusCharacter& rhs) {
  require_same_domain(*this, rhs);
  for (const auto& [w, m] : rhs.terms_) add(w, m);
  return *this;
}

TorusCharacter& TorusCharacter::operator-=(const TorusCharacter& rhs) {
  require_same_domain(*this, rhs);
  for (const auto& [w, m] : rhs.terms_) add(w, -m);
  return *this;
}

TorusCharacter TorusCharacter::scaled(std::int64_t factor) const {
  TorusCharacter r(rank_);
  r.offset_ = offset_;
  for (const auto& [w, m] : terms_) r.add(w, m * factor);
  return r;
}

bool operator==(const TorusCharacter& a, const TorusCharacter& b) {
  return a.same_domain(b) && a.terms_ == b.terms_;
}

TorusCharacter char_product(const TorusCharacter& a, const TorusCharacter& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::DomainMismatch, "product of characters of different rank");
  NormalizedOffset n;
  if (a.is_integral() && b.is_integral()) {
    n.shift.assign(a.rank(), 0);
  } else if (a.is_integral()) {
    n = normalize(b.offset());
  } else if (b.is_integral()) {
    n = normalize(a.offset());
  } else {
    n = normalize(a.offset() + b.offset());
  }
  TorusCharacter out = n.offset.empty() ? TorusCharacter(a.rank()) : TorusCharacter(a.rank(), n.offset);
  LatticeWeight w(a.rank());
  for (const auto& [wa, ma] : a.terms()) {
    for (const auto& [wb, mb] : b.terms()) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = n.shift[i] + wa[i] + wb[i];
      out.add(w, ma * mb);
    }
  }
  return out;
}

TorusCharacter invariant_part(const TorusCharacter& c, const SubalgebraData& h) {
  for (const auto& v : h.basis)
    if (v.size() != c.rank())
      throw Error(ErrorKind::DomainMismatch, "subalgebra vector length differs from character rank");
  TorusCharacter out = c.is_integral() ? TorusCharacter(c.rank()) : TorusCharacter(c.rank(), c.offset());
  for (const auto& [w, m] : c.terms()) {
    const AlgebraVector value = c.value(w);
    bool fixed = true;
    for (const auto& v : h.basis) {
      if (!dot(value, v).is_zero()) {
        fixed = false;
        break;
      }
    }
    if (fixed) out.add(w, m);
  }
  return out;
}

TorusCharacter restrict_along(const TorusCharacter& c, const IntMatrix& a) {
  for (const auto& row : a)
    if (row.size() != c.rank())
      throw Error(ErrorKind::ShapeMismatch, "matrix columns differ from character rank");
  const std::size_t rows = a.size();
  NormalizedOffset n;
  n.shift.assign(rows, 0);
  if (!c.is_integral()) {
    AlgebraVector image(rows, c.offset().front().context().zero());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < c.rank(); ++j)
        image[i] += c.offset()[j] * Rational(static_cast<long>(a[i][j]));
    n = normalize(image);
  }
  TorusCharacter out = n.offset.empty() ? TorusCharacter(rows) : TorusCharacter(rows, n.offset);
  LatticeWeight image(rows);
  for (const auto& [w, m] : c.terms()) {
    for (std::size_t i = 0; i < rows; ++i) {
      std::int64_t s = n.shift[i];
      for (std::size_t j = 0; j < c.rank(); ++j) s += a[i][j] * w[j];
      image[i] = s;
    }
    out.add(image, m);
  }
  return out;
}

TorusCharacter finite_group_invariants(const TorusCharacter& c, const std::vector<std::int64_t>& orders,
                                       const IntMatrix& pairing) {
  if (pairing.size() != orders.size())
    throw Error(ErrorKind::ShapeMismatch, "one pairing row per cyclic factor is required");
  for (const auto& row : pairing)
    if (row.size() != c.rank()) throw Error(ErrorKind::ShapeMismatch, "pairing columns differ from rank");
  for (auto k : orders)
    if (k < 1) throw Error(ErrorKind::ShapeMismatch, "cyclic factor orders must be positive");
  if (!c.is_integral())
    throw Error(ErrorKind::DomainMismatch, "finite group invariants need integral weights");
  TorusCharacter out(c.rank());
  for (const auto& [w, m] : c.terms()) {
    bool fixed = true;
    for (std::size_t i = 0; i < orders.size() && fixed; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < w.size(); ++j) s += pairing[i][j] * w[j];
      fixed = (s % orders[i]) == 0;
    }
    if (fixed) out.add(w, m);
  }
  return out;
}

}  // namespace foliq
