#include "foliq/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "foliq/error.hpp"

namespace foliq {

namespace {

// Univariate polynomials over Q, coefficients from the constant term up.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<Poly, Poly> divide(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    Poly r = divide(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

// Characteristic polynomial by the Faddeev-LeVerrier recursion.
Poly characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.size();
  Poly c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * next[l][i];
    c[n - k] = -trace / static_cast<long>(k);
    m = std::move(next);
  }
  return c;
}

std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(b[p], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

Interval multiply(const Interval& x, const Interval& y) {
  const Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

struct AlgebraContext::Impl {
  std::vector<std::string> names;
  MultiplicationTable table;
  std::vector<Interval> enclosures;
  unsigned budget = kDefaultRefineBudget;
  // Sturm chain of the squarefree minimal relation of each generator;
  // empty for the unit.
  std::vector<std::vector<Poly>> sturm;
};

std::shared_ptr<const AlgebraContext::Impl> AlgebraContext::rational_impl() {
  static const auto impl = [] {
    auto p = std::make_shared<AlgebraContext::Impl>();
    p->names = {"1"};
    p->table = {{{Rational(1)}}};
    p->enclosures = {{Rational(1), Rational(1)}};
    p->sturm = {{}};
    return std::shared_ptr<const AlgebraContext::Impl>(p);
  }();
  return impl;
}

namespace {

Interval halve(const std::vector<Poly>& chain, const Interval& iv) {
  if (chain.empty() || iv.lo == iv.hi) return iv;
  const Rational mid = (iv.lo + iv.hi) / 2;
  if (evaluate(chain.front(), mid) == 0) return {mid, mid};
  const int in_lower = sign_variations(chain, iv.lo) - sign_variations(chain, mid);
  if (in_lower > 0) return {iv.lo, mid};
  return {mid, iv.hi};
}

}  // namespace

AlgebraContext::AlgebraContext() : impl_(rational_impl()) {}

AlgebraContext::AlgebraContext(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

AlgebraContext AlgebraContext::make(std::vector<std::string> names, MultiplicationTable table,
                                    std::vector<Interval> enclosures, unsigned refine_budget) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorKind::UnitRowMissing, "no generators declared");
  if (table.size() != n || enclosures.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "table/enclosure count differs from generator count");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::ShapeMismatch, "table row has wrong length");
    for (const auto& entry : row)
      if (entry.size() != n) throw Error(ErrorKind::ShapeMismatch, "table entry has wrong length");
  }
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t c = 0; c < n; ++c) {
      const Rational expected = (b == c) ? 1 : 0;
      if (table[0][b][c] != expected || table[b][0][c] != expected)
        throw Error(ErrorKind::UnitRowMissing,
                    "g0 must act as the unit on " + names[b]);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (table[a][b] != table[b][a])
        throw Error(ErrorKind::TableNotSymmetric, names[a] + "*" + names[b] + " differs from " +
                                                      names[b] + "*" + names[a]);

  for (std::size_t a = 0; a < n; ++a) {
    if (enclosures[a].lo > enclosures[a].hi)
      throw Error(ErrorKind::EnclosureInconsistent, "empty enclosure for " + names[a]);
  }
  if (enclosures[0].lo > 1 || enclosures[0].hi < 1)
    throw Error(ErrorKind::EnclosureInconsistent, "enclosure of the unit must contain 1");
  enclosures[0] = {Rational(1), Rational(1)};

  auto impl = std::make_shared<Impl>();
  impl->sturm.resize(n);
  for (std::size_t a = 1; a < n; ++a) {
    RationalMatrix mult(n, std::vector<Rational>(n));
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) mult[c][b] = table[a][b][c];
    const Poly p = characteristic_polynomial(mult);
    const Poly squarefree = divide(p, gcd(p, derivative(p))).first;
    auto chain = sturm_chain(squarefree);
    const auto& iv = enclosures[a];
    int roots = sign_variations(chain, iv.lo) - sign_variations(chain, iv.hi);
    if (evaluate(squarefree, iv.lo) == 0) ++roots;
    if (roots != 1)
      throw Error(ErrorKind::EnclosureInconsistent,
                  "enclosure of " + names[a] + " contains " + std::to_string(roots) +
                      " roots of its minimal relation (need exactly 1)");
    impl->sturm[a] = std::move(chain);
  }

  impl->names = std::move(names);
  impl->table = std::move(table);
  impl->enclosures = std::move(enclosures);
  impl->budget = refine_budget;
  AlgebraContext ctx(impl);

  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Interval lhs = multiply(ctx.enclosures()[a], ctx.enclosures()[b]);
      const Interval rhs = ctx.element(ctx.product(a, b)).enclose(ctx.enclosures());
      if (lhs.hi < rhs.lo || rhs.hi < lhs.lo)
        throw Error(ErrorKind::EnclosureInconsistent,
                    "interval of " + ctx.names()[a] + "*" + ctx.names()[b] +
                        " misses its table value");
    }
  }
  return ctx;
}

std::size_t AlgebraContext::dimension() const { return impl_->names.size(); }
const std::vector<std::string>& AlgebraContext::names() const { return impl_->names; }
const std::vector<Rational>& AlgebraContext::product(std::size_t a, std::size_t b) const {
  return impl_->table[a][b];
}
const std::vector<Interval>& AlgebraContext::enclosures() const { return impl_->enclosures; }
unsigned AlgebraContext::refine_budget() const { return impl_->budget; }

AlgebraContext AlgebraContext::with_refine_budget(unsigned budget) const {
  auto copy = std::make_shared<Impl>(*impl_);
  copy->budget = budget;
  return AlgebraContext(copy);
}

std::vector<Interval> AlgebraContext::refine(const std::vector<Interval>& current) const {
  std::vector<Interval> next(current.size());
  for (std::size_t a = 0; a < current.size(); ++a) next[a] = halve(impl_->sturm[a], current[a]);
  return next;
}

AlgebraContext AlgebraContext::tightened() const {
  if (is_rational_field()) return *this;
  auto copy = std::make_shared<Impl>(*impl_);
  copy->enclosures = refine(impl_->enclosures);
  return AlgebraContext(copy);
}

AlgebraElement AlgebraContext::zero() const {
  return AlgebraElement(*this, std::vector<Rational>(dimension()));
}

AlgebraElement AlgebraContext::one() const { return generator(0); }

AlgebraElement AlgebraContext::from_rational(const Rational& q) const {
  std::vector<Rational> c(dimension());
  c[0] = q;
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement AlgebraContext::generator(std::size_t index) const {
  if (index >= dimension()) throw Error(ErrorKind::ShapeMismatch, "generator index out of range");
  std::vector<Rational> c(dimension());
  c[index] = 1;
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement AlgebraContext::element(std::vector<Rational> coefficients) const {
  return AlgebraElement(*this, std::move(coefficients));
}

bool AlgebraContext::operator==(const AlgebraContext& other) const {
  return impl_ == other.impl_ ||
         (impl_->names == other.impl_->names && impl_->table == other.impl_->table);
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement() : coefficients_(1) {}

AlgebraElement::AlgebraElement(AlgebraContext context, std::vector<Rational> coefficients)
    : context_(std::move(context)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != context_.dimension())
    throw Error(ErrorKind::ShapeMismatch, "coefficient vector length " +
                                              std::to_string(coefficients_.size()) +
                                              " does not match algebra dimension " +
                                              std::to_string(context_.dimension()));
  for (auto& q : coefficients_) q.canonicalize();
}

bool AlgebraElement::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const Rational& q) { return q == 0; });
}

bool AlgebraElement::is_rational() const {
  return std::all_of(coefficients_.begin() + 1, coefficients_.end(),
                     [](const Rational& q) { return q == 0; });
}

bool AlgebraElement::is_integer() const {
  return is_rational() && coefficients_[0].get_den() == 1;
}

Interval AlgebraElement::enclose(const std::vector<Interval>& generators) const {
  Interval sum{coefficients_[0], coefficients_[0]};
  for (std::size_t a = 1; a < coefficients_.size(); ++a) {
    const Rational& c = coefficients_[a];
    if (c == 0) continue;
    if (c > 0) {
      sum.lo += c * generators[a].lo;
      sum.hi += c * generators[a].hi;
    } else {
      sum.lo += c * generators[a].hi;
      sum.hi += c * generators[a].lo;
    }
  }
  return sum;
}

void AlgebraElement::align(const AlgebraElement& other) {
  if (context_ == other.context_) return;
  if (other.context_.is_rational_field()) return;
  if (context_.is_rational_field()) {
    std::vector<Rational> c(other.context_.dimension());
    c[0] = coefficients_[0];
    coefficients_ = std::move(c);
    context_ = other.context_;
    return;
  }
  throw Error(ErrorKind::ContextMismatch, "operands belong to different algebras");
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& c : r.coefficients_) c = -c;
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  align(rhs);
  for (std::size_t i = 0; i < rhs.coefficients_.size(); ++i) coefficients_[i] += rhs.coefficients_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  align(rhs);
  for (std::size_t i = 0; i < rhs.coefficients_.size(); ++i) coefficients_[i] -= rhs.coefficients_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& rhs) {
  for (auto& c : coefficients_) c *= rhs;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const AlgebraElement& rhs) {
  align(rhs);
  if (rhs.context_.is_rational_field() && !context_.is_rational_field())
    return *this *= rhs.coefficients_[0];
  const std::size_t n = coefficients_.size();
  std::vector<Rational> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (coefficients_[a] == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (rhs.coefficients_[b] == 0) continue;
      const Rational f = coefficients_[a] * rhs.coefficients_[b];
      const auto& t = context_.product(a, b);
      for (std::size_t c = 0; c < n; ++c)
        if (t[c] != 0) out[c] += f * t[c];
    }
  }
  coefficients_ = std::move(out);
  return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement d = a;
  d -= b;
  return d.is_zero();
}

AlgebraElement AlgebraElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no inverse");
  const std::size_t n = coefficients_.size();
  if (n == 1) return AlgebraElement(context_, {1 / coefficients_[0]});
  RationalMatrix mult(n, std::vector<Rational>(n));
  for (std::size_t b = 0; b < n; ++b) {
    const AlgebraElement column = *this * context_.generator(b);
    for (std::size_t c = 0; c < n; ++c) mult[c][b] = column.coefficients_[c];
  }
  std::vector<Rational> unit(n);
  unit[0] = 1;
  auto solution = solve_square(std::move(mult), std::move(unit));
  if (!solution)
    throw Error(ErrorKind::NotInvertible,
                to_string() + " is a zero divisor; the declared algebra is not a field");
  return AlgebraElement(context_, std::move(*solution));
}

std::string AlgebraElement::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t a = 0; a < coefficients_.size(); ++a) {
    Rational c = coefficients_[a];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    if (a == 0) {
      out << rational_string(c);
    } else {
      if (c != 1) out << rational_string(c) << '*';
      out << context_.names()[a];
    }
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

std::strong_ordering compare(const AlgebraElement& a, const AlgebraElement& b) {
  const AlgebraElement d = a - b;
  if (d.is_zero()) return std::strong_ordering::equal;
  const auto& ctx = d.context();
  std::vector<Interval> gens = ctx.enclosures();
  for (unsigned step = 0;; ++step) {
    const Interval iv = d.enclose(gens);
    if (iv.lo > 0) return std::strong_ordering::greater;
    if (iv.hi < 0) return std::strong_ordering::less;
    if (step == ctx.refine_budget()) break;
    gens = ctx.refine(gens);
  }
  throw Error(ErrorKind::Undecidable,
              "sign of " + d.to_string() + " not resolved after " +
                  std::to_string(ctx.refine_budget()) + " halvings; supply tighter enclosures");
}

Integer floor(const AlgebraElement& a) {
  if (a.is_rational()) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), a.rational_part().get_num_mpz_t(), a.rational_part().get_den_mpz_t());
    return f;
  }
  const Interval iv = a.enclose(a.context().enclosures());
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), iv.lo.get_num_mpz_t(), iv.lo.get_den_mpz_t());
  const auto& ctx = a.context();
  while (compare(a, ctx.from_rational(Rational(f + 1))) != std::strong_ordering::less) ++f;
  return f;
}

Integer ceil(const AlgebraElement& a) { return -floor(-a); }

AlgebraElement dot(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "dot product of unequal lengths");
  AlgebraElement sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

AlgebraVector operator+(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector sum of unequal lengths");
  AlgebraVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

AlgebraVector operator-(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector difference of unequal lengths");
  AlgebraVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

AlgebraVector scale(const AlgebraVector& v, const AlgebraElement& s) {
  AlgebraVector r = v;
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const AlgebraVector& v) {
  return std::all_of(v.begin(), v.end(), [](const AlgebraElement& x) { return x.is_zero(); });
}

bool is_integral(const AlgebraVector& v) {
  return std::all_of(v.begin(), v.end(), [](const AlgebraElement& x) { return x.is_integer(); });
}

std::string to_string(const AlgebraVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

std::strong_ordering compare(const AlgebraVector& a, const AlgebraVector& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const auto c = compare(a[i], b[i]);
    if (c != std::strong_ordering::equal) return c;
  }
  return a.size() <=> b.size();
}

AlgebraContext join(const AlgebraContext& a, const AlgebraContext& b) {
  if (a == b || b.is_rational_field()) return a;
  if (a.is_rational_field()) return b;
  throw Error(ErrorKind::ContextMismatch, "operands belong to different algebras");
}

AlgebraMatrix::AlgebraMatrix(const AlgebraContext& context, std::size_t rows, std::size_t cols)
    : context_(context), rows_(rows), cols_(cols), entries_(rows * cols, context.zero()) {}

AlgebraMatrix AlgebraMatrix::from_rows(const AlgebraContext& context,
                                       const std::vector<AlgebraVector>& rows, std::size_t cols) {
  AlgebraContext ctx = context;
  for (const auto& row : rows) {
    if (row.size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (const auto& x : row) ctx = join(ctx, x.context());
  }
  AlgebraMatrix m(ctx, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) += rows[i][j];
  return m;
}

AlgebraVector AlgebraMatrix::row(std::size_t i) const {
  return AlgebraVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

AlgebraVector AlgebraMatrix::column(std::size_t j) const {
  AlgebraVector c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

AlgebraMatrix AlgebraMatrix::transpose() const {
  AlgebraMatrix t(context_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

AlgebraVector AlgebraMatrix::apply(const AlgebraVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "matrix-vector shape mismatch");
  AlgebraVector y(rows_, context_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
  return y;
}

AlgebraMatrix AlgebraMatrix::operator*(const AlgebraMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shape mismatch");
  AlgebraMatrix p(join(context_, rhs.context_), rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (!rhs(k, j).is_zero()) p(i, j) += (*this)(i, k) * rhs(k, j);
    }
  return p;
}

Echelon row_reduce(AlgebraMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t p = r;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const AlgebraElement inv = m(r, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, col).is_zero()) continue;
      const AlgebraElement f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const AlgebraMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<AlgebraVector> kernel_basis(const AlgebraMatrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<AlgebraVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    AlgebraVector v(m.cols(), m.context().zero());
    v[free] = m.context().one();
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AlgebraVector> image_preimage(const AlgebraMatrix& m, const AlgebraVector& target) {
  if (target.size() != m.rows())
    throw Error(ErrorKind::ShapeMismatch, "target length does not match matrix rows");
  AlgebraContext ctx = m.context();
  for (const auto& x : target) ctx = join(ctx, x.context());
  AlgebraMatrix aug(ctx, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) += m(i, j);
    aug(i, m.cols()) += target[i];
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  AlgebraVector x(m.cols(), ctx.zero());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.reduced(k, m.cols());
  return x;
}

std::optional<AlgebraMatrix> inverse(const AlgebraMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  AlgebraMatrix aug(m.context(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.context().one();
  }
  const Echelon e = row_reduce(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  AlgebraMatrix inv(m.context(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

}  // namespace foliq
