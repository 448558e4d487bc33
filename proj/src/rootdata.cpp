#include "foliq/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "foliq/error.hpp"

namespace foliq {

namespace {

constexpr std::size_t kMaxWeylOrder = 100000;

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Gauss-Jordan inverse of an integer matrix over Q; empty when singular.
std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(m[i][j]));
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return {};
    std::swap(a[p], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  for (auto& row : a) row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
  return a;
}

bool positive_definite(const IntMatrix& m) {
  // Leading principal minors by exact elimination without pivoting.
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(m[i][j]));
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t r = k + 1; r < n; ++r) {
      const Rational f = a[r][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[r][j] -= f * a[k][j];
    }
  }
  return true;
}

LatticeWeight semisimple_part(const RootDatum& d, const LatticeWeight& w) {
  return LatticeWeight(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d.rank()));
}

struct Chamber {
  LatticeWeight point;  // dominant conjugate (full weight)
  bool odd = false;     // parity of the number of reflections used
  bool on_wall = false;
};

// Reflects into the dominant chamber one simple reflection at a time.
Chamber to_dominant(const RootDatum& d, LatticeWeight w) {
  Chamber ch;
  for (;;) {
    std::size_t i = 0;
    while (i < d.rank() && w[i] >= 0) ++i;
    if (i == d.rank()) break;
    w = d.reflect(i, w);
    ch.odd = !ch.odd;
  }
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (w[i] == 0) ch.on_wall = true;
  ch.point = std::move(w);
  return ch;
}

void require_character_shape(const RootDatum& d, const TorusCharacter& c) {
  if (c.rank() != d.weight_rank())
    throw Error(ErrorKind::DomainMismatch, "character rank " + std::to_string(c.rank()) +
                                               " differs from weight rank " +
                                               std::to_string(d.weight_rank()));
  if (!c.is_integral()) throw Error(ErrorKind::DomainMismatch, "group characters need integral weights");
}

void require_label(const RootDatum& d, const IrrepLabel& label) {
  if (label.highest.size() != d.rank() || label.central.size() != d.center_rank())
    throw Error(ErrorKind::InvalidLabel, "label " + to_string(label) + " has the wrong shape");
  for (auto x : label.highest)
    if (x < 0) throw Error(ErrorKind::InvalidLabel, "label " + to_string(label) + " is not dominant");
}

LatticeWeight full_weight(const IrrepLabel& label) {
  LatticeWeight w = label.highest;
  w.insert(w.end(), label.central.begin(), label.central.end());
  return w;
}

}  // namespace

RootDatum RootDatum::trivial(std::size_t center_rank) {
  RootDatum d;
  d.center_rank_ = center_rank;
  d.finish();
  return d;
}

RootDatum RootDatum::from_cartan_matrix(const IntMatrix& cartan, std::size_t center_rank) {
  const std::size_t n = cartan.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cartan[i].size() != n) throw Error(ErrorKind::UnsupportedType, "Cartan matrix is not square");
    if (cartan[i][i] != 2) throw Error(ErrorKind::UnsupportedType, "Cartan diagonal must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan[i][j] != cartan[j][i] || (cartan[i][j] != 0 && cartan[i][j] != -1))
        throw Error(ErrorKind::UnsupportedType, "only simply-laced Cartan matrices are supported");
    }
  }
  if (!positive_definite(cartan))
    throw Error(ErrorKind::UnsupportedType, "Cartan matrix is not of finite type");
  RootDatum d;
  d.cartan_ = cartan;
  d.center_rank_ = center_rank;
  d.finish();
  return d;
}

RootDatum RootDatum::product(const RootDatum& a, const RootDatum& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) m[i][j] = a.cartan_[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) m[a.rank() + i][a.rank() + j] = b.cartan_[i][j];
  if (n == 0) return trivial(a.center_rank_ + b.center_rank_);
  return from_cartan_matrix(m, a.center_rank_ + b.center_rank_);
}

void RootDatum::finish() {
  const std::size_t n = rank();
  cartan_inverse_ = rational_inverse(cartan_);

  simple_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Root r;
    r.weight = cartan_[i];
    r.coords.assign(n, 0);
    r.coords[i] = 1;
    simple_.push_back(std::move(r));
  }

  // Weyl group by breadth-first closure under left multiplication by the
  // simple reflections; the BFS depth is the length, so its parity is the sign.
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix s = identity(n);
    for (std::size_t j = 0; j < n; ++j) s[j][i] -= cartan_[i][j];
    gens.push_back(std::move(s));
  }
  weyl_.clear();
  weyl_sign_.clear();
  std::set<IntMatrix> seen;
  std::deque<std::pair<IntMatrix, int>> queue;
  queue.emplace_back(identity(n), 1);
  seen.insert(identity(n));
  while (!queue.empty()) {
    auto [g, sign] = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      IntMatrix h = multiply(s, g);
      if (seen.insert(h).second) {
        if (seen.size() > kMaxWeylOrder) throw Error(ErrorKind::UnsupportedType, "Weyl group too large");
        queue.emplace_back(std::move(h), -sign);
      }
    }
    weyl_.push_back(std::move(g));
    weyl_sign_.push_back(sign);
  }

  // Positive roots: W-orbit of the simple roots, positive in root coordinates.
  std::set<LatticeWeight> roots;
  for (const auto& w : weyl_)
    for (const auto& a : simple_) {
      LatticeWeight x(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x[i] += w[i][j] * a.weight[j];
      roots.insert(std::move(x));
    }
  positive_.clear();
  for (const auto& x : roots) {
    Root r;
    r.weight = x;
    r.coords.assign(n, 0);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      Rational c = 0;
      for (std::size_t j = 0; j < n; ++j) c += cartan_inverse_[j][i] * static_cast<long>(x[j]);
      r.coords[i] = c.get_num().get_si();
      if (c < 0) positive = false;
    }
    if (positive) positive_.push_back(std::move(r));
  }
  // Order by height, then lexicographically.
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    std::int64_t ha = 0, hb = 0;
    for (auto c : a.coords) ha += c;
    for (auto c : b.coords) hb += c;
    if (ha != hb) return ha < hb;
    return a.coords > b.coords;
  });
}

std::vector<LatticeWeight> RootDatum::fundamental_weights() const {
  std::vector<LatticeWeight> out;
  for (std::size_t i = 0; i < rank(); ++i) {
    LatticeWeight w(weight_rank(), 0);
    w[i] = 1;
    out.push_back(std::move(w));
  }
  return out;
}

LatticeWeight RootDatum::rho() const {
  LatticeWeight w(weight_rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i) w[i] = 1;
  return w;
}

LatticeWeight RootDatum::reflect(std::size_t i, const LatticeWeight& w) const {
  LatticeWeight out = w;
  const std::int64_t k = w[i];
  for (std::size_t j = 0; j < rank(); ++j) out[j] -= k * cartan_[i][j];
  return out;
}

LatticeWeight RootDatum::act(const IntMatrix& element, const LatticeWeight& w) const {
  LatticeWeight out = w;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < rank(); ++j) s += element[i][j] * w[j];
    out[i] = s;
  }
  return out;
}

Rational RootDatum::inner(const LatticeWeight& x, const LatticeWeight& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      s += cartan_inverse_[i][j] * static_cast<long>(x[i]) * static_cast<long>(y[j]);
  return s;
}

bool RootDatum::is_dominant(const LatticeWeight& w) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (w[i] < 0) return false;
  return true;
}

RootDatum build_root_datum(const std::string& cartan_type, std::int64_t rank, std::size_t center_rank) {
  if (cartan_type != "A")
    throw Error(ErrorKind::UnsupportedType, "Cartan type " + cartan_type + " is not supported");
  if (rank < 1) throw Error(ErrorKind::UnsupportedType, "type A needs rank >= 1");
  const auto n = static_cast<std::size_t>(rank);
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 2;
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
  }
  return RootDatum::from_cartan_matrix(m, center_rank);
}

std::string to_string(const IrrepLabel& label) {
  std::string s = "V" + to_string(label.highest);
  if (!label.central.empty()) s += "x" + to_string(label.central);
  return s;
}

Integer weyl_dimension(const RootDatum& d, const IrrepLabel& label) {
  require_label(d, label);
  Rational num = 1, den = 1;
  for (const auto& a : d.positive_roots()) {
    std::int64_t top = 0, bottom = 0;
    for (std::size_t i = 0; i < d.rank(); ++i) {
      top += (label.highest[i] + 1) * a.coords[i];
      bottom += a.coords[i];
    }
    num *= static_cast<long>(top);
    den *= static_cast<long>(bottom);
  }
  const Rational q = num / den;
  return q.get_num();
}

TorusCharacter irrep_weight_multiplicities(const RootDatum& d, const IrrepLabel& label) {
  require_label(d, label);
  const std::size_t n = d.rank();
  const LatticeWeight lambda = label.highest;

  auto shifted = [&](const LatticeWeight& w) {
    LatticeWeight x = w;
    for (auto& v : x) v += 1;
    return x;
  };
  // mu is a weight of V_lambda iff lambda - dom(mu) is a nonnegative integer
  // combination of simple roots.
  auto in_support = [&](const LatticeWeight& mu) {
    LatticeWeight dom = mu;
    for (;;) {
      std::size_t i = 0;
      while (i < n && dom[i] >= 0) ++i;
      if (i == n) break;
      const std::int64_t k = dom[i];
      for (std::size_t j = 0; j < n; ++j) dom[j] -= k * d.cartan()[i][j];
    }
    LatticeWeight diff(n);
    for (std::size_t j = 0; j < n; ++j) diff[j] = lambda[j] - dom[j];
    for (std::size_t i = 0; i < n; ++i) {
      // Root coordinate i of lambda - dom is (A^{-1} (lambda - dom))_i.
      LatticeWeight e(n, 0);
      e[i] = 1;
      const Rational c = d.inner(diff, e);
      if (c < 0 || c.get_den() != 1) return false;
    }
    return true;
  };

  const Rational top = d.inner(shifted(lambda), shifted(lambda));
  std::map<LatticeWeight, std::int64_t> mult;
  mult[lambda] = 1;
  std::vector<LatticeWeight> level{lambda};
  while (!level.empty()) {
    std::set<LatticeWeight> next;
    for (const auto& mu : level)
      for (const auto& a : d.simple_roots()) {
        LatticeWeight nu = mu;
        for (std::size_t j = 0; j < n; ++j) nu[j] -= a.weight[j];
        if (!mult.count(nu) && in_support(nu)) next.insert(nu);
      }
    level.assign(next.begin(), next.end());
    for (const auto& mu : level) {
      Rational sum = 0;
      for (const auto& a : d.positive_roots()) {
        LatticeWeight up = mu;
        for (;;) {
          for (std::size_t j = 0; j < n; ++j) up[j] += a.weight[j];
          const auto it = mult.find(up);
          if (it == mult.end()) break;
          std::int64_t pairing = 0;
          for (std::size_t j = 0; j < n; ++j) pairing += up[j] * a.coords[j];
          sum += Rational(static_cast<long>(pairing * it->second));
        }
      }
      const Rational gap = top - d.inner(shifted(mu), shifted(mu));
      const Rational m = 2 * sum / gap;
      if (m.get_den() != 1)
        throw Error(ErrorKind::ReconstructionMismatch, "non-integral Freudenthal multiplicity");
      mult[mu] = m.get_num().get_si();
    }
  }

  TorusCharacter c(d.weight_rank());
  std::int64_t total = 0;
  for (const auto& [w, m] : mult) {
    LatticeWeight full = w;
    full.insert(full.end(), label.central.begin(), label.central.end());
    c.add(full, m);
    total += m;
  }
  if (Integer(static_cast<long>(total)) != weyl_dimension(d, label))
    throw Error(ErrorKind::ReconstructionMismatch,
                "Freudenthal total for " + to_string(label) + " disagrees with the Weyl dimension");
  return c;
}

TorusCharacter wedge_n_minus(const RootDatum& d) {
  TorusCharacter c = TorusCharacter::unit(d.weight_rank());
  for (const auto& a : d.positive_roots()) {
    TorusCharacter factor = TorusCharacter::unit(d.weight_rank());
    LatticeWeight neg(d.weight_rank(), 0);
    for (std::size_t j = 0; j < d.rank(); ++j) neg[j] = -a.weight[j];
    factor.add(neg, -1);
    c = char_product(c, factor);
  }
  return c;
}

void require_weyl_symmetric(const RootDatum& d, const TorusCharacter& c) {
  require_character_shape(d, c);
  for (const auto& [w, m] : c.terms())
    for (std::size_t i = 0; i < d.rank(); ++i) {
      const LatticeWeight r = d.reflect(i, w);
      if (c.multiplicity(r) != m)
        throw Error(ErrorKind::NotWeylSymmetric, "multiplicity at " + to_string(w) +
                                                     " differs from its reflection " + to_string(r));
    }
}

std::int64_t g_invariant_multiplicity(const RootDatum& d, const TorusCharacter& c) {
  require_weyl_symmetric(d, c);
  return char_product(c, wedge_n_minus(d)).multiplicity(LatticeWeight(d.weight_rank(), 0));
}

IrrepDecomposition decompose_into_irreps(const RootDatum& d, const TorusCharacter& c) {
  require_weyl_symmetric(d, c);
  const TorusCharacter p = char_product(c, wedge_n_minus(d));
  const LatticeWeight rho = d.rho();

  IrrepDecomposition out;
  for (const auto& [w, m] : p.terms())
    if (d.is_dominant(w))
      out[IrrepLabel{semisimple_part(d, w), LatticeWeight(w.begin() + static_cast<std::ptrdiff_t>(d.rank()),
                                                          w.end())}] = m;

  auto mismatch = [](const std::string& what) { throw Error(ErrorKind::ReconstructionMismatch, what); };

  // rho-shifted antisymmetry: p(mu) = sign(w) p(w(mu + rho) - rho).
  for (const auto& [w, m] : p.terms()) {
    if (d.is_dominant(w)) continue;
    LatticeWeight x = w;
    for (std::size_t i = 0; i < d.rank(); ++i) x[i] += rho[i];
    const Chamber ch = to_dominant(d, x);
    if (ch.on_wall) mismatch("nonzero coefficient at " + to_string(w) + " on a shifted wall");
    LatticeWeight nu = ch.point;
    for (std::size_t i = 0; i < d.rank(); ++i) nu[i] -= rho[i];
    const std::int64_t expected = (ch.odd ? -1 : 1) * p.multiplicity(nu);
    if (expected != m) mismatch("coefficient at " + to_string(w) + " is not rho-alternating");
  }
  for (const auto& [label, m] : out) {
    LatticeWeight x = full_weight(label);
    for (std::size_t i = 0; i < d.rank(); ++i) x[i] += rho[i];
    for (std::size_t k = 0; k < d.weyl_group().size(); ++k) {
      LatticeWeight y = d.act(d.weyl_group()[k], x);
      for (std::size_t i = 0; i < d.rank(); ++i) y[i] -= rho[i];
      if (p.multiplicity(y) != d.weyl_signs()[k] * m)
        mismatch("Weyl image of " + to_string(label) + " carries the wrong coefficient");
    }
  }

  TorusCharacter rebuilt(d.weight_rank());
  for (const auto& [label, m] : out) rebuilt += irrep_weight_multiplicities(d, label).scaled(m);
  if (!(rebuilt == c)) mismatch("sum of irreducible characters does not reproduce the input");

  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace foliq
