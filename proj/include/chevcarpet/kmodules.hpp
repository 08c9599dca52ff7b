#pragma once

// Finite-basis K-submodules of F, K = F_p(x1^q..xn^q) with q in {p, p^2}.
// Finite fields GF(p^k) are treated as modules over the prime field.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "random.hpp"
#include "scalars.hpp"

namespace chevcarpet {

/// Sparse coordinate vector over K: (slot, value) sorted by slot, values nonzero.
/// Values are K-elements stored "compressed": exponents divided by q, so that
/// arithmetic runs on low-degree polynomials (x^q -> x is a field isomorphism K -> F).
using KVector = std::vector<std::pair<std::size_t, Scalar>>;

namespace detail {

inline MultiPoly compress_poly(const MultiPoly& m, std::uint32_t q) {
  MultiPoly r(m.prime());
  for (const auto& t : m.terms()) {
    Monomial e;
    for (int i = 0; i < kMaxVars; ++i) {
      e.e[i] = t.m.e[i] / q;
      e.deg += e.e[i];
    }
    r = r + MultiPoly::monomial(m.prime(), e, t.c);
  }
  return r;
}

/// a*v - b*w with a, b compressed K-elements.
inline KVector combine(const Scalar& a, const KVector& v, const Scalar& b, const KVector& w) {
  KVector r;
  r.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      r.emplace_back(v[i].first, a * v[i].second);
      ++i;
    } else if (i == v.size() || w[j].first < v[i].first) {
      r.emplace_back(w[j].first, -(b * w[j].second));
      ++j;
    } else {
      Scalar s = a * v[i].second - b * w[j].second;
      if (!s.is_zero()) r.emplace_back(v[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

inline long long factorial(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace detail

/// Outcome of a membership test. On success `coefficients` expresses the element
/// in the module basis (entries in K); on failure `witness_slot` is the first
/// coordinate slot (basis monomial x^S over K) left nonzero after reduction.
struct Membership {
  bool member = false;
  std::vector<Scalar> coefficients;
  std::size_t witness_slot = 0;
  explicit operator bool() const { return member; }
};

/// Witness of a failed inclusion A ⊆ B: an element of A outside B.
struct SubsetResult {
  bool holds = true;
  std::optional<Scalar> witness;
  explicit operator bool() const { return holds; }
};

class KModule {
 public:
  KModule() = default;

  /// Zero module over K = F_p(x^q). q = 0 selects q = p.
  KModule(FieldPtr field, int q = 0) : field_(std::move(field)), q_(q) {
    if (!field_) throw DomainError("module without field");
    if (field_->is_finite()) {
      q_ = field_->p;
    } else {
      if (q_ == 0) q_ = field_->p;
      if (q_ != field_->p && q_ != field_->p * field_->p) throw DomainError("module power must be p or p^2");
    }
  }

  /// reduce_basis: keeps the generators in order, dropping those dependent on earlier ones.
  static KModule span(const FieldPtr& field, int q, const std::vector<Scalar>& gens) {
    KModule m(field, q);
    for (const auto& g : gens) m.adjoin(g);
    return m;
  }

  static KModule span(const FieldPtr& field, const std::vector<Scalar>& gens) { return span(field, 0, gens); }

  /// K itself (the span of 1).
  static KModule subfield(const FieldPtr& field, int q = 0) { return span(field, q, {Scalar::one(field)}); }

  /// All of F: the monomial basis x^S, S in [0,q-1]^n (x1 varying fastest).
  static KModule whole_field(const FieldPtr& field, int q = 0) {
    KModule m(field, q);
    std::size_t dim = m.ambient_dimension();
    std::vector<Scalar> gens;
    if (field->is_finite()) {
      gens.push_back(Scalar::one(field));
      if (field->k == 2) gens.push_back(Scalar::variable(field, 0));
    } else {
      for (std::size_t s = 0; s < dim; ++s)
        gens.push_back(Scalar::from_poly(field, MultiPoly::monomial(field->p, subfield_basis_monomial(*field, m.q_, s))));
    }
    return span(field, q, gens);
  }

  const FieldPtr& field() const { return field_; }
  int power() const { return q_; }
  const std::vector<Scalar>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  std::size_t ambient_dimension() const { return subfield_dimension(*field_, q_); }

  /// Adds a generator if it is independent; returns whether the basis grew.
  bool adjoin(const Scalar& g) {
    check_field(g);
    if (g.is_zero()) return false;
    Reduction red = reduce(coordinates(g));
    if (red.residual.empty()) return false;
    std::size_t k = basis_.size();
    basis_.push_back(g);
    Row row;
    row.v = std::move(red.residual);
    // residual = sigma*g - sum c_j basis_j
    row.combo.resize(k + 1);
    for (std::size_t j = 0; j < k; ++j)
      row.combo[j] = j < red.combo.size() && !red.combo[j].is_zero() ? -red.combo[j] : zero_k();
    row.combo[k] = red.sigma;
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), row.v.front().first,
                                [](const Row& r, std::size_t slot) { return r.v.front().first < slot; });
    rows_.insert(pos, std::move(row));
    return true;
  }

  Membership member(const Scalar& a) const {
    check_field(a);
    Membership res;
    if (a.is_zero()) {
      res.member = true;
      res.coefficients.assign(basis_.size(), Scalar::zero(field_));
      return res;
    }
    Reduction red = reduce(coordinates(a));
    if (!red.residual.empty()) {
      res.witness_slot = red.residual.front().first;
      return res;
    }
    res.member = true;
    Scalar inv_sigma = red.sigma.inv();
    res.coefficients.reserve(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (j >= red.combo.size() || red.combo[j].is_zero())
        res.coefficients.push_back(Scalar::zero(field_));
      else
        res.coefficients.push_back(expand(red.combo[j] * inv_sigma));
    }
    return res;
  }

  bool contains(const Scalar& a) const { return member(a).member; }

  /// Basis monomial x^S of a coordinate slot (finite kind: 1 or the generator).
  Scalar slot_element(std::size_t slot) const {
    if (field_->is_finite()) return slot == 0 ? Scalar::one(field_) : Scalar::variable(field_, 0);
    return Scalar::from_poly(field_, MultiPoly::monomial(field_->p, subfield_basis_monomial(*field_, q_, slot)));
  }

  /// Compressed K-coordinates of a (see KVector).
  KVector coordinates(const Scalar& a) const {
    KVector out;
    if (field_->is_finite()) {
      auto prime = field_;  // coordinates live in the prime field, embedded in this field
      int c0 = a.code() % field_->p, c1 = a.code() / field_->p;
      if (c0) out.emplace_back(0, Scalar::from_int(prime, c0));
      if (c1) out.emplace_back(1, Scalar::from_int(prime, c1));
      return out;
    }
    auto [parts, denom] = detail::split_over_subfield(a, q_);
    MultiPoly cden = detail::compress_poly(denom, static_cast<std::uint32_t>(q_));
    for (std::size_t s = 0; s < parts.size(); ++s) {
      if (parts[s].is_zero()) continue;
      out.emplace_back(s, Scalar::fraction(field_, detail::compress_poly(parts[s], static_cast<std::uint32_t>(q_)), cden));
    }
    return out;
  }

  /// Compressed K-element -> element of K inside F.
  Scalar expand(const Scalar& c) const {
    if (field_->is_finite()) return c;
    int times = detail::log_p(q_, field_->p);
    return frobenius(c, times);
  }

  /// Random element: random K-coefficients (small polynomials in x^q) over the basis.
  Scalar random_element(Rng& rng, int max_deg = 1) const {
    Scalar acc = Scalar::zero(field_);
    for (const auto& b : basis_) acc += random_K_element(field_, q_, rng, max_deg) * b;
    return acc;
  }

  /// Sparse random element: at most `terms` basis elements, each scaled by 1 or a
  /// single q-th power variable.
  Scalar sparse_element(Rng& rng, int terms = 2) const {
    Scalar acc = Scalar::zero(field_);
    if (basis_.empty()) return acc;
    int n = uniform_int(rng, 0, terms);
    for (int k = 0; k < n; ++k) {
      const Scalar& b = basis_[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(basis_.size()) - 1))];
      Scalar c = Scalar::one(field_);
      if (!field_->is_finite() && uniform_int(rng, 0, 1) == 1) {
        int var = uniform_int(rng, 0, field_->nvars - 1);
        c = Scalar::variable(field_, var).pow(q_ == 0 ? field_->p : q_);
      }
      acc += c * b;
    }
    return acc;
  }

  std::string to_string() const {
    std::string s = "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i) s += ", ";
      s += basis_[i].to_string();
    }
    return s + "}";
  }

  bool same_space(const KModule& o) const {
    return *field_ == *o.field_ && q_ == o.q_;
  }

 private:
  struct Row {
    KVector v;                  // pivot = v.front()
    std::vector<Scalar> combo;  // row = sum combo_j basis_j (compressed K-elements)
  };

  struct Reduction {
    KVector residual;
    Scalar sigma;               // residual = sigma*a - sum combo_j basis_j
    std::vector<Scalar> combo;
  };

  Scalar zero_k() const { return Scalar::zero(field_); }

  void check_field(const Scalar& a) const {
    if (!(*a.field() == *field_)) throw DomainError("scalar descriptor mismatch");
  }

  // Fraction-free elimination: v <- a*v - b*row with a the row pivot, b = v[pivot slot].
  Reduction reduce(KVector v) const {
    Reduction red;
    red.sigma = Scalar::one(field_);
    red.combo.assign(basis_.size(), zero_k());
    for (const auto& row : rows_) {
      if (v.empty()) break;
      std::size_t slot = row.v.front().first;
      auto it = std::lower_bound(v.begin(), v.end(), slot,
                                 [](const auto& e, std::size_t s) { return e.first < s; });
      if (it == v.end() || it->first != slot) continue;
      const Scalar& a = row.v.front().second;
      Scalar b = it->second;
      if (a.is_one()) {
        v = detail::combine(a, v, b, row.v);
      } else {
        v = detail::combine(a, v, b, row.v);
        red.sigma = red.sigma * a;
        for (auto& c : red.combo)
          if (!c.is_zero()) c = c * a;
      }
      for (std::size_t j = 0; j < row.combo.size(); ++j)
        if (!row.combo[j].is_zero()) red.combo[j] = red.combo[j] + b * row.combo[j];
    }
    red.residual = std::move(v);
    return red;
  }

  FieldPtr field_;
  int q_ = 2;
  std::vector<Scalar> basis_;
  std::vector<Row> rows_;  // sorted by pivot slot
};

inline void check_compatible(const KModule& a, const KModule& b) {
  if (!a.same_space(b)) throw DomainError("modules over different fields");
}

/// K-span of the union of the bases (a's basis first).
inline KModule module_sum(const KModule& a, const KModule& b) {
  check_compatible(a, b);
  KModule r = a;
  for (const auto& g : b.basis()) r.adjoin(g);
  return r;
}

inline SubsetResult module_subset(const KModule& a, const KModule& b) {
  check_compatible(a, b);
  for (const auto& g : a.basis())
    if (!b.contains(g)) return {false, g};
  return {};
}

inline bool module_equal(const KModule& a, const KModule& b) {
  return module_subset(a, b).holds && module_subset(b, a).holds;
}

/// Multiset of size `size` over `n` indices, as nondecreasing index lists.
template <class Fn>
void for_each_multiset(std::size_t n, int size, Fn&& fn) {
  if (n == 0) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(size), 0);
  for (;;) {
    fn(idx);
    int k = size - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) return;
    ++idx[k];
    for (int t = k + 1; t < size; ++t) idx[t] = idx[k];
  }
}

/// Multinomial coefficient |mu|! / prod mu_k! of a sorted multiset.
inline long long multinomial(const std::vector<std::size_t>& sorted_idx) {
  long long r = detail::factorial(static_cast<int>(sorted_idx.size()));
  for (std::size_t i = 0; i < sorted_idx.size();) {
    std::size_t j = i;
    while (j < sorted_idx.size() && sorted_idx[j] == sorted_idx[i]) ++j;
    r /= detail::factorial(static_cast<int>(j - i));
    i = j;
  }
  return r;
}

struct ProductTerm {
  std::vector<std::size_t> mu, nu;  // multisets over the bases of A and B
  int coefficient = 0;              // c * m(mu) * m(nu) mod p
  Scalar value;
};

/// The generating products of power_product_span with nonzero coefficient, in
/// enumeration order (mu outer, nu inner).
inline std::vector<ProductTerm> power_product_terms(const KModule& a, int i, const KModule& b, int j, long long c) {
  check_compatible(a, b);
  if (i < 1 || j < 0 || i + j > 5) throw DomainError("power_product_span exponents out of range");
  const auto& f = a.field();
  const int p = f->p;
  std::vector<ProductTerm> out;
  if (detail::mod_p(c, p) == 0) return out;
  std::vector<std::pair<std::vector<std::size_t>, Scalar>> bpowers;
  if (j == 0) {
    bpowers.emplace_back(std::vector<std::size_t>{}, Scalar::one(f));
  } else {
    for_each_multiset(b.dim(), j, [&](const std::vector<std::size_t>& nu) {
      if (multinomial(nu) % p == 0) return;
      Scalar v = Scalar::one(f);
      for (auto k : nu) v = v * b.basis()[k];
      bpowers.emplace_back(nu, v);
    });
  }
  for_each_multiset(a.dim(), i, [&](const std::vector<std::size_t>& mu) {
    long long mm = multinomial(mu) % p;
    if (mm == 0) return;
    Scalar av = Scalar::one(f);
    for (auto k : mu) av = av * a.basis()[k];
    for (const auto& [nu, bv] : bpowers) {
      int coef = detail::mod_p(detail::mod_p(c, p) * mm * (nu.empty() ? 1 : multinomial(nu) % p), p);
      if (coef == 0) continue;
      out.push_back({mu, nu, coef, Scalar::from_int(f, coef) * av * bv});
    }
  });
  return out;
}

/// K-span of {c * a^i * b^j : a in A, b in B}. Expanding (sum λ_k e_k)^i (sum μ_k f_k)^j
/// gives the products prod e^mu prod f^nu with coefficient c*m(mu)*m(nu) times
/// K-scalars; inclusion-exclusion over sub-selections of basis elements (see
/// find_product_witness) isolates every term whose coefficient survives mod p, so
/// the span of those terms equals the additive closure of the set.
inline KModule power_product_span(const KModule& a, int i, const KModule& b, int j, long long c) {
  KModule r(a.field(), a.power());
  for (auto& t : power_product_terms(a, i, b, j, c)) r.adjoin(t.value);
  return r;
}

/// For a product term failing membership in `target`, searches for a concrete pair
/// (x, y) of A x B with c*x^i*y^j outside target: subset sums of the involved basis
/// elements first, then the same with weights from K.
inline std::optional<std::pair<Scalar, Scalar>> find_product_witness(const KModule& a, int i, const KModule& b, int j,
                                                                    long long c, const KModule& target,
                                                                    const ProductTerm& term) {
  const auto& f = a.field();
  auto support = [](const std::vector<std::size_t>& m) {
    std::vector<std::size_t> s = m;
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  std::vector<std::size_t> sa = support(term.mu), sb = support(term.nu);
  std::vector<Scalar> weights{Scalar::one(f)};
  if (!f->is_finite()) {
    Scalar y = Scalar::from_poly(f, MultiPoly::monomial(f->p, Monomial::var(0, static_cast<std::uint32_t>(a.power()))));
    weights.push_back(y);
    weights.push_back(y + Scalar::one(f));
  }
  Scalar cs = Scalar::from_int(f, c);
  std::size_t nw = weights.size();
  // weight assignments: each involved basis element gets a weight index or is absent
  std::size_t total = sa.size() + sb.size();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < total; ++k) combos *= (nw + 1);
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    Scalar x = Scalar::zero(f), y = Scalar::zero(f);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t choice = rest % (nw + 1);
      rest /= (nw + 1);
      if (choice == 0) continue;
      if (k < sa.size())
        x += weights[choice - 1] * a.basis()[sa[k]];
      else
        y += weights[choice - 1] * b.basis()[sb[k - sa.size()]];
    }
    if (x.is_zero() || (j > 0 && y.is_zero())) continue;
    Scalar v = cs * x.pow(i) * (j > 0 ? y.pow(j) : Scalar::one(f));
    if (!target.contains(v)) return std::make_pair(x, y);
  }
  return std::nullopt;
}

struct ClosureResult {
  bool holds = true;
  std::optional<Scalar> witness;  // a product of basis elements outside the module
  explicit operator bool() const { return holds; }
};

/// Multiplicative closure of a module containing 1 (the computable subring test).
inline ClosureResult is_multiplicatively_closed(const KModule& m) {
  if (!m.contains(Scalar::one(m.field()))) throw DomainError("module does not contain 1");
  const auto& b = m.basis();
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = x; y < b.size(); ++y) {
      Scalar prod = b[x] * b[y];
      if (!m.contains(prod)) return {false, prod};
    }
  return {};
}

/// Samples random nonzero elements and tests their inverses for membership.
inline ClosureResult inverse_closure_check(const KModule& m, int samples, std::uint64_t seed) {
  if (m.is_zero()) throw DomainError("zero module");
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Scalar a = m.random_element(rng);
    if (a.is_zero()) continue;
    Scalar inv = a.inv();
    if (!m.contains(inv)) return {false, a};
  }
  return {};
}

/// K-span of c*m (zero module when c ≡ 0 mod p).
inline KModule scaled_module(const KModule& m, long long c) {
  KModule r(m.field(), m.power());
  if (detail::mod_p(c, m.field()->p) == 0) return r;
  Scalar cs = Scalar::from_int(m.field(), c);
  for (const auto& g : m.basis()) r.adjoin(cs * g);
  return r;
}

}  // namespace chevcarpet
