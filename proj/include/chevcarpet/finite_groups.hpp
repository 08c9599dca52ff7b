#pragma once

// Matrix groups over GF(q), q <= 9, enumerated by breadth-first closure. Entries
// are finite-field codes packed four bits each into a 64-bit key (n <= 4).

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "matrix.hpp"

namespace chevcarpet {

/// Enumeration grew past its element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultCap = 2000000;

/// Addition and multiplication tables of GF(q) on the codes a0 + p*a1.
struct SmallField {
  int p = 2, k = 1, q = 2;
  std::array<std::array<std::uint8_t, 9>, 9> add{}, mul{};
  std::array<std::uint8_t, 9> neg{}, inv{};

  static const SmallField& get(int q) {
    static const std::array<SmallField, 4> cache = {build(2), build(3), build(4), build(9)};
    for (const auto& f : cache)
      if (f.q == q) return f;
    throw DomainError("unsupported finite field GF(" + std::to_string(q) + ")");
  }

 private:
  static SmallField build(int q) {
    FieldPtr d = finite_field(q);
    SmallField f;
    f.p = d->p;
    f.k = d->k;
    f.q = q;
    for (int a = 0; a < q; ++a) {
      f.neg[a] = static_cast<std::uint8_t>(detail::gf_neg(f.p, a));
      if (a) f.inv[a] = static_cast<std::uint8_t>(detail::gf_inv(f.p, f.k, a));
      for (int b = 0; b < q; ++b) {
        f.add[a][b] = static_cast<std::uint8_t>(detail::gf_add(f.p, a, b));
        f.mul[a][b] = static_cast<std::uint8_t>(detail::gf_mul(f.p, f.k, a, b));
      }
    }
    return f;
  }
};

using PackedKey = std::uint64_t;

struct SmallMatrix {
  int n = 0;
  std::array<std::uint8_t, 16> e{};

  std::uint8_t& operator()(int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; }
  std::uint8_t operator()(int i, int j) const { return e[static_cast<std::size_t>(i * n + j)]; }

  static SmallMatrix identity(int n) {
    SmallMatrix m;
    m.n = n;
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  PackedKey key() const {
    PackedKey k = 0;
    for (int i = n * n - 1; i >= 0; --i) k = (k << 4) | e[static_cast<std::size_t>(i)];
    return k;
  }

  static SmallMatrix from_key(int n, PackedKey k) {
    SmallMatrix m;
    m.n = n;
    for (int i = 0; i < n * n; ++i, k >>= 4) m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k & 15u);
    return m;
  }

  bool is_scalar() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((i == j && (*this)(i, j) != (*this)(0, 0)) || (i != j && (*this)(i, j))) return false;
    return true;
  }

  friend bool operator==(const SmallMatrix&, const SmallMatrix&) = default;
};

inline SmallMatrix multiply(const SmallField& f, const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      std::uint8_t x = a(i, k);
      if (!x) continue;
      const auto& row = f.mul[x];
      for (int j = 0; j < a.n; ++j) r(i, j) = f.add[r(i, j)][row[b(k, j)]];
    }
  return r;
}

/// Gauss-Jordan inverse; throws on a singular matrix.
inline SmallMatrix inverse(const SmallField& f, SmallMatrix a) {
  const int n = a.n;
  SmallMatrix r = SmallMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && !a(piv, c)) ++piv;
    if (piv == n) throw DomainError("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(r(c, j), r(piv, j));
    }
    std::uint8_t s = f.inv[a(c, c)];
    for (int j = 0; j < n; ++j) {
      a(c, j) = f.mul[s][a(c, j)];
      r(c, j) = f.mul[s][r(c, j)];
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || !a(i, c)) continue;
      std::uint8_t k = f.neg[a(i, c)];
      for (int j = 0; j < n; ++j) {
        a(i, j) = f.add[a(i, j)][f.mul[k][a(c, j)]];
        r(i, j) = f.add[r(i, j)][f.mul[k][r(c, j)]];
      }
    }
  }
  return r;
}

inline SmallMatrix pack(const Matrix& m) {
  if (!m.field()->is_finite()) throw DomainError("packing needs a finite field");
  if (m.size() > 4) throw DomainError("packed matrices are at most 4 x 4");
  SmallMatrix r;
  r.n = m.size();
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r(i, j) = static_cast<std::uint8_t>(m(i, j).code());
  return r;
}

inline Matrix unpack(const SmallMatrix& m, const FieldPtr& f) {
  Matrix r(f, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r(i, j) = Scalar::from_code(f, m(i, j));
  return r;
}

/// A finite group as the set of its packed elements; `elements` is in BFS order.
struct FiniteGroup {
  const SmallField* field = nullptr;
  int n = 0;
  std::vector<PackedKey> elements;
  std::unordered_set<PackedKey> index;

  std::size_t order() const { return elements.size(); }
  bool contains(const SmallMatrix& m) const { return index.count(m.key()) > 0; }
  SmallMatrix at(std::size_t i) const { return SmallMatrix::from_key(n, elements[i]); }
};

/// Closure of the generators under right multiplication (a group, since all orders are finite).
inline FiniteGroup enumerate_closure(const SmallField& f, const std::vector<SmallMatrix>& gens,
                                     std::size_t cap = kDefaultCap) {
  if (gens.empty()) throw DomainError("no generators");
  FiniteGroup g;
  g.field = &f;
  g.n = gens.front().n;
  PackedKey id = SmallMatrix::identity(g.n).key();
  g.elements.push_back(id);
  g.index.insert(id);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    SmallMatrix x = g.at(head);
    for (const auto& s : gens) {
      PackedKey k = multiply(f, x, s).key();
      if (!g.index.insert(k).second) continue;
      g.elements.push_back(k);
      if (g.elements.size() > cap) throw CapExceeded("enumeration exceeded cap " + std::to_string(cap));
    }
  }
  return g;
}

inline SmallMatrix commutator(const SmallField& f, const SmallMatrix& a, const SmallMatrix& b) {
  return multiply(f, multiply(f, inverse(f, a), inverse(f, b)), multiply(f, a, b));
}

/// [G, G], generated by all commutators of pairs; meant for groups of a few thousand elements.
inline FiniteGroup derived_subgroup(const FiniteGroup& g, std::size_t cap = kDefaultCap) {
  const SmallField& f = *g.field;
  std::unordered_set<PackedKey> seen;
  std::vector<SmallMatrix> gens;
  std::vector<SmallMatrix> all, invs;
  for (std::size_t i = 0; i < g.order(); ++i) {
    all.push_back(g.at(i));
    invs.push_back(inverse(f, all.back()));
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      SmallMatrix c = multiply(f, multiply(f, invs[i], invs[j]), multiply(f, all[i], all[j]));
      if (seen.insert(c.key()).second) gens.push_back(c);
    }
  return enumerate_closure(f, gens, cap);
}

/// Order of an element (the identity has order 1).
inline int element_order(const SmallField& f, const SmallMatrix& m, int limit = 100000) {
  SmallMatrix id = SmallMatrix::identity(m.n), x = m;
  for (int k = 1; k <= limit; ++k) {
    if (x == id) return k;
    x = multiply(f, x, m);
  }
  throw DomainError("element order exceeds limit");
}

/// Number of elements in the image modulo the scalar matrices contained in the group.
inline std::size_t projective_order(const FiniteGroup& g) {
  std::size_t centre = 0;
  for (std::size_t i = 0; i < g.order(); ++i) centre += g.at(i).is_scalar();
  return g.order() / centre;
}

// ---------------------------------------------------------------------------
// SL2 subgroups generated by t21(K) and t12(rK)

struct Sl2Report {
  std::string name;            // "dihedral-F4" or "a5-F9"
  int q = 0;                   // field size
  std::size_t order = 0;       // |M|
  bool involutions = false;    // dihedral case: both generators square to I
  int product_order = 0;       // dihedral case: k = ord(st)
  bool dihedral = false;       // dihedral case: |M| = 2k with s^2 = t^2 = (st)^k = 1
  std::size_t centre = 0;      // |M ∩ {scalars}|
  std::size_t psl_order = 0;   // |M / (M ∩ {±I})|
  std::size_t derived_psl_order = 0;
  bool perfect = false;        // image equals its derived subgroup
  bool holds = false;
};

namespace detail {

inline SmallMatrix elementary(int i, int j, int t) {
  SmallMatrix m = SmallMatrix::identity(2);
  m(i, j) = static_cast<std::uint8_t>(t);
  return m;
}

}  // namespace detail

/// dihedral-F4: K = F2, r = ω in GF(4). a5-F9: K = F3, r = x1 in GF(9) with r^2 = -1.
inline Sl2Report sl2_enumerate(const std::string& which, std::size_t cap = kDefaultCap) {
  Sl2Report rep;
  rep.name = which;
  int q = 0, r = 0;
  if (which == "dihedral-F4") {
    q = 4;
    r = 2;
  } else if (which == "a5-F9") {
    q = 9;
    r = 3;
  } else {
    throw DomainError("unknown sl2 case '" + which + "'");
  }
  rep.q = q;
  const SmallField& f = SmallField::get(q);
  std::vector<SmallMatrix> gens;
  for (int k = 1; k < f.p; ++k) {
    gens.push_back(detail::elementary(1, 0, k));
    gens.push_back(detail::elementary(0, 1, f.mul[k][r]));
  }
  FiniteGroup m = enumerate_closure(f, gens, cap);
  rep.order = m.order();
  for (std::size_t i = 0; i < m.order(); ++i) rep.centre += m.at(i).is_scalar();
  rep.psl_order = m.order() / rep.centre;
  FiniteGroup d = derived_subgroup(m, cap);
  rep.derived_psl_order = projective_order(d);
  rep.perfect = rep.derived_psl_order == rep.psl_order;
  if (q == 4) {
    const SmallMatrix& s = gens[0];
    const SmallMatrix& t = gens[1];
    SmallMatrix id = SmallMatrix::identity(2);
    rep.involutions = multiply(f, s, s) == id && multiply(f, t, t) == id;
    rep.product_order = element_order(f, multiply(f, s, t));
    rep.dihedral = rep.involutions && rep.order == 2 * static_cast<std::size_t>(rep.product_order);
    rep.holds = rep.dihedral;
  } else {
    rep.holds = rep.psl_order == 60 && rep.perfect && (rep.centre == 1 || rep.centre == 2);
  }
  return rep;
}

}  // namespace chevcarpet
