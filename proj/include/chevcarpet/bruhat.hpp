#pragma once

// Reduced Bruhat decomposition g = u h n_w v in Sp_2l(F), characteristic 2.
// v is supported on the inversion set of w; n_w is the product of w_α(1)
// along the lexicographically minimal reduced word of w.

#include <string>
#include <utility>
#include <vector>

#include "words.hpp"

namespace chevcarpet {

using RootCoords = std::vector<std::pair<RootVec, Scalar>>;

struct BruhatForm {
  int rank = 0;
  RootCoords u;
  std::vector<Scalar> torus;
  WeylElement w;
  RootCoords v;
};

inline bool operator==(const BruhatForm& a, const BruhatForm& b) {
  auto same = [](const RootCoords& x, const RootCoords& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].first != y[i].first || !(x[i].second == y[i].second)) return false;
    return true;
  };
  if (a.rank != b.rank || a.w.word != b.w.word || a.torus.size() != b.torus.size()) return false;
  for (std::size_t i = 0; i < a.torus.size(); ++i)
    if (!(a.torus[i] == b.torus[i])) return false;
  return same(a.u, b.u) && same(a.v, b.v);
}

/// Weight ±ε_k of the basis vector at a matrix index.
inline RootVec index_weight(int l, int idx) {
  RootVec v(static_cast<std::size_t>(l), 0);
  if (idx < l) v[static_cast<std::size_t>(idx)] = 1;
  else v[static_cast<std::size_t>(2 * l - 1 - idx)] = -1;
  return v;
}

/// Product of w_{α_i}(1) along the word.
inline Matrix weyl_representative(const RootSystem& rs, const WeylElement& w, const FieldPtr& f) {
  Matrix m = Matrix::identity(f, 2 * rs.rank());
  for (int i : w.word) m = m * weyl_matrix(rs.simple(i), Scalar::one(f));
  return m;
}

inline Matrix product_of(const RootCoords& cs, const FieldPtr& f, int l) {
  Matrix m = Matrix::identity(f, 2 * l);
  for (const auto& [a, t] : cs) m = m * gen_matrix(a, t);
  return m;
}

/// Strips root factors from the left in the given order; the residual must be the identity.
inline RootCoords unipotent_coordinates(const Matrix& u, const std::vector<RootVec>& order) {
  if (!u.is_upper_unitriangular()) throw DomainError("not upper unitriangular");
  Matrix r = u;
  RootCoords out;
  for (const auto& a : order) {
    auto [i, j] = root_positions(a).front();
    Scalar c = r(i, j);
    if (c.is_zero()) continue;
    r = gen_matrix(a, -c) * r;
    out.emplace_back(a, c);
  }
  if (!r.is_identity()) throw DomainError("unipotent residual is not the identity");
  return out;
}

/// Signed permutation of a monomial matrix, as a Weyl group element (lex-min reduced word).
inline WeylElement weyl_of_monomial(const RootSystem& rs, const Matrix& m) {
  const int l = rs.rank();
  // image of ε_k
  std::vector<RootVec> img(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) {
    int col = basis_index(l, k + 1, 1);
    for (int row = 0; row < 2 * l; ++row)
      if (!m(row, col).is_zero()) img[static_cast<std::size_t>(k)] = index_weight(l, row);
  }
  auto act = [&](const RootVec& v) {
    RootVec r(static_cast<std::size_t>(l), 0);
    for (int k = 0; k < l; ++k)
      for (int c = 0; c < l; ++c) r[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(k)] * img[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
    return r;
  };
  // strip right descents: f s_{i1} ... s_{ik} = 1, so f = s_{ik} ... s_{i1}
  std::vector<int> word;
  for (;;) {
    int found = -1;
    for (int i = 0; i < l && found < 0; ++i)
      if (!rs.is_positive(act(rs.simple(i)))) found = i;
    if (found < 0) break;
    word.push_back(found);
    // (f s)(ε_k) = f(s ε_k)
    std::vector<RootVec> next(static_cast<std::size_t>(l));
    for (int k = 0; k < l; ++k) next[static_cast<std::size_t>(k)] = act(rs.reflect(rs.simple(found), index_weight(l, k)));
    img = std::move(next);
    if (word.size() > 64) throw DomainError("weyl word did not terminate");
  }
  return rs.reduced(WeylElement{std::vector<int>(word.rbegin(), word.rend())});
}

namespace detail {

/// Inverse of a monomial matrix.
inline Matrix monomial_inverse(const Matrix& m) {
  const int n = m.size();
  Matrix r(m.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m(i, j).is_zero()) r(j, i) = m(i, j).inv();
  return r;
}

}  // namespace detail

/// g = u · diag(torus) · n_w · v.
inline BruhatForm bruhat_decompose(const Matrix& g) {
  const FieldPtr& f = g.field();
  const int n = g.size();
  if (n % 2 != 0 || n < 4) throw DomainError("expected a 2l x 2l matrix, l >= 2");
  if (f->p != 2) throw DomainError("symplectic realization requires characteristic 2");
  if (!preserves_form(g)) throw DomainError("matrix does not preserve the symplectic form");
  const int l = n / 2;
  const RootSystem& rs = system_for(RootType::C, l);

  // (i) pivot elimination: g = u1 · m · v1 with u1, v1 upper unitriangular
  Matrix a = g, u1 = Matrix::identity(f, n), v1 = Matrix::identity(f, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = n - 1; r >= 0 && piv < 0; --r)
      if (!used[static_cast<std::size_t>(r)] && !a(r, c).is_zero()) piv = r;
    if (piv < 0) throw DomainError("singular matrix");
    used[static_cast<std::size_t>(piv)] = true;
    Scalar pinv = a(piv, c).inv();
    for (int r = 0; r < piv; ++r) {
      if (a(r, c).is_zero()) continue;
      Scalar k = a(r, c) * pinv;
      // row r -= k row piv; u1 col piv += k col r
      for (int j = 0; j < n; ++j)
        if (!a(piv, j).is_zero()) a(r, j) -= k * a(piv, j);
      for (int i = 0; i < n; ++i)
        if (!u1(i, r).is_zero()) u1(i, piv) += k * u1(i, r);
    }
    for (int j = c + 1; j < n; ++j) {
      if (a(piv, j).is_zero()) continue;
      Scalar k = a(piv, j) * pinv;
      // col j -= k col c; v1 row c += k row j
      a(piv, j) = Scalar::zero(f);
      for (int i = 0; i < n; ++i)
        if (!v1(j, i).is_zero()) v1(c, i) += k * v1(j, i);
    }
  }
  const Matrix& m = a;

  // (ii) reduced split in GL: m v1 m^{-1} = A · L, A upper, L lower unitriangular;
  // then u = u1 A and v = m^{-1} L m. Neither factor is checked against the form
  // here: peeling root coordinates below fails unless both lie in Sp.
  Matrix minv = detail::monomial_inverse(m);
  Matrix x = m * v1 * minv;
  Matrix lower = Matrix::identity(f, n);
  for (int r = n - 1; r >= 1; --r) {
    if (!x(r, r).is_one()) throw DomainError("unexpected diagonal in reduced split");
    for (int j = 0; j < r; ++j) {
      if (x(r, j).is_zero()) continue;
      Scalar k = x(r, j);
      // col j -= k col r on x; row r += k row j on L
      for (int i = 0; i < n; ++i)
        if (!x(i, r).is_zero()) x(i, j) -= k * x(i, r);
      for (int i = 0; i < n; ++i)
        if (!lower(j, i).is_zero()) lower(r, i) += k * lower(j, i);
    }
  }
  Matrix u = u1 * x;
  Matrix v = minv * lower * m;

  BruhatForm out;
  out.rank = l;
  out.w = weyl_of_monomial(rs, m);
  Matrix nw = weyl_representative(rs, out.w, f);
  Matrix h = m * sp_inverse(nw);
  if (!h.is_diagonal()) throw DomainError("torus factor is not diagonal");
  for (int i = 0; i < l; ++i) out.torus.push_back(h(i, i));
  out.u = unipotent_coordinates(u, rs.positive_roots());
  out.v = unipotent_coordinates(v, rs.inversion_set(out.w));
  return out;
}

inline Matrix recompose(const BruhatForm& b, const FieldPtr& f) {
  const RootSystem& rs = system_for(RootType::C, b.rank);
  return product_of(b.u, f, b.rank) * torus_diagonal(b.torus) * weyl_representative(rs, b.w, f) *
         product_of(b.v, f, b.rank);
}

inline std::string coords_json(const RootSystem& rs, const RootCoords& cs) {
  std::string s = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ",";
    s += "[\"" + rs.to_string(cs[i].first) + "\",\"" + cs[i].second.to_string() + "\"]";
  }
  return s + "]";
}

/// {"u":[["e1-e2","x1"],...],"torus":[...],"w":"s1 s2","v":[...]}
inline std::string bruhat_json(const BruhatForm& b) {
  const RootSystem& rs = system_for(RootType::C, b.rank);
  std::string s = "{\"u\":" + coords_json(rs, b.u) + ",\"torus\":[";
  for (std::size_t i = 0; i < b.torus.size(); ++i) s += (i ? ",\"" : "\"") + b.torus[i].to_string() + "\"";
  s += "],\"w\":\"" + rs.word_string(b.w) + "\",\"v\":" + coords_json(rs, b.v) + "}";
  return s;
}

}  // namespace chevcarpet
