#pragma once

// Sp_2l over a field of characteristic 2. Basis order e1..el, e_{-l}..e_{-1};
// index(e_i) = i-1, index(e_{-i}) = 2l-i. The form J is the anti-diagonal unit matrix.

#include <string>
#include <vector>

#include "roots.hpp"
#include "scalars.hpp"

namespace chevcarpet {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, int n) : field_(std::move(f)), n_(n), a_(static_cast<std::size_t>(n * n), Scalar::zero(field_)) {}

  static Matrix identity(const FieldPtr& f, int n) {
    Matrix m(f, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  int size() const { return n_; }
  const FieldPtr& field() const { return field_; }

  Scalar& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
  const Scalar& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    const int n = x.n_;
    Matrix r(x.field_, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const Scalar& xik = x(i, k);
        if (xik.is_zero()) continue;
        bool one = xik.is_one();
        for (int j = 0; j < n; ++j) {
          const Scalar& ykj = y(k, j);
          if (ykj.is_zero()) continue;
          r(i, j) += one ? ykj : xik * ykj;
        }
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.n_ != y.n_) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!(x.a_[i] == y.a_[i])) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix r(field_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix map(Scalar (*fn)(const Scalar&)) const {
    Matrix r = *this;
    for (auto& s : r.a_) s = fn(s);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const Scalar& s = (*this)(i, j);
        if (i == j ? !s.is_one() : !s.is_zero()) return false;
      }
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_upper_unitriangular() const {
    for (int i = 0; i < n_; ++i) {
      if (!(*this)(i, i).is_one()) return false;
      for (int j = 0; j < i; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    }
    return true;
  }

  bool is_upper_triangular() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

  /// Exactly one nonzero entry per row and column.
  bool is_monomial() const {
    for (int i = 0; i < n_; ++i) {
      int rc = 0, cc = 0;
      for (int j = 0; j < n_; ++j) {
        rc += !(*this)(i, j).is_zero();
        cc += !(*this)(j, i).is_zero();
      }
      if (rc != 1 || cc != 1) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
      s += "[";
      for (int j = 0; j < n_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).to_string();
      }
      s += "]\n";
    }
    return s;
  }

 private:
  FieldPtr field_;
  int n_ = 0;
  std::vector<Scalar> a_;
};

inline Matrix form_J(const FieldPtr& f, int l) {
  Matrix j(f, 2 * l);
  for (int k = 0; k < 2 * l; ++k) j(k, 2 * l - 1 - k) = Scalar::one(f);
  return j;
}

/// g^T J g = J.
inline bool preserves_form(const Matrix& g) {
  if (g.size() % 2 != 0) return false;
  Matrix J = form_J(g.field(), g.size() / 2);
  return g.transpose() * J * g == J;
}

/// Inverse of a symplectic matrix in characteristic 2: J g^T J.
inline Matrix sp_inverse(const Matrix& g) {
  const int n = g.size();
  Matrix r(g.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = g(n - 1 - j, n - 1 - i);
  return r;
}

/// Matrix index of the basis vector e_{±i} (i 1-based; sign -1 for e_{-i}).
inline int basis_index(int l, int i, int sign) { return sign > 0 ? i - 1 : 2 * l - i; }

/// Matrix positions (row, col) carrying t in x_α(t), α a root of C_l. The first
/// position is the designated entry used for coordinate extraction.
inline std::vector<std::pair<int, int>> root_positions(const RootVec& a) {
  const int l = static_cast<int>(a.size());
  std::vector<std::pair<int, int>> pos;
  std::vector<std::pair<int, int>> nz;  // (index 1-based, coefficient)
  for (int i = 0; i < l; ++i)
    if (a[i] != 0) nz.emplace_back(i + 1, a[i]);
  if (nz.size() == 1) {
    auto [i, c] = nz[0];
    if (c == 2) pos.emplace_back(basis_index(l, i, 1), basis_index(l, i, -1));
    else if (c == -2) pos.emplace_back(basis_index(l, i, -1), basis_index(l, i, 1));
    else throw DomainError("not a root of C_l");
    return pos;
  }
  if (nz.size() != 2) throw DomainError("not a root of C_l");
  auto [i, ci] = nz[0];
  auto [j, cj] = nz[1];
  if (std::abs(ci) != 1 || std::abs(cj) != 1) throw DomainError("not a root of C_l");
  // E_{ab} has weight wt(a) - wt(b); wt(e_{±k}) = ±ε_k
  // root ci ε_i + cj ε_j = wt(a) - wt(b) with a = e_{ci·i}, b = e_{-cj·j}, and the mirror pair
  pos.emplace_back(basis_index(l, i, ci), basis_index(l, j, -cj));
  pos.emplace_back(basis_index(l, j, cj), basis_index(l, i, -ci));
  return pos;
}

/// x_α(t) for α in C_l (characteristic 2, all signs +).
inline Matrix gen_matrix(const RootVec& a, const Scalar& t) {
  const FieldPtr& f = t.field();
  if (f->p != 2) throw DomainError("symplectic realization requires characteristic 2");
  const int l = static_cast<int>(a.size());
  Matrix m = Matrix::identity(f, 2 * l);
  for (auto [r, c] : root_positions(a)) m(r, c) = t;
  return m;
}

/// w_α(t) = x_α(t) x_{-α}(t^{-1}) x_α(t).
inline Matrix weyl_matrix(const RootVec& a, const Scalar& t) {
  if (t.is_zero()) throw DomainError("w_α(t) needs t != 0");
  Matrix x = gen_matrix(a, t);
  return x * gen_matrix(RootSystem::negate(a), t.inv()) * x;
}

/// h_α(t) = w_α(t) w_α(1) (w_α(-1) = w_α(1) in characteristic 2).
inline Matrix torus_matrix(const RootVec& a, const Scalar& t) {
  return weyl_matrix(a, t) * weyl_matrix(a, Scalar::one(t.field()));
}

/// Diagonal matrix diag(d1..dl, dl^{-1}..d1^{-1}).
inline Matrix torus_diagonal(const std::vector<Scalar>& d) {
  const int l = static_cast<int>(d.size());
  const FieldPtr& f = d.front().field();
  Matrix m(f, 2 * l);
  for (int i = 1; i <= l; ++i) {
    m(basis_index(l, i, 1), basis_index(l, i, 1)) = d[i - 1];
    m(basis_index(l, i, -1), basis_index(l, i, -1)) = d[i - 1].inv();
  }
  return m;
}

/// [a, b] = a^{-1} b^{-1} a b.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return sp_inverse(a) * sp_inverse(b) * a * b; }

}  // namespace chevcarpet
