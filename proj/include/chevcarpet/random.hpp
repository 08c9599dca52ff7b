#pragma once

#include <cstdint>
#include <random>

#include "scalars.hpp"

namespace chevcarpet {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random polynomial with at most `terms` terms and per-variable degree <= max_deg.
inline MultiPoly random_poly(const FieldDescriptor& f, Rng& rng, int terms, int max_deg, std::uint32_t stride = 1) {
  MultiPoly r(f.p);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int v = 0; v < f.nvars; ++v) {
      m.e[v] = static_cast<std::uint32_t>(uniform_int(rng, 0, max_deg)) * stride;
      m.deg += m.e[v];
    }
    r = r + MultiPoly::monomial(f.p, m, uniform_int(rng, 1, f.p - 1));
  }
  return r;
}

/// Random element of the field. Finite kind: uniform. Rational kind: small
/// polynomial, with a small denominator when `allow_fraction`.
inline Scalar random_scalar(const FieldPtr& f, Rng& rng, bool allow_fraction = true, int max_deg = 2) {
  if (f->is_finite()) return Scalar::from_code(f, uniform_int(rng, 0, f->order() - 1));
  MultiPoly num = random_poly(*f, rng, uniform_int(rng, 1, 3), max_deg);
  if (!allow_fraction || uniform_int(rng, 0, 2) != 0) return Scalar::from_poly(f, num);
  MultiPoly den = random_poly(*f, rng, uniform_int(rng, 1, 2), 1);
  if (den.is_zero()) den = MultiPoly::constant(f->p, 1);
  return Scalar::fraction(f, num, den);
}

inline Scalar random_nonzero_scalar(const FieldPtr& f, Rng& rng, bool allow_fraction = true, int max_deg = 2) {
  for (;;) {
    Scalar s = random_scalar(f, rng, allow_fraction, max_deg);
    if (!s.is_zero()) return s;
  }
}

/// Random element of K = F_p(x1^q..xn^q): a polynomial in the q-th powers of the
/// variables with small exponents. Finite kind: a random prime-field element.
inline Scalar random_K_element(const FieldPtr& f, int q, Rng& rng, int max_deg = 1) {
  if (f->is_finite()) return Scalar::from_int(f, uniform_int(rng, 0, f->p - 1));
  return Scalar::from_poly(f, random_poly(*f, rng, uniform_int(rng, 1, 2), max_deg, static_cast<std::uint32_t>(q)));
}

}  // namespace chevcarpet
