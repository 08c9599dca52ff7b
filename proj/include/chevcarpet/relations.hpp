#pragma once

// Relation checks in the matrix realization: Chevalley commutator relations,
// the ψφ = Frobenius composition, and triviality of symbols.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "words.hpp"

namespace chevcarpet {

struct RelationFailure {
  RootVec alpha, beta;
  Scalar r, s;
  std::string relation;
};

struct RelationReport {
  RootType tag = RootType::C;
  int rank = 0;
  std::size_t checked = 0;
  std::vector<RelationFailure> failures;
  bool holds() const { return failures.empty(); }
};

/// x_α(t) in the realization of the given tag (B through ψ).
inline Matrix tagged_gen(RootType tag, const RootSystem& rs, const RootVec& a, const Scalar& t) {
  if (tag == RootType::C) return gen_matrix(a, t);
  Symbol c = psi_symbol(rs, {SymbolKind::root_elt, a, t});
  return gen_matrix(c.root, c.param);
}

/// Right-hand side of the commutator formula for [x_α(r), x_β(s)], constants reduced mod 2.
inline Matrix commutator_rhs(RootType tag, const RootSystem& rs, const RootVec& a, const RootVec& b, const Scalar& r,
                             const Scalar& s) {
  const FieldPtr& f = r.field();
  Matrix m = Matrix::identity(f, 2 * rs.rank());
  // factors in increasing i+j; in types B/C they commute pairwise
  for (int sum = 2; sum <= 5; ++sum)
    for (int i = 1; i < sum; ++i) {
      int j = sum - i;
      RootVec g = RootSystem::add(a, b, i, j);
      if (!rs.is_root(g)) continue;
      int c = rs.structure_constant_magnitude(a, b, i, j);
      if (c % 2 == 0) continue;
      m = m * tagged_gen(tag, rs, g, r.pow(i) * s.pow(j));
    }
  return m;
}

/// Checks relations (1)-(4) for every ordered pair of roots with `samples` random
/// parameter pairs each. Pairs β = -α carry no relation and are skipped.
inline RelationReport verify_relations(RootType tag, int rank, const FieldPtr& f, int samples, std::uint64_t seed) {
  if (tag != RootType::C && tag != RootType::B) throw DomainError("relations are realized for B_l and C_l only");
  if (f->p != 2) throw DomainError("relations are realized in characteristic 2");
  const RootSystem& rs = system_for(tag, rank);
  RelationReport rep{tag, rank, 0, {}};
  Rng rng(seed);
  for (const auto& a : rs.roots())
    for (const auto& b : rs.roots()) {
      if (b == RootSystem::negate(a)) continue;
      for (int k = 0; k < samples; ++k) {
        Scalar r = random_scalar(f, rng, true, 1), s = random_scalar(f, rng, true, 1);
        ++rep.checked;
        if (a == b) {
          if (!(tagged_gen(tag, rs, a, r) * tagged_gen(tag, rs, a, s) == tagged_gen(tag, rs, a, r + s)))
            rep.failures.push_back({a, b, r, s, "(1)"});
          continue;
        }
        Matrix lhs = commutator(tagged_gen(tag, rs, a, r), tagged_gen(tag, rs, b, s));
        if (!(lhs == commutator_rhs(tag, rs, a, b, r, s))) {
          bool addable = rs.is_root(RootSystem::add(a, b));
          rep.failures.push_back({a, b, r, s, !addable ? "(2)" : rs.is_long(a) == rs.is_long(b) ? "(3)" : "(4)"});
        }
      }
    }
  return rep;
}

struct RoundtripFailure {
  Word word;
  std::string direction;
};

struct RoundtripReport {
  std::size_t checked = 0;
  std::vector<RoundtripFailure> failures;
  bool holds() const { return failures.empty(); }
};

/// ψφ(W) = Frob(W) on C_l words and φψ(W) = Frob(W) on B_l words, compared as matrices.
inline bool roundtrip_holds(const Word& w, const FieldPtr& f) {
  Word back = w.tag == RootType::C ? apply_morphism(Morphism::psi, apply_morphism(Morphism::phi, w))
                                   : apply_morphism(Morphism::phi, apply_morphism(Morphism::psi, w));
  return word_matrix(back, f) == word_matrix(frobenius_word(w), f);
}

inline RoundtripReport frobenius_roundtrip_check(int rank, int word_len, int trials, std::uint64_t seed,
                                                 const FieldPtr& f) {
  if (rank < 2) throw DomainError("rank must be at least 2");
  RoundtripReport rep;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t)
    for (RootType tag : {RootType::C, RootType::B}) {
      Word w = random_word(tag, rank, f, rng, word_len);
      ++rep.checked;
      if (!roundtrip_holds(w, f)) rep.failures.push_back({w, tag == RootType::C ? "psi.phi" : "phi.psi"});
    }
  return rep;
}

/// {r, s} = h_α(r) h_α(s) h_α(rs)^{-1}.
inline Matrix symbol_image(const Scalar& r, const Scalar& s, const RootVec& root) {
  if (r.is_zero() || s.is_zero()) throw DomainError("symbol arguments must be nonzero");
  return torus_matrix(root, r) * torus_matrix(root, s) * sp_inverse(torus_matrix(root, r * s));
}

}  // namespace chevcarpet
