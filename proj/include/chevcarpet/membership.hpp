#pragma once

// Membership of a symplectic matrix in a carpet subgroup E(Φ, 𝔄), decided on
// the unipotent parts of its Bruhat form. Carpets of type B are read through ψ:
// a coordinate at the long C-root 2α must be r² with r in 𝔄_α(B).

#include <optional>
#include <string>

#include "bruhat.hpp"
#include "carpets.hpp"

namespace chevcarpet {

enum class Verdict { member, not_member, torus_undetermined };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::member: return "Member";
    case Verdict::not_member: return "NotMember";
    default: return "TorusUndetermined";
  }
}

struct MembershipVerdict {
  Verdict verdict = Verdict::member;
  BruhatForm form;
  std::optional<RootVec> root;     // C-root of the failing coordinate
  std::optional<Scalar> witness;   // the coordinate itself
  std::string certificate;
};

/// Whether x_a(t) (a a root of C_l) lies in the carpet's root subgroup.
inline bool coordinate_in_carpet(const Carpet& carpet, const RootVec& a, const Scalar& t) {
  const RootSystem& rs = carpet.system();
  if (rs.type() == RootType::C) return carpet.module(a).contains(t);
  if (rs.type() != RootType::B) throw DomainError("carpet membership needs type B or C");
  const RootSystem& c = system_for(RootType::C, rs.rank());
  if (!c.is_long(a)) return carpet.module(a).contains(t);
  if (!t.is_finite() && !is_in_K(t)) return false;
  RootVec half = a;
  for (auto& x : half) x /= 2;
  return carpet.module(half).contains(pth_root(t));
}

namespace detail {

/// h_α(t) is a carpet element when t ∈ 𝔄_α, t^{-1} ∈ 𝔄_{-α} and 1 ∈ 𝔄_{±α}.
inline bool torus_factor_in_carpet(const Carpet& carpet, const RootVec& a, const Scalar& t,
                                   bool (*in)(const Carpet&, const RootVec&, const Scalar&)) {
  const FieldPtr& f = t.field();
  RootVec na = RootSystem::negate(a);
  return in(carpet, a, t) && in(carpet, na, t.inv()) && in(carpet, a, Scalar::one(f)) &&
         in(carpet, na, Scalar::one(f));
}

inline Scalar nonzero_sparse_element(const KModule& m, Rng& rng, int terms = 2) {
  if (m.dim() == 0) throw DomainError("zero module has no nonzero element");
  for (;;) {
    Scalar t = m.sparse_element(rng, terms);
    if (!t.is_zero()) return t;
  }
}

inline bool native_in(const Carpet& carpet, const RootVec& a, const Scalar& t) { return carpet.module(a).contains(t); }

}  // namespace detail

inline MembershipVerdict carpet_membership(const GroupElement& g, const Carpet& carpet) {
  const RootSystem& rs = carpet.system();
  if (g.matrix.size() != 2 * rs.rank()) throw DomainError("matrix size does not match the carpet rank");
  MembershipVerdict out;
  out.form = bruhat_decompose(g.matrix);
  for (const RootCoords* part : {&out.form.u, &out.form.v})
    for (const auto& [a, t] : *part)
      if (!coordinate_in_carpet(carpet, a, t)) {
        out.verdict = Verdict::not_member;
        out.root = a;
        out.witness = t;
        return out;
      }
  const auto& d = out.form.torus;
  bool trivial = true;
  for (const auto& x : d) trivial = trivial && x.is_one();
  if (trivial) {
    out.certificate = "trivial torus";
    return out;
  }
  // diag(d) = prod_i h_{α_i}(d_1...d_i) over the simple roots of C_l
  const RootSystem& c = system_for(RootType::C, rs.rank());
  Scalar t = Scalar::one(g.matrix.field());
  bool factored = true;
  for (int i = 0; i < rs.rank() && factored; ++i) {
    t = t * d[static_cast<std::size_t>(i)];
    factored = t.is_one() || detail::torus_factor_in_carpet(carpet, c.simple(i), t, coordinate_in_carpet);
  }
  if (factored) {
    out.certificate = "simple coroot factors in carpet";
    return out;
  }
  if (g.provenance && g.provenance->tag == rs.type()) {
    bool only_torus = true;
    for (const auto& s : g.provenance->symbols)
      only_torus = only_torus && s.kind == SymbolKind::torus &&
                   detail::torus_factor_in_carpet(carpet, s.root, s.param, detail::native_in);
    if (only_torus) {
      out.certificate = "torus symbols with carpet parameters";
      return out;
    }
  }
  out.verdict = Verdict::torus_undetermined;
  return out;
}

/// Random word in the carpet generators x_α(𝔄_α), with sparse parameters.
inline Word random_carpet_word(const Carpet& carpet, Rng& rng, int max_len, int terms = 2) {
  const RootSystem& rs = carpet.system();
  Word w{rs.type(), rs.rank(), {}};
  int len = uniform_int(rng, 0, max_len);
  for (int k = 0; k < len; ++k) {
    const RootVec& a = rs.roots()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rs.roots().size()) - 1))];
    w.symbols.push_back({SymbolKind::root_elt, a, carpet.module(a).sparse_element(rng, terms)});
  }
  return w;
}

}  // namespace chevcarpet
