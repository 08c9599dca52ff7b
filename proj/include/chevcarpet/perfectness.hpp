#pragma once

// Certificates for x_α(𝔄_α) ⊆ [x_α(𝔄_α), T]: with h = h_β(t), t in the subfield K,
// [x_α(s), h] = x_α(s(t^m - 1)) for m = -<α, β>, so s = q / (t^m - 1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finite_groups.hpp"
#include "membership.hpp"

namespace chevcarpet {

struct PerfectnessCertificate {
  RootVec alpha, beta;
  Scalar target, t, s;
  int m = 0;
  bool verified = false;
};

struct PerfectnessReport {
  bool applicable = true;
  std::string reason;
  std::vector<PerfectnessCertificate> certificates;
  std::size_t failures = 0;
  std::optional<std::size_t> group_order, derived_order;  // finite instances only
  bool holds() const { return applicable && failures == 0; }
};

namespace detail {

/// A nonzero t in the prime-power subfield with t^m ≠ 1.
inline std::optional<Scalar> subfield_parameter(const FieldPtr& f, int m) {
  if (!f->is_finite()) return Scalar::variable(f, 0).pow(f->p);
  for (int c = 1; c < f->p; ++c) {
    Scalar t = Scalar::from_int(f, c);
    if (!t.pow(m).is_one()) return t;
  }
  return std::nullopt;
}

}  // namespace detail

/// One certificate per (root, target); the first target of every root is 0, the rest are nonzero.
inline PerfectnessReport perfectness_certificates(const Carpet& carpet, int samples, std::uint64_t seed) {
  const RootSystem& rs = carpet.system();
  if (rs.type() != RootType::C) throw DomainError("perfectness certificates are computed for C_l carpets");
  const FieldPtr& f = carpet.field();
  PerfectnessReport rep;
  Rng rng(seed);
  for (const auto& a : rs.roots()) {
    RootVec b = RootSystem::negate(a);
    int m = -rs.pairing(a, b);
    auto t = detail::subfield_parameter(f, m);
    if (!t) {
      rep.applicable = false;
      rep.reason = "no t in the prime subfield with t^" + std::to_string(m) + " != 1";
      rep.certificates.clear();
      return rep;
    }
    Scalar denom = t->pow(m) - Scalar::one(f);
    Matrix h = torus_matrix(b, *t);
    bool h_in = detail::torus_factor_in_carpet(carpet, b, *t, detail::native_in);
    for (int k = 0; k < samples; ++k) {
      Scalar q = k == 0 ? Scalar::zero(f) : detail::nonzero_sparse_element(carpet.module(a), rng);
      PerfectnessCertificate c{a, b, q, *t, q / denom, m, false};
      c.verified = h_in && carpet.module(a).contains(c.s) && commutator(gen_matrix(a, c.s), h) == gen_matrix(a, q);
      rep.failures += !c.verified;
      rep.certificates.push_back(std::move(c));
    }
  }
  return rep;
}

/// Sp4(GF(2)): no certificate exists, and the group is not perfect.
inline PerfectnessReport sp4_gf2_perfectness(std::size_t cap = kDefaultCap) {
  auto f = finite_field(2);
  Carpet c(RootSystem::build(RootType::C, 2), KModule::whole_field(f), KModule::whole_field(f));
  PerfectnessReport rep = perfectness_certificates(c, 1, 0);
  const SmallField& sf = SmallField::get(2);
  std::vector<SmallMatrix> gens;
  for (const auto& a : c.system().roots()) gens.push_back(pack(gen_matrix(a, Scalar::one(f))));
  FiniteGroup g = enumerate_closure(sf, gens, cap);
  rep.group_order = g.order();
  rep.derived_order = derived_subgroup(g, cap).order();
  return rep;
}

}  // namespace chevcarpet
