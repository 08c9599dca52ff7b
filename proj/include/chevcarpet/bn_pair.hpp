#pragma once

// BN-pair axioms for Sp4: exhaustively over GF(4) on packed matrices, and by
// sampling inside the carpet subgroup E(C2, (F, F^2)), F = F2(x1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finite_groups.hpp"
#include "membership.hpp"

namespace chevcarpet {

struct AxiomCheck {
  std::string name;
  bool holds = true;
  std::size_t checked = 0;
  std::string detail;  // counts on success, a replayable witness on failure
};

struct BnReport {
  std::string instance;
  std::vector<AxiomCheck> axioms;
  std::vector<std::pair<std::string, std::size_t>> counts;
  bool holds() const {
    for (const auto& a : axioms)
      if (!a.holds) return false;
    return true;
  }
};

inline std::size_t classical_sp4_order(std::size_t q) { return q * q * q * q * (q * q - 1) * (q * q * q * q - 1); }

namespace detail {

struct Sp4Parts {
  FieldPtr f;
  const SmallField* sf;
  std::vector<SmallMatrix> all_roots, positive, torus, weyl;
};

inline Sp4Parts sp4_parts(int q) {
  Sp4Parts s;
  s.f = finite_field(q);
  s.sf = &SmallField::get(q);
  const RootSystem& rs = system_for(RootType::C, 2);
  for (int c = 1; c < q; ++c) {
    Scalar t = Scalar::from_code(s.f, c);
    for (const auto& a : rs.roots()) {
      s.all_roots.push_back(pack(gen_matrix(a, t)));
      if (rs.is_positive(a)) s.positive.push_back(pack(gen_matrix(a, t)));
    }
    for (const auto& a : rs.simple_roots())
      if (c > 1) s.torus.push_back(pack(torus_matrix(a, t)));
  }
  for (const auto& a : rs.simple_roots()) s.weyl.push_back(pack(weyl_matrix(a, Scalar::one(s.f))));
  return s;
}

inline std::vector<SmallMatrix> concat(std::vector<SmallMatrix> a, const std::vector<SmallMatrix>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline bool is_upper_triangular(const SmallMatrix& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < i; ++j)
      if (m(i, j)) return false;
  return true;
}

/// Support of a monomial matrix: row index of the nonzero entry in each column.
inline std::uint32_t support_code(const SmallMatrix& m) {
  std::uint32_t code = 0;
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i)
      if (m(i, j)) code = code * 8u + static_cast<std::uint32_t>(i);
  return code;
}

}  // namespace detail

/// Exhaustive check on G = Sp4(GF(q)) with B upper triangular and N monomial.
inline BnReport bn_verify_sp4_exhaustive(int q = 4, std::size_t cap = kDefaultCap) {
  BnReport rep;
  rep.instance = "sp4-gf" + std::to_string(q) + "-exhaustive";
  detail::Sp4Parts s = detail::sp4_parts(q);
  const SmallField& f = *s.sf;
  const RootSystem& rs = system_for(RootType::C, 2);

  std::size_t g_all = enumerate_closure(f, s.all_roots, cap).order();
  std::vector<SmallMatrix> bn_gens = detail::concat(detail::concat(s.positive, s.torus), s.weyl);
  std::size_t g_bn = enumerate_closure(f, bn_gens, cap).order();
  FiniteGroup U = enumerate_closure(f, s.positive, cap);
  FiniteGroup T = s.torus.empty() ? enumerate_closure(f, {SmallMatrix::identity(4)}, cap) : enumerate_closure(f, s.torus, cap);
  FiniteGroup B = enumerate_closure(f, detail::concat(s.positive, s.torus), cap);
  FiniteGroup N = enumerate_closure(f, detail::concat(s.weyl, s.torus), cap);
  rep.counts = {{"G", g_all}, {"classical", classical_sp4_order(static_cast<std::size_t>(q))}, {"U", U.order()},
                {"T", T.order()}, {"B", B.order()}, {"N", N.order()}};

  AxiomCheck order{"order", g_all == classical_sp4_order(static_cast<std::size_t>(q)), 1,
                   "|G| = " + std::to_string(g_all)};
  rep.axioms.push_back(order);

  // BN1: <B, N> = G
  rep.axioms.push_back({"BN1", g_bn == g_all, 1, "|<B,N>| = " + std::to_string(g_bn)});

  // BN2: T = B ∩ N is normal in N
  AxiomCheck bn2{"BN2", true, 0, ""};
  std::size_t meet = 0;
  for (std::size_t i = 0; i < N.order(); ++i) meet += B.index.count(N.elements[i]);
  bn2.holds = meet == T.order();
  for (std::size_t i = 0; i < T.order(); ++i) bn2.holds = bn2.holds && B.index.count(T.elements[i]) && N.index.count(T.elements[i]);
  for (std::size_t i = 0; i < N.order() && bn2.holds; ++i) {
    SmallMatrix n = N.at(i), ni = inverse(f, n);
    for (std::size_t j = 0; j < T.order(); ++j) {
      ++bn2.checked;
      if (!T.contains(multiply(f, multiply(f, n, T.at(j)), ni))) {
        bn2.holds = false;
        bn2.detail = "n #" + std::to_string(i) + " does not normalize T";
        break;
      }
    }
  }
  if (bn2.holds) bn2.detail = "|B ∩ N| = " + std::to_string(meet);
  rep.axioms.push_back(bn2);

  // BN3: W = N/T has order 8 and is generated by the involutions s_i = n_i T
  AxiomCheck bn3{"BN3", true, 0, ""};
  std::unordered_set<std::uint32_t> cosets;
  for (std::size_t i = 0; i < N.order(); ++i) cosets.insert(detail::support_code(N.at(i)));
  FiniteGroup W = enumerate_closure(f, s.weyl, cap);
  std::unordered_set<std::uint32_t> generated;
  for (std::size_t i = 0; i < W.order(); ++i) generated.insert(detail::support_code(W.at(i)));
  bool involutions = true;
  for (const auto& w : s.weyl) involutions = involutions && T.contains(multiply(f, w, w)) && !T.contains(w);
  bn3.checked = cosets.size();
  bn3.holds = cosets.size() == 8 && generated.size() == 8 && involutions;
  bn3.detail = "|N/T| = " + std::to_string(cosets.size());
  rep.axioms.push_back(bn3);

  // BN4: n_i B n ⊆ B n_i n B ∪ B n B, via the Bruhat cell of n_i u n
  AxiomCheck bn4{"BN4", true, 0, ""};
  std::vector<WeylElement> wn;
  for (std::size_t j = 0; j < N.order(); ++j) wn.push_back(weyl_of_monomial(rs, unpack(N.at(j), s.f)));
  for (int i = 0; i < 2 && bn4.holds; ++i) {
    const SmallMatrix& ni = s.weyl[static_cast<std::size_t>(i)];
    WeylElement si{{i}};
    for (std::size_t a = 0; a < U.order() && bn4.holds; ++a) {
      SmallMatrix niu = multiply(f, ni, U.at(a));
      for (std::size_t j = 0; j < N.order(); ++j) {
        ++bn4.checked;
        WeylElement w = bruhat_decompose(unpack(multiply(f, niu, N.at(j)), s.f)).w;
        if (!rs.equal(w, wn[j]) && !rs.equal(w, RootSystem::multiply(si, wn[j]))) {
          bn4.holds = false;
          bn4.detail = "s" + std::to_string(i + 1) + " u#" + std::to_string(a) + " n#" + std::to_string(j) + " lands in cell " +
                       rs.word_string(w);
          break;
        }
      }
    }
  }
  if (bn4.holds) bn4.detail = std::to_string(bn4.checked) + " products";
  rep.axioms.push_back(bn4);

  // BN5: n_i B n_i ≠ B, witnessed by n_i x_{α_i}(1) n_i^{-1}
  AxiomCheck bn5{"BN5", true, 0, ""};
  for (int i = 0; i < 2; ++i) {
    const SmallMatrix& ni = s.weyl[static_cast<std::size_t>(i)];
    SmallMatrix x = pack(gen_matrix(rs.simple(i), Scalar::one(s.f)));
    SmallMatrix c = multiply(f, multiply(f, ni, x), inverse(f, ni));
    ++bn5.checked;
    if (B.contains(c)) {
      bn5.holds = false;
      bn5.detail = "n_" + std::to_string(i + 1) + " normalizes B";
    }
  }
  if (bn5.holds) bn5.detail = "n_i x_{α_i}(1) n_i^{-1} is lower triangular";
  rep.axioms.push_back(bn5);

  // split: B = U ⋊ T
  AxiomCheck split{"split", true, 0, ""};
  std::size_t ut = 0;
  for (std::size_t i = 0; i < T.order(); ++i) ut += U.index.count(T.elements[i]);
  split.holds = ut == 1 && U.order() * T.order() == B.order();
  std::vector<SmallMatrix> bgens = detail::concat(s.positive, s.torus);
  for (const auto& b : bgens) {
    SmallMatrix bi = inverse(f, b);
    for (std::size_t i = 0; i < U.order(); ++i) {
      ++split.checked;
      split.holds = split.holds && U.contains(multiply(f, multiply(f, b, U.at(i)), bi));
    }
  }
  split.detail = "|U|·|T| = " + std::to_string(U.order() * T.order());
  rep.axioms.push_back(split);

  // saturated: the intersection of all conjugates n^{-1} B n is B ∩ N
  AxiomCheck sat{"saturated", true, 0, ""};
  std::vector<SmallMatrix> ns, nis;
  for (std::size_t j = 0; j < N.order(); ++j) {
    ns.push_back(N.at(j));
    nis.push_back(inverse(f, ns.back()));
  }
  std::size_t core = 0;
  for (std::size_t i = 0; i < B.order(); ++i) {
    SmallMatrix b = B.at(i);
    bool in_all = true;
    for (std::size_t j = 0; j < ns.size() && in_all; ++j) in_all = detail::is_upper_triangular(multiply(f, multiply(f, nis[j], b), ns[j]));
    ++sat.checked;
    if (in_all) {
      ++core;
      sat.holds = sat.holds && T.contains(b);
    }
  }
  sat.holds = sat.holds && core == T.order();
  sat.detail = "|core| = " + std::to_string(core);
  rep.axioms.push_back(sat);
  return rep;
}

// ---------------------------------------------------------------------------
// Sampled instance over the carpet E(C2, (F, F^2)), F = F2(x1)

/// Short roots carry F, long roots carry F^2.
inline Carpet mixed_rational_carpet(const FieldPtr& f) {
  return Carpet(RootSystem::build(RootType::C, 2), KModule::subfield(f), KModule::whole_field(f));
}

namespace detail {

/// h_α(t) with t a nonzero element of 𝔄_α; all modules here are fields.
inline Word random_carpet_torus(const Carpet& c, Rng& rng) {
  const RootSystem& rs = c.system();
  Word w{RootType::C, rs.rank(), {}};
  for (const auto& a : rs.simple_roots())
    if (uniform_int(rng, 0, 1)) w.symbols.push_back({SymbolKind::torus, a, nonzero_sparse_element(c.module(a), rng)});
  return w;
}

inline Word random_carpet_unipotent(const Carpet& c, Rng& rng) {
  const RootSystem& rs = c.system();
  Word w{RootType::C, rs.rank(), {}};
  for (const auto& a : rs.positive_roots())
    if (uniform_int(rng, 0, 2)) w.symbols.push_back({SymbolKind::root_elt, a, nonzero_sparse_element(c.module(a), rng)});
  return w;
}

inline Word random_carpet_monomial(const Carpet& c, Rng& rng) {
  const RootSystem& rs = c.system();
  Word w{RootType::C, rs.rank(), {}};
  int len = uniform_int(rng, 0, 4);
  for (int k = 0; k < len; ++k) w.symbols.push_back({SymbolKind::weyl_rep, rs.simple(uniform_int(rng, 0, rs.rank() - 1)), Scalar::one(c.field())});
  Word h = random_carpet_torus(c, rng);
  w.symbols.insert(w.symbols.end(), h.symbols.begin(), h.symbols.end());
  return w;
}

inline Word join(Word a, const Word& b) {
  a.symbols.insert(a.symbols.end(), b.symbols.begin(), b.symbols.end());
  return a;
}

}  // namespace detail

inline BnReport bn_verify_mixed_rational(int samples, std::uint64_t seed) {
  BnReport rep;
  rep.instance = "mixed-rational-sampled";
  auto f = rational_field(2, 1);
  Carpet c = mixed_rational_carpet(f);
  const RootSystem& rs = c.system();
  Rng rng(seed);
  AxiomCheck bn2{"BN2", true, 0, ""}, bn4{"BN4", true, 0, ""}, bn5{"BN5", true, 0, ""};
  for (int k = 0; k < samples; ++k) {
    // BN2: n h n^{-1} stays diagonal and inside the carpet group
    Word n = detail::random_carpet_monomial(c, rng), h = detail::random_carpet_torus(c, rng);
    Matrix nm = word_matrix(n, f);
    Matrix conj = nm * word_matrix(h, f) * sp_inverse(nm);
    ++bn2.checked;
    if (bn2.holds && (!conj.is_diagonal() || carpet_membership({conj, std::nullopt}, c).verdict == Verdict::not_member)) {
      bn2.holds = false;
      bn2.detail = "n = " + word_to_string(n) + "; h = " + word_to_string(h);
    }

    // BN4: the cell of n_i u n is w(n) or s_i w(n)
    int i = uniform_int(rng, 0, rs.rank() - 1);
    Word ni{RootType::C, rs.rank(), {{SymbolKind::weyl_rep, rs.simple(i), Scalar::one(f)}}};
    Word u = detail::random_carpet_unipotent(c, rng);
    Word g = detail::join(detail::join(ni, u), n);
    ++bn4.checked;
    auto verdict = carpet_membership(element_from_word(g, f), c);
    WeylElement wn = weyl_of_monomial(rs, nm);
    bool cell = rs.equal(verdict.form.w, wn) || rs.equal(verdict.form.w, RootSystem::multiply(WeylElement{{i}}, wn));
    if (bn4.holds && (!cell || verdict.verdict == Verdict::not_member)) {
      bn4.holds = false;
      bn4.detail = word_to_string(g);
    }

    // BN5: n_i x_{α_i}(t) n_i^{-1} leaves B
    Scalar t = detail::nonzero_sparse_element(c.module(rs.simple(i)), rng);
    Matrix nim = word_matrix(ni, f);
    Matrix x = nim * gen_matrix(rs.simple(i), t) * sp_inverse(nim);
    ++bn5.checked;
    if (bn5.holds && x.is_upper_triangular()) {
      bn5.holds = false;
      bn5.detail = "i = " + std::to_string(i + 1) + ", t = " + t.to_string();
    }
  }
  for (AxiomCheck* a : {&bn2, &bn4, &bn5}) {
    if (a->holds) a->detail = std::to_string(a->checked) + " samples";
    rep.axioms.push_back(*a);
  }
  rep.counts = {{"samples", static_cast<std::size_t>(samples)}};
  return rep;
}

inline BnReport bn_verify(const std::string& instance, int samples, std::uint64_t seed, std::size_t cap = kDefaultCap) {
  if (instance == "sp4-gf4-exhaustive") return bn_verify_sp4_exhaustive(4, cap);
  if (instance == "mixed-rational-sampled") return bn_verify_mixed_rational(samples, seed);
  throw DomainError("unknown BN instance '" + instance + "'");
}

}  // namespace chevcarpet
