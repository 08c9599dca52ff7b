#pragma once

// Admissible pairs (Λ_l, Λ_s), the carpets they define and the carpet conditions
// C_{ij,αβ} 𝔄_α^i 𝔄_β^j ⊆ 𝔄_{iα+jβ}. Notation in reports: P = Λ_s, Q = Λ_l.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kmodules.hpp"
#include "roots.hpp"

namespace chevcarpet {

struct AdmissiblePair {
  KModule lambda_long;
  KModule lambda_short;
  RootType type = RootType::C;
  int rank = 2;
  int p = 2;  // maximal structure constant: 2 for B, C, F4; 3 for G2
};

inline int max_structure_constant(RootType t) { return t == RootType::G2 ? 3 : 2; }

struct AxiomVerdict {
  std::string axiom;
  bool holds = true;
  bool required = true;  // false when the axiom is waived for the type
  std::optional<Scalar> witness;
};

struct AdmissibilityReport {
  std::vector<AxiomVerdict> axioms;
  bool admissible() const {
    for (const auto& a : axioms)
      if (a.required && !a.holds) return false;
    return true;
  }
};

/// AP1–AP4, plus Λ_l Λ_s ⊆ Λ_s (the carpet condition for α long, β short with
/// α+β short; without it the Q-field pair of the counterexample suite would pass).
inline AdmissibilityReport check_admissible(const AdmissiblePair& pr) {
  const KModule& L = pr.lambda_long;
  const KModule& S = pr.lambda_short;
  check_compatible(L, S);
  AdmissibilityReport rep;
  {
    AxiomVerdict v{"AP1", true, true, std::nullopt};
    auto a = module_subset(scaled_module(S, pr.p), L);
    auto b = module_subset(L, S);
    v.holds = a.holds && b.holds;
    v.witness = !a.holds ? a.witness : b.witness;
    rep.axioms.push_back(v);
  }
  {
    AxiomVerdict v{"AP2", true, true, std::nullopt};
    auto r = module_subset(power_product_span(S, pr.p, L, 1, 1), L);
    v.holds = r.holds;
    v.witness = r.witness;
    rep.axioms.push_back(v);
  }
  bool rank2 = (pr.type == RootType::B || pr.type == RootType::C) && pr.rank == 2;
  auto subring = [](const KModule& m, const char* name, bool required) {
    AxiomVerdict v{name, true, true, std::nullopt};
    v.required = required;
    if (!m.contains(Scalar::one(m.field()))) {
      v.holds = false;
      v.witness = Scalar::one(m.field());
      return v;
    }
    auto r = is_multiplicatively_closed(m);
    v.holds = r.holds;
    v.witness = r.witness;
    return v;
  };
  rep.axioms.push_back(subring(S, "AP3", pr.type != RootType::B && !rank2));
  rep.axioms.push_back(subring(L, "AP4", pr.type != RootType::C && !rank2));
  {
    AxiomVerdict v{"LS<=S", true, true, std::nullopt};
    auto r = module_subset(power_product_span(L, 1, S, 1, 1), S);
    v.holds = r.holds;
    v.witness = r.witness;
    rep.axioms.push_back(v);
  }
  return rep;
}

class Carpet {
 public:
  Carpet(RootSystem rs, KModule lambda_long, KModule lambda_short)
      : rs_(std::move(rs)), long_(std::move(lambda_long)), short_(std::move(lambda_short)) {
    check_compatible(long_, short_);
  }

  const RootSystem& system() const { return rs_; }
  const KModule& lambda_long() const { return long_; }
  const KModule& lambda_short() const { return short_; }
  const FieldPtr& field() const { return long_.field(); }

  const KModule& module(const RootVec& a) const { return rs_.is_long(a) ? long_ : short_; }

 private:
  RootSystem rs_;
  KModule long_, short_;
};

inline Carpet carpet_from_pair(const AdmissiblePair& pr) {
  return Carpet(RootSystem::build(pr.type, pr.rank), pr.lambda_long, pr.lambda_short);
}

struct CarpetCondition {
  RootVec alpha, beta;
  int i = 1, j = 1;
  int constant = 0;       // |C_{ij,αβ}| mod p
  std::string condition;  // e.g. "P^2Q ⊆ Q"
  bool holds = true;
  std::optional<Scalar> witness;
};

struct CarpetReport {
  std::vector<CarpetCondition> conditions;  // ordered by (α, β, i, j)
  bool holds() const {
    for (const auto& c : conditions)
      if (!c.holds) return false;
    return true;
  }
  const CarpetCondition* first_failure() const {
    for (const auto& c : conditions)
      if (!c.holds) return &c;
    return nullptr;
  }
  /// One entry per distinct condition text, first occurrence wins.
  std::vector<CarpetCondition> distinct() const {
    std::vector<CarpetCondition> out;
    for (const auto& c : conditions) {
      bool seen = false;
      for (const auto& o : out) seen |= o.condition == c.condition;
      if (!seen) out.push_back(c);
    }
    return out;
  }
};

namespace detail {

inline std::string power_name(char letter, int e) {
  std::string s(1, letter);
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

inline std::string condition_text(bool a_long, int i, bool b_long, int j, int c, bool t_long) {
  char la = a_long ? 'Q' : 'P', lb = b_long ? 'Q' : 'P';
  // P factors first, then Q; equal letters merge
  std::string prod;
  if (la == lb) {
    prod = i == j ? power_name(la, i) + power_name(lb, j) : power_name(la, std::max(i, j)) + power_name(lb, std::min(i, j));
  } else if (la == 'P') {
    prod = power_name(la, i) + power_name(lb, j);
  } else {
    prod = power_name(lb, j) + power_name(la, i);
  }
  std::string s = c > 1 ? std::to_string(c) : "";
  return s + prod + " ⊆ " + (t_long ? "Q" : "P");
}

}  // namespace detail

/// Checks every ordered pair α ≠ ±β and every (i, j) with iα+jβ ∈ Φ. Identical
/// (length classes, i, j, constant) conditions are decided once.
inline CarpetReport check_carpet(const Carpet& carpet) {
  const auto& rs = carpet.system();
  const int p = carpet.field()->p;
  CarpetReport rep;
  using Key = std::tuple<bool, bool, int, int, int, bool>;
  std::map<Key, std::pair<bool, std::optional<Scalar>>> cache;
  for (const auto& a : rs.roots())
    for (const auto& b : rs.roots()) {
      if (a == b || a == RootSystem::negate(b)) continue;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          RootVec t = RootSystem::add(a, b, i, j);
          if (!rs.is_root(t)) continue;
          CarpetCondition cc;
          cc.alpha = a;
          cc.beta = b;
          cc.i = i;
          cc.j = j;
          int mag = rs.structure_constant_magnitude(a, b, i, j);
          cc.constant = mag % p;
          cc.condition = detail::condition_text(rs.is_long(a), i, rs.is_long(b), j, mag, rs.is_long(t));
          Key key{rs.is_long(a), rs.is_long(b), i, j, cc.constant, rs.is_long(t)};
          auto it = cache.find(key);
          if (it == cache.end()) {
            std::pair<bool, std::optional<Scalar>> verdict{true, std::nullopt};
            if (cc.constant != 0) {
              const KModule& A = carpet.module(a);
              const KModule& B = carpet.module(b);
              const KModule& T = carpet.module(t);
              for (const auto& term : power_product_terms(A, i, B, j, cc.constant)) {
                if (!T.contains(term.value)) {
                  verdict = {false, term.value};
                  break;
                }
              }
            }
            it = cache.emplace(key, verdict).first;
          }
          cc.holds = it->second.first;
          cc.witness = it->second.second;
          rep.conditions.push_back(std::move(cc));
        }
    }
  return rep;
}

struct ChainVerdict {
  bool holds = true;
  std::string failed;  // which link failed
  std::optional<Scalar> witness;
};

/// K ⊆ P^p ⊆ Q ⊆ P.
inline ChainVerdict check_inclusion_chain(const KModule& P, const KModule& Q, int p) {
  check_compatible(P, Q);
  const auto& f = P.field();
  KModule K = KModule::subfield(f, P.power());
  KModule Pp = power_product_span(P, p, K, 1, 1);
  if (auto r = module_subset(K, Pp); !r.holds) return {false, "K ⊆ P^p", r.witness};
  if (auto r = module_subset(Pp, Q); !r.holds) return {false, "P^p ⊆ Q", r.witness};
  if (auto r = module_subset(Q, P); !r.holds) return {false, "Q ⊆ P", r.witness};
  return {};
}

// ---------------------------------------------------------------------------
// Non-field carpets, and two pairs satisfying the inclusion chain that are not carpets, over F2(x1..xn)

struct SuiteItem {
  std::string name;
  std::string expectation;
  bool passed = false;
  std::string detail;
  std::optional<Scalar> witness;
};

struct SuiteReport {
  int n = 4;
  std::vector<SuiteItem> items;
  bool passed() const {
    for (const auto& i : items)
      if (!i.passed) return false;
    return true;
  }
};

namespace detail {

inline Scalar monomial_of(const FieldPtr& f, std::initializer_list<int> vars) {
  Monomial m;
  for (int v : vars) {
    m.e[v - 1] += 1;
    m.deg += 1;
  }
  return Scalar::from_poly(f, MultiPoly::monomial(f->p, m));
}

}  // namespace detail

/// P = Λ_s and Q = Λ_l for the pairs below.
struct SuitePairs {
  FieldPtr field;
  KModule K;
  KModule bl_P, bl_Q;            // carpet, B_l
  KModule cl_P, cl_Q;            // carpet, C_l
  KModule b2_P, b2_Q;            // carpet, B_2 = C_2
  KModule first_P, first_Q;      // not a carpet, Q a field
  FieldPtr field4;               // same field, modules over fourth powers
  KModule second_P, second_Q;    // not a carpet, P a field
};

inline SuitePairs build_suite_pairs(int n) {
  if (n < 4) throw DomainError("the B2 = C2 construction needs n >= 4");
  SuitePairs s;
  auto f = rational_field(2, n);
  s.field = f;
  auto mono = [&](std::initializer_list<int> v) { return detail::monomial_of(f, v); };
  Scalar one = Scalar::one(f);
  s.K = KModule::subfield(f);
  s.bl_Q = s.K;
  s.bl_P = KModule::span(f, {one, mono({1}), mono({2})});
  s.cl_P = KModule::whole_field(f);
  s.cl_Q = KModule::span(f, {one, mono({1}), mono({2})});
  s.b2_P = KModule::span(f, {one, mono({1}), mono({2}), mono({3}), mono({4}), mono({1, 2}), mono({1, 3}),
                             mono({1, 4}), mono({2, 3}), mono({2, 4}), mono({1, 2, 3}), mono({1, 2, 4})});
  s.b2_Q = KModule::span(f, {one, mono({1}), mono({2})});
  std::vector<Scalar> gens{one};
  for (int v = 1; v <= n; ++v) gens.push_back(mono({v}));
  s.first_P = KModule::span(f, gens);
  s.first_Q = KModule::span(f, {one, mono({1})});
  s.field4 = f;
  s.second_P = KModule::whole_field(f, 4);
  KModule P2 = power_product_span(s.second_P, 2, KModule::subfield(f, 4), 1, 1);
  s.second_Q = module_sum(P2, KModule::span(f, 4, {mono({1}), mono({2})}));
  return s;
}

inline SuiteReport counterexample_suite(int n = 4) {
  SuitePairs s = build_suite_pairs(n);
  SuiteReport rep;
  rep.n = n;
  auto add = [&](std::string name, std::string expectation, bool ok, std::string detail,
                 std::optional<Scalar> w = std::nullopt) {
    rep.items.push_back({std::move(name), std::move(expectation), ok, std::move(detail), std::move(w)});
  };
  auto dims = [](const KModule& P, const KModule& Q) {
    return "dim P = " + std::to_string(P.dim()) + ", dim Q = " + std::to_string(Q.dim());
  };
  auto admissible_carpet = [&](const std::string& name, RootType t, int l, const KModule& P, const KModule& Q) {
    AdmissiblePair pr{Q, P, t, l, 2};
    bool adm = check_admissible(pr).admissible();
    auto car = check_carpet(carpet_from_pair(pr));
    bool chain = check_inclusion_chain(P, Q, 2).holds;
    add(name, "admissible carpet", adm && car.holds() && chain,
        std::string(adm ? "admissible" : "not admissible") + ", carpet " + (car.holds() ? "holds" : "fails") +
            ", chain " + (chain ? "holds" : "fails") + ", " + dims(P, Q));
  };

  admissible_carpet("B3 carpet: admissible", RootType::B, 3, s.bl_P, s.bl_Q);
  {
    auto c = is_multiplicatively_closed(s.bl_P);
    add("B3 carpet: P not a field", "P not multiplicatively closed, dim 3", !c.holds && s.bl_P.dim() == 3,
        dims(s.bl_P, s.bl_Q), c.witness);
    auto inv = inverse_closure_check(s.bl_Q, 50, 0);
    add("B3 carpet: Q = K inverse-closed", "Q^{-1} = Q", inv.holds, "50 samples");
  }
  admissible_carpet("C3 carpet: admissible", RootType::C, 3, s.cl_P, s.cl_Q);
  {
    auto c = is_multiplicatively_closed(s.cl_Q);
    add("C3 carpet: Q not a field", "Q not multiplicatively closed, dim 3", !c.holds && s.cl_Q.dim() == 3,
        dims(s.cl_P, s.cl_Q), c.witness);
  }
  admissible_carpet("rank-2 carpet: admissible as B2", RootType::B, 2, s.b2_P, s.b2_Q);
  admissible_carpet("rank-2 carpet: admissible as C2", RootType::C, 2, s.b2_P, s.b2_Q);
  {
    auto cp = is_multiplicatively_closed(s.b2_P);
    auto cq = is_multiplicatively_closed(s.b2_Q);
    add("rank-2 carpet: neither P nor Q a field", "dim P = 12, dim Q = 3, neither closed",
        !cp.holds && !cq.holds && s.b2_P.dim() == 12 && s.b2_Q.dim() == 3, dims(s.b2_P, s.b2_Q), cp.witness);
    auto pq = module_subset(power_product_span(s.b2_P, 1, s.b2_Q, 1, 1), s.b2_P);
    auto ppq = module_subset(power_product_span(s.b2_P, 2, s.b2_Q, 1, 1), s.b2_Q);
    add("rank-2 carpet: PQ ⊆ P and P^2Q ⊆ Q", "both inclusions hold", pq.holds && ppq.holds, "");
  }
  {
    auto qf = is_multiplicatively_closed(s.first_Q);
    auto chain = check_inclusion_chain(s.first_P, s.first_Q, 2);
    add("Q-field pair: Q a field, chain holds", "Q closed, K ⊆ P^2 ⊆ Q ⊆ P", qf.holds && chain.holds, chain.failed);
    auto pq = module_subset(power_product_span(s.first_P, 1, s.first_Q, 1, 1), s.first_P);
    bool wit = !pq.holds && pq.witness && pq.witness->to_string() == "x1*x2";
    add("Q-field pair: PQ ⊄ P", "witness x1*x2", wit, pq.witness ? "witness " + pq.witness->to_string() : "holds",
        pq.witness);
    AdmissiblePair pr{s.first_Q, s.first_P, RootType::B, 3, 2};
    auto car = check_carpet(carpet_from_pair(pr));
    auto* ff = car.first_failure();
    bool ok = !check_admissible(pr).admissible() && ff && ff->condition == "PQ ⊆ P" && ff->witness &&
              ff->witness->to_string() == "x1*x2";
    add("Q-field pair: not a B3 carpet", "fails PQ ⊆ P at x1*x2", ok,
        ff ? ff->condition + " fails, witness " + ff->witness->to_string() : "carpet holds",
        ff ? ff->witness : std::nullopt);
  }
  {
    auto pf = is_multiplicatively_closed(s.second_P);
    auto chain = check_inclusion_chain(s.second_P, s.second_Q, 2);
    add("P-field pair: P a field, chain holds", "P closed, K ⊆ P^2 ⊆ Q ⊆ P", pf.holds && chain.holds, chain.failed);
    auto ppq = module_subset(power_product_span(s.second_P, 2, s.second_Q, 1, 1), s.second_Q);
    bool wit = !ppq.holds && ppq.witness && ppq.witness->to_string() == "x1^3";
    add("P-field pair: P^2Q ⊄ Q", "witness x1^3", wit, ppq.witness ? "witness " + ppq.witness->to_string() : "holds",
        ppq.witness);
    AdmissiblePair pr{s.second_Q, s.second_P, RootType::C, 2, 2};
    auto car = check_carpet(carpet_from_pair(pr));
    auto* ff = car.first_failure();
    bool ok = !check_admissible(pr).admissible() && ff && ff->condition == "P^2Q ⊆ Q" && ff->witness &&
              ff->witness->to_string() == "x1^3";
    add("P-field pair: not a C2 carpet", "fails P^2Q ⊆ Q at x1^3", ok,
        ff ? ff->condition + " fails, witness " + ff->witness->to_string() : "carpet holds",
        ff ? ff->witness : std::nullopt);
  }
  return rep;
}

}  // namespace chevcarpet
