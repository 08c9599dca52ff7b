#pragma once

// Generator words: x[root](t), h[root](t), w[root]; group tag C_l or B_l
// (type B realized through its ψ-image in Sp_2l). Exceptional morphisms φ: C -> B,
// ψ: B -> C.

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matrix.hpp"
#include "random.hpp"

namespace chevcarpet {

enum class SymbolKind { root_elt, torus, weyl_rep };

struct Symbol {
  SymbolKind kind = SymbolKind::root_elt;
  RootVec root;
  Scalar param;  // unused for weyl_rep (w_α(1))
};

struct Word {
  RootType tag = RootType::C;  // C, or B realized via ψ
  int rank = 2;
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
};

inline const RootSystem& system_for(RootType t, int rank) {
  static thread_local std::deque<std::pair<std::pair<RootType, int>, RootSystem>> cache;
  for (const auto& [k, rs] : cache)
    if (k.first == t && k.second == rank) return rs;
  cache.emplace_back(std::make_pair(t, rank), RootSystem::build(t, rank));
  return cache.back().second;
}

inline std::string word_to_string(const Word& w) {
  const RootSystem& rs = system_for(w.tag, w.rank);
  std::string s;
  for (const auto& sym : w.symbols) {
    if (!s.empty()) s += "; ";
    switch (sym.kind) {
      case SymbolKind::root_elt: s += "x[" + rs.to_string(sym.root) + "](" + sym.param.to_string() + ")"; break;
      case SymbolKind::torus: s += "h[" + rs.to_string(sym.root) + "](" + sym.param.to_string() + ")"; break;
      case SymbolKind::weyl_rep: s += "w[" + rs.to_string(sym.root) + "]"; break;
    }
  }
  return s;
}

inline Word parse_word(std::string_view text, RootType tag, int rank, const FieldPtr& f) {
  const RootSystem& rs = system_for(tag, rank);
  Word w{tag, rank, {}};
  std::string s(text);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ';')) ++pos;
  };
  skip();
  while (pos < s.size()) {
    char kind = s[pos];
    if ((kind != 'x' && kind != 'h' && kind != 'w') || pos + 1 >= s.size() || s[pos + 1] != '[')
      throw ParseError("bad word symbol at offset " + std::to_string(pos));
    auto close = s.find(']', pos);
    if (close == std::string::npos) throw ParseError("missing ']' in word");
    Symbol sym;
    sym.root = rs.parse(s.substr(pos + 2, close - pos - 2));
    pos = close + 1;
    if (kind == 'w') {
      sym.kind = SymbolKind::weyl_rep;
      sym.param = Scalar::one(f);
    } else {
      sym.kind = kind == 'x' ? SymbolKind::root_elt : SymbolKind::torus;
      if (pos >= s.size() || s[pos] != '(') throw ParseError("missing '(' in word");
      int depth = 0;
      std::size_t start = pos;
      for (; pos < s.size(); ++pos) {
        if (s[pos] == '(') ++depth;
        if (s[pos] == ')' && --depth == 0) break;
      }
      if (pos >= s.size()) throw ParseError("unbalanced parentheses in word");
      sym.param = parse_scalar(s.substr(start + 1, pos - start - 1), f);
      ++pos;
      if (sym.kind == SymbolKind::torus && sym.param.is_zero()) throw DomainError("torus parameter must be nonzero");
    }
    w.symbols.push_back(std::move(sym));
    skip();
  }
  return w;
}

/// Replaces torus and Weyl symbols by their three-root-element definitions:
/// w_α(t) = x_α(t) x_{-α}(t^{-1}) x_α(t), h_α(t) = w_α(t) w_α(1) (characteristic 2).
inline Word expand_word(const Word& w) {
  Word out{w.tag, w.rank, {}};
  auto push_w = [&](const RootVec& a, const Scalar& t) {
    RootVec na = RootSystem::negate(a);
    out.symbols.push_back({SymbolKind::root_elt, a, t});
    out.symbols.push_back({SymbolKind::root_elt, na, t.inv()});
    out.symbols.push_back({SymbolKind::root_elt, a, t});
  };
  for (const auto& s : w.symbols) {
    switch (s.kind) {
      case SymbolKind::root_elt: out.symbols.push_back(s); break;
      case SymbolKind::weyl_rep: push_w(s.root, Scalar::one(s.param.field())); break;
      case SymbolKind::torus:
        push_w(s.root, s.param);
        push_w(s.root, Scalar::one(s.param.field()));
        break;
    }
  }
  return out;
}

/// ψ on a single B root element: long α -> (α, r); short α -> (2α, r²).
inline Symbol psi_symbol(const RootSystem& b, const Symbol& s) {
  if (b.is_long(s.root)) return {SymbolKind::root_elt, s.root, s.param};
  RootVec two = s.root;
  for (auto& x : two) x *= 2;
  return {SymbolKind::root_elt, two, s.param * s.param};
}

/// φ on a single C root element: long α -> (α/2, r); short α -> (α, r²).
inline Symbol phi_symbol(const RootSystem& c, const Symbol& s) {
  if (c.is_long(s.root)) {
    RootVec half = s.root;
    for (auto& x : half) x /= 2;
    return {SymbolKind::root_elt, half, s.param};
  }
  return {SymbolKind::root_elt, s.root, s.param * s.param};
}

enum class Morphism { phi, psi };

inline Word apply_morphism(Morphism m, const Word& w) {
  if (m == Morphism::phi && w.tag != RootType::C) throw DomainError("φ expects a C_l word");
  if (m == Morphism::psi && w.tag != RootType::B) throw DomainError("ψ expects a B_l word");
  const RootSystem& src = system_for(w.tag, w.rank);
  Word e = expand_word(w);
  Word out{m == Morphism::phi ? RootType::B : RootType::C, w.rank, {}};
  for (const auto& s : e.symbols) out.symbols.push_back(m == Morphism::phi ? phi_symbol(src, s) : psi_symbol(src, s));
  return out;
}

/// Squares every parameter.
inline Word frobenius_word(const Word& w) {
  Word out = w;
  for (auto& s : out.symbols)
    if (s.kind != SymbolKind::weyl_rep) s.param = s.param * s.param;
  return out;
}

/// Matrix of a word in Sp_2l(F). B words are evaluated through ψ.
inline Matrix word_matrix(const Word& w, const FieldPtr& f) {
  Matrix m = Matrix::identity(f, 2 * w.rank);
  if (w.tag == RootType::B) {
    const RootSystem& b = system_for(RootType::B, w.rank);
    for (const auto& s : expand_word(w).symbols) {
      Symbol c = psi_symbol(b, s);
      m = m * gen_matrix(c.root, c.param);
    }
    return m;
  }
  for (const auto& s : w.symbols) {
    switch (s.kind) {
      case SymbolKind::root_elt: m = m * gen_matrix(s.root, s.param); break;
      case SymbolKind::torus: m = m * torus_matrix(s.root, s.param); break;
      case SymbolKind::weyl_rep: m = m * weyl_matrix(s.root, Scalar::one(f)); break;
    }
  }
  return m;
}

/// A matrix together with the word it was built from.
struct GroupElement {
  Matrix matrix;
  std::optional<Word> provenance;
};

inline GroupElement element_from_word(const Word& w, const FieldPtr& f) { return {word_matrix(w, f), w}; }

/// Random word of root elements (and occasionally torus / Weyl symbols).
inline Word random_word(RootType tag, int rank, const FieldPtr& f, Rng& rng, int max_len, bool torus_and_weyl = true,
                        int max_deg = 1) {
  const RootSystem& rs = system_for(tag, rank);
  Word w{tag, rank, {}};
  int len = uniform_int(rng, 0, max_len);
  const auto& roots = rs.roots();
  for (int k = 0; k < len; ++k) {
    const RootVec& a = roots[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(roots.size()) - 1))];
    int kind = torus_and_weyl ? uniform_int(rng, 0, 9) : 0;
    if (kind == 9) {
      w.symbols.push_back({SymbolKind::weyl_rep, a, Scalar::one(f)});
    } else if (kind == 8) {
      w.symbols.push_back({SymbolKind::torus, a, random_nonzero_scalar(f, rng, false, max_deg)});
    } else {
      w.symbols.push_back({SymbolKind::root_elt, a, random_scalar(f, rng, false, max_deg)});
    }
  }
  return w;
}

}  // namespace chevcarpet
