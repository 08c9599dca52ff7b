#pragma once

// Root systems B_l, C_l, F4, G2 in integer coordinates.
//   B_l: ±e_i (short), ±e_i±e_j (long)        simple e_i-e_{i+1}, e_l
//   C_l: ±e_i±e_j (short), ±2e_i (long)       simple e_i-e_{i+1}, 2e_l
//   F4 : doubled, so ½(±e1±e2±e3±e4) becomes (±1,±1,±1,±1)
//   G2 : sum-zero vectors in Z^3; simple e1-e2 (short), -2e1+e2+e3 (long)

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalars.hpp"

namespace chevcarpet {

enum class RootType { B, C, F4, G2 };

inline char type_letter(RootType t) {
  switch (t) {
    case RootType::B: return 'B';
    case RootType::C: return 'C';
    case RootType::F4: return 'F';
    case RootType::G2: return 'G';
  }
  return '?';
}

inline RootType parse_root_type(std::string_view s) {
  if (s == "B") return RootType::B;
  if (s == "C") return RootType::C;
  if (s == "F4" || s == "F") return RootType::F4;
  if (s == "G2" || s == "G") return RootType::G2;
  throw ParseError("unknown root system type '" + std::string(s) + "'");
}

using RootVec = std::vector<int>;

/// A root together with its system tag and length class.
struct RootDatum {
  RootVec coords;
  RootType type;
  bool is_long;
};

/// Element of the Weyl group as a word in simple reflections (0-based indices).
/// w = s_{word[0]} s_{word[1]} ..., acting on the right-most letter first.
struct WeylElement {
  std::vector<int> word;
};

class RootSystem {
 public:
  RootSystem() = default;

  static RootSystem build(RootType type, int rank = 0) {
    RootSystem rs;
    rs.type_ = type;
    switch (type) {
      case RootType::B:
      case RootType::C: {
        if (rank < 2) throw DomainError("rank must be at least 2");
        if (rank > 8) throw DomainError("rank too large");
        rs.rank_ = rs.dim_ = rank;
        const int l = rank;
        auto e = [l](int i) {
          RootVec v(l, 0);
          v[i] = 1;
          return v;
        };
        for (int i = 0; i < l; ++i)
          for (int s : {1, -1}) {
            RootVec v = e(i);
            v[i] = s * (type == RootType::C ? 2 : 1);
            rs.roots_.push_back(v);
          }
        for (int i = 0; i < l; ++i)
          for (int j = i + 1; j < l; ++j)
            for (int si : {1, -1})
              for (int sj : {1, -1}) {
                RootVec v(l, 0);
                v[i] = si;
                v[j] = sj;
                rs.roots_.push_back(v);
              }
        for (int i = 0; i + 1 < l; ++i) {
          RootVec v(l, 0);
          v[i] = 1;
          v[i + 1] = -1;
          rs.simple_.push_back(v);
        }
        RootVec last(l, 0);
        last[l - 1] = type == RootType::C ? 2 : 1;
        rs.simple_.push_back(last);
        break;
      }
      case RootType::F4: {
        if (rank != 0 && rank != 4) throw DomainError("F4 has rank 4");
        rs.rank_ = rs.dim_ = 4;
        rs.scale_ = 2;
        for (int i = 0; i < 4; ++i)
          for (int s : {2, -2}) {
            RootVec v(4, 0);
            v[i] = s;
            rs.roots_.push_back(v);
          }
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            for (int si : {2, -2})
              for (int sj : {2, -2}) {
                RootVec v(4, 0);
                v[i] = si;
                v[j] = sj;
                rs.roots_.push_back(v);
              }
        for (int mask = 0; mask < 16; ++mask) {
          RootVec v(4);
          for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
          rs.roots_.push_back(v);
        }
        rs.simple_ = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
        break;
      }
      case RootType::G2: {
        if (rank != 0 && rank != 2) throw DomainError("G2 has rank 2");
        rs.rank_ = 2;
        rs.dim_ = 3;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            RootVec v(3, 0);
            v[i] = 1;
            v[j] = -1;
            rs.roots_.push_back(v);
          }
        for (int i = 0; i < 3; ++i)
          for (int s : {1, -1}) {
            RootVec v(3, -s);
            v[i] = 2 * s;
            rs.roots_.push_back(v);
          }
        rs.simple_ = {{1, -1, 0}, {-2, 1, 1}};
        break;
      }
    }
    rs.finish();
    return rs;
  }

  RootType type() const { return type_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  /// Coordinates are `scale` times the natural coordinates (2 for F4).
  int scale() const { return scale_; }
  std::string name() const {
    switch (type_) {
      case RootType::F4: return "F4";
      case RootType::G2: return "G2";
      default: return std::string(1, type_letter(type_)) + std::to_string(rank_);
    }
  }

  const std::vector<RootVec>& roots() const { return roots_; }
  const std::vector<RootVec>& simple_roots() const { return simple_; }
  const RootVec& simple(int i) const { return simple_.at(static_cast<std::size_t>(i)); }
  /// Positive roots, height ascending, ties by coordinates lexicographically descending.
  const std::vector<RootVec>& positive_roots() const { return positive_; }

  bool is_root(const RootVec& v) const { return index_.count(v) > 0; }
  bool is_positive(const RootVec& v) const { return height_.count(v) > 0; }
  int height(const RootVec& v) const {
    auto it = height_.find(v);
    if (it != height_.end()) return it->second;
    auto jt = height_.find(negate(v));
    if (jt != height_.end()) return -jt->second;
    throw DomainError("not a root");
  }

  /// Coefficients of a root in the basis of simple roots.
  const std::vector<int>& simple_coefficients(const RootVec& v) const {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) throw DomainError("not a root");
    return it->second;
  }

  int inner(const RootVec& a, const RootVec& b) const {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0);
  }
  bool is_long(const RootVec& v) const { return inner(v, v) == long_norm_; }
  bool is_short(const RootVec& v) const { return !is_long(v); }
  int long_norm() const { return long_norm_; }

  RootDatum datum(const RootVec& v) const {
    if (!is_root(v)) throw DomainError("not a root");
    return {v, type_, is_long(v)};
  }

  /// 2(a,b)/(b,b).
  int pairing(const RootVec& a, const RootVec& b) const { return 2 * inner(a, b) / inner(b, b); }

  static RootVec negate(const RootVec& v) {
    RootVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
  }

  static RootVec add(const RootVec& a, const RootVec& b, int i = 1, int j = 1) {
    RootVec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = i * a[k] + j * b[k];
    return r;
  }

  /// s_a(v) = v - pairing(v, a) a.
  RootVec reflect(const RootVec& a, const RootVec& v) const {
    int m = pairing(v, a);
    return add(v, a, 1, -m);
  }

  /// Largest r >= 0 with b - r a a root (b a root, a != ±b).
  int string_down(const RootVec& a, const RootVec& b) const {
    int r = 0;
    while (is_root(add(b, a, 1, -(r + 1)))) ++r;
    return r;
  }

  /// |N_{a,b}| = r + 1 when a + b is a root.
  int n_magnitude(const RootVec& a, const RootVec& b) const {
    if (!is_root(add(a, b))) return 0;
    return string_down(a, b) + 1;
  }

  /// |M_{a,b,i}| = (1/i!) prod_{k<i} |N_{a, b+k a}|.
  int m_magnitude(const RootVec& a, const RootVec& b, int i) const {
    long long prod = 1, fact = 1;
    for (int k = 0; k < i; ++k) {
      int n = n_magnitude(a, add(b, a, 1, k));
      if (n == 0) return 0;
      prod *= n;
      fact *= (k + 1);
    }
    return static_cast<int>(prod / fact);
  }

  /// |C_{ij,ab}| in the Chevalley commutator formula
  /// [x_a(t), x_b(u)] = prod x_{ia+jb}(C_{ij,ab} t^i u^j); 0 when ia+jb is not a root.
  int structure_constant_magnitude(const RootVec& a, const RootVec& b, int i, int j) const {
    if (i < 1 || j < 1) return 0;
    if (a == b || a == negate(b)) return 0;
    if (!is_root(add(a, b, i, j))) return 0;
    if (j == 1) return m_magnitude(a, b, i);
    if (i == 1) return m_magnitude(b, a, j);
    if (i == 3 && j == 2) return m_magnitude(add(a, b), a, 2) / 3;
    if (i == 2 && j == 3) return 2 * m_magnitude(add(a, b), b, 2) / 3;
    return 0;
  }

  // --- Weyl group -------------------------------------------------------

  RootVec apply(const WeylElement& w, const RootVec& v) const {
    RootVec r = v;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) r = reflect(simple_[*it], r);
    return r;
  }

  static WeylElement inverse(const WeylElement& w) { return {std::vector<int>(w.word.rbegin(), w.word.rend())}; }

  static WeylElement multiply(const WeylElement& a, const WeylElement& b) {
    WeylElement r = a;
    r.word.insert(r.word.end(), b.word.begin(), b.word.end());
    return r;
  }

  bool equal(const WeylElement& a, const WeylElement& b) const {
    for (const auto& s : simple_)
      if (apply(a, s) != apply(b, s)) return false;
    return true;
  }

  /// Φ_w⁺ = {a > 0 : w(a) < 0}, in positive-root order.
  std::vector<RootVec> inversion_set(const WeylElement& w) const {
    std::vector<RootVec> out;
    for (const auto& a : positive_)
      if (!is_positive(apply(w, a))) out.push_back(a);
    return out;
  }

  int length(const WeylElement& w) const { return static_cast<int>(inversion_set(w).size()); }

  /// Lexicographically minimal reduced word: repeatedly strip the smallest left descent.
  WeylElement reduced(const WeylElement& w) const {
    WeylElement cur = w, out;
    for (;;) {
      WeylElement inv = inverse(cur);
      int found = -1;
      for (int i = 0; i < rank_ && found < 0; ++i)
        if (!is_positive(apply(inv, simple_[i]))) found = i;
      if (found < 0) break;
      out.word.push_back(found);
      cur = multiply(WeylElement{{found}}, cur);
    }
    return out;
  }

  /// Longest element as a reduced word.
  WeylElement longest() const {
    WeylElement w;
    // greedily extend by right descents' complement until all positives are inverted
    while (length(w) < static_cast<int>(positive_.size())) {
      for (int i = 0; i < rank_; ++i) {
        WeylElement t = multiply(w, WeylElement{{i}});
        if (length(t) > length(w)) {
          w = t;
          break;
        }
      }
    }
    return reduced(w);
  }

  std::string word_string(const WeylElement& w) const {
    if (w.word.empty()) return "1";
    std::string s;
    for (int i : w.word) {
      if (!s.empty()) s += " ";
      s += "s" + std::to_string(i + 1);
    }
    return s;
  }

  WeylElement parse_word(std::string_view text) const {
    WeylElement w;
    std::string tok;
    auto flush = [&] {
      if (tok.empty() || tok == "1") {
        tok.clear();
        return;
      }
      if (tok[0] != 's') throw ParseError("bad Weyl word token '" + tok + "'");
      int i = 0;
      try {
        i = std::stoi(tok.substr(1));
      } catch (...) {
        throw ParseError("bad Weyl word token '" + tok + "'");
      }
      if (i < 1 || i > rank_) throw ParseError("simple reflection out of range: " + tok);
      w.word.push_back(i - 1);
      tok.clear();
    };
    for (char c : text) {
      if (c == ' ' || c == '*' || c == ',') {
        flush();
      } else {
        tok += c;
      }
    }
    flush();
    return w;
  }

  // --- text -------------------------------------------------------------

  std::string to_string(const RootVec& v) const {
    std::string s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      int c = v[i];
      if (c == 0) continue;
      std::string mag;
      int a = std::abs(c);
      if (scale_ == 2 && a % 2 == 1)
        mag = (a == 1 ? "1/2" : std::to_string(a) + "/2");
      else if (a / scale_ != 1)
        mag = std::to_string(a / scale_);
      if (c < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      s += mag + "e" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
  }

  /// Parses "e1-e2", "2e1", "-e1", "e1+e2"; F4 also accepts "1/2e1-1/2e2-...".
  RootVec parse(std::string_view text) const {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    RootVec v(dim_, 0);
    std::size_t pos = 0;
    auto fail = [&]() -> RootVec { throw ParseError("cannot parse root '" + std::string(text) + "' in " + name()); };
    if (s.empty()) fail();
    while (pos < s.size()) {
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
      }
      int num = 1, den = 1;
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos > start) num = std::stoi(s.substr(start, pos - start));
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail();
        den = std::stoi(s.substr(start, pos - start));
      }
      if (pos >= s.size() || s[pos] != 'e') fail();
      ++pos;
      start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail();
      int idx = std::stoi(s.substr(start, pos - start));
      if (idx < 1 || idx > dim_) fail();
      if ((num * scale_) % den != 0) fail();
      v[idx - 1] += sign * num * scale_ / den;
    }
    if (!is_root(v)) throw ParseError("'" + std::string(text) + "' is not a root of " + name());
    return v;
  }

 private:
  void finish() {
    for (std::size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = static_cast<int>(i);
    long_norm_ = 0;
    for (const auto& r : roots_) long_norm_ = std::max(long_norm_, inner(r, r));
    // positive roots by closure from the simple roots
    std::vector<RootVec> layer = simple_;
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> c(rank_, 0);
      c[i] = 1;
      coeffs_[simple_[i]] = c;
      height_[simple_[i]] = 1;
    }
    int h = 1;
    while (!layer.empty()) {
      std::vector<RootVec> next;
      for (const auto& r : layer)
        for (int i = 0; i < rank_; ++i) {
          RootVec s = add(r, simple_[i]);
          if (!is_root(s) || height_.count(s)) continue;
          height_[s] = h + 1;
          auto c = coeffs_[r];
          c[i] += 1;
          coeffs_[s] = c;
          next.push_back(s);
        }
      layer = std::move(next);
      ++h;
    }
    for (const auto& [r, hh] : height_) {
      positive_.push_back(r);
      auto c = coeffs_[r];
      for (auto& x : c) x = -x;
      coeffs_[negate(r)] = c;
    }
    std::sort(positive_.begin(), positive_.end(), [this](const RootVec& a, const RootVec& b) {
      int ha = height_.at(a), hb = height_.at(b);
      if (ha != hb) return ha < hb;
      return a > b;
    });
    if (positive_.size() * 2 != roots_.size()) throw DomainError("internal: positive system incomplete");
  }

  RootType type_ = RootType::C;
  int rank_ = 0, dim_ = 0, scale_ = 1, long_norm_ = 0;
  std::vector<RootVec> roots_, simple_, positive_;
  std::map<RootVec, int> index_;
  std::map<RootVec, int> height_;
  std::map<RootVec, std::vector<int>> coeffs_;
};

inline int pairing(const RootSystem& rs, const RootVec& a, const RootVec& b) { return rs.pairing(a, b); }

/// Commuting-root search for Δ ⊆ Φ⁺ (B_l: long, strict α+γ ∉ Φ; C_l: short, with
/// "commuting" meaning every constant C_{ij,αγ} with iα+jγ ∈ Φ is even).
/// Returns (α, β) with β ∈ Δ, (α,β) ≠ 0. Candidates are tried highest height first.
struct CommutingRoot {
  RootVec alpha, beta;
};

inline bool commutes_with_all(const RootSystem& rs, const RootVec& a, const std::vector<RootVec>& delta, bool char2) {
  for (const auto& g : delta) {
    if (a == g) continue;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        if (!rs.is_root(RootSystem::add(a, g, i, j))) continue;
        if (!char2) return false;
        if (rs.structure_constant_magnitude(a, g, i, j) % 2 != 0) return false;
      }
  }
  return true;
}

inline std::optional<CommutingRoot> find_commuting_root(const RootSystem& rs, const std::vector<RootVec>& delta) {
  if (delta.empty()) throw DomainError("empty root set");
  if (rs.type() != RootType::B && rs.type() != RootType::C) throw DomainError("commuting-root search needs B_l or C_l");
  for (const auto& d : delta)
    if (!rs.is_positive(d)) throw DomainError("root set must be positive");
  bool want_long = rs.type() == RootType::B;
  bool char2 = rs.type() == RootType::C;
  const auto& pos = rs.positive_roots();
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    const RootVec& a = *it;
    if (rs.is_long(a) != want_long) continue;
    if (!commutes_with_all(rs, a, delta, char2)) continue;
    for (const auto& b : delta)
      if (rs.inner(a, b) != 0) return CommutingRoot{a, b};
  }
  return std::nullopt;
}

}  // namespace chevcarpet
