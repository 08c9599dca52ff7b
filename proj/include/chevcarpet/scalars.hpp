#pragma once

// Exact arithmetic in GF(2), GF(4), GF(3), GF(9) and in rational-function
// fields F_p(x1..xn), p in {2,3}, n <= 6.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chevcarpet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalars, roots, words, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Mathematically invalid request: zero inversion, descriptor mismatch, bad rank.
class DomainError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxVars = 6;
inline constexpr std::uint32_t kDegreeCap = 1u << 20;

enum class FieldKind { finite, rational };

/// Which field a Scalar lives in. Scalars only interoperate under equal descriptors.
struct FieldDescriptor {
  int p = 2;
  FieldKind kind = FieldKind::rational;
  int k = 1;      // finite kind: extension degree over GF(p)
  int nvars = 0;  // rational kind: number of variables

  int order() const { return kind == FieldKind::finite ? (k == 1 ? p : p * p) : 0; }
  bool is_finite() const { return kind == FieldKind::finite; }

  std::string name() const {
    if (kind == FieldKind::finite) return "GF(" + std::to_string(order()) + ")";
    std::string s = "F" + std::to_string(p) + "(";
    for (int i = 1; i <= nvars; ++i) {
      if (i > 1) s += ",";
      s += "x" + std::to_string(i);
    }
    return s + ")";
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

using FieldPtr = std::shared_ptr<const FieldDescriptor>;

/// GF(q) for q in {2,3,4,9}. GF(4) = GF(2)[x1]/(x1^2+x1+1), GF(9) = GF(3)[x1]/(x1^2+1).
inline FieldPtr finite_field(int q) {
  FieldDescriptor d;
  d.kind = FieldKind::finite;
  switch (q) {
    case 2: d.p = 2; d.k = 1; break;
    case 3: d.p = 3; d.k = 1; break;
    case 4: d.p = 2; d.k = 2; break;
    case 9: d.p = 3; d.k = 2; break;
    default: throw DomainError("unsupported finite field GF(" + std::to_string(q) + ")");
  }
  return std::make_shared<const FieldDescriptor>(d);
}

inline FieldPtr rational_field(int p, int nvars) {
  if (p != 2 && p != 3) throw DomainError("characteristic must be 2 or 3");
  if (nvars < 1 || nvars > kMaxVars) throw DomainError("variable count must be in [1, 6]");
  FieldDescriptor d;
  d.p = p;
  d.kind = FieldKind::rational;
  d.nvars = nvars;
  return std::make_shared<const FieldDescriptor>(d);
}

/// Parses "GF(4)", "F2(x1,x2)", "F2(x1..x3)".
inline FieldPtr parse_field(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  auto fail = [&]() -> FieldPtr { throw ParseError("cannot parse field '" + std::string(text) + "'"); };
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    int q = 0;
    try {
      q = std::stoi(s.substr(3, s.size() - 4));
    } catch (...) {
      fail();
    }
    return finite_field(q);
  }
  if (s.size() < 5 || s[0] != 'F' || s.back() != ')') fail();
  auto open = s.find('(');
  if (open == std::string::npos) fail();
  int p = 0;
  try {
    p = std::stoi(s.substr(1, open - 1));
  } catch (...) {
    fail();
  }
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  int n = 0;
  if (auto dots = inner.find(".."); dots != std::string::npos) {
    if (inner.rfind("x1", 0) != 0 || inner.size() < dots + 4 || inner[dots + 2] != 'x') fail();
    try {
      n = std::stoi(inner.substr(dots + 3));
    } catch (...) {
      fail();
    }
  } else {
    std::size_t pos = 0;
    while (pos < inner.size()) {
      auto comma = inner.find(',', pos);
      std::string var = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (var != "x" + std::to_string(n + 1)) fail();
      ++n;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (p != 2 && p != 3) fail();
  return rational_field(p, n);
}

// ---------------------------------------------------------------------------
// Monomials and polynomials over GF(p)

struct Monomial {
  std::array<std::uint32_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial var(int index, std::uint32_t power = 1) {
    Monomial m;
    m.e[index] = power;
    m.deg = power;
    return m;
  }

  bool is_one() const { return deg == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = std::uint64_t(e[i]) + o.e[i];
      if (s > kDegreeCap) throw DomainError("exponent exceeds degree cap 2^20");
      r.e[i] = static_cast<std::uint32_t>(s);
    }
    r.deg = deg + o.deg;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - divisor.e[i];
    r.deg = deg - divisor.deg;
    return r;
  }

  Monomial pow(std::uint32_t k) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = std::uint64_t(e[i]) * k;
      if (s > kDegreeCap) throw DomainError("exponent exceeds degree cap 2^20");
      r.e[i] = static_cast<std::uint32_t>(s);
      r.deg += r.e[i];
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = std::min(a.e[i], b.e[i]);
      r.deg += r.e[i];
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

  /// Graded lexicographic order with x1 > x2 > ... .
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
  }
};

namespace detail {

inline int mod_p(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv_mod_p(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw DomainError("inversion of zero");
}

}  // namespace detail

/// Sparse polynomial with GF(p) coefficients; terms sorted in decreasing graded-lex order.
class MultiPoly {
 public:
  struct Term {
    Monomial m;
    std::uint8_t c;
  };

  MultiPoly() = default;
  explicit MultiPoly(int p) : p_(static_cast<std::uint8_t>(p)) {}

  static MultiPoly constant(int p, long long c) {
    MultiPoly r(p);
    int v = detail::mod_p(c, p);
    if (v != 0) r.terms_.push_back({Monomial{}, static_cast<std::uint8_t>(v)});
    return r;
  }

  static MultiPoly monomial(int p, const Monomial& m, long long c = 1) {
    MultiPoly r(p);
    int v = detail::mod_p(c, p);
    if (v != 0) r.terms_.push_back({m, static_cast<std::uint8_t>(v)});
    return r;
  }

  /// Builds a polynomial from unsorted terms, combining equal monomials.
  static MultiPoly from_terms(int p, std::vector<Term> all) {
    std::sort(all.begin(), all.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
    MultiPoly r(p);
    r.terms_.reserve(all.size());
    for (std::size_t i = 0; i < all.size();) {
      int c = 0;
      std::size_t j = i;
      while (j < all.size() && all[j].m == all[i].m) c += all[j++].c;
      c %= p;
      if (c != 0) r.terms_.push_back({all[i].m, static_cast<std::uint8_t>(c)});
      i = j;
    }
    return r;
  }

  int prime() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1; }
  bool is_monomial() const { return terms_.size() == 1; }
  int constant_value() const { return terms_.empty() ? 0 : (terms_.back().m.is_one() ? terms_.back().c : 0); }
  const Term& leading() const { return terms_.front(); }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().m.deg; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].c != b.terms_[i].c || !(a.terms_[i].m == b.terms_[i].m)) return false;
    return true;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, 1); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, b.p_ - 1); }

  MultiPoly operator-() const { return scaled(p_ - 1); }

  MultiPoly scaled(int c) const {
    MultiPoly r(p_);
    int v = detail::mod_p(c, p_);
    if (v == 0) return r;
    r.terms_ = terms_;
    if (v != 1)
      for (auto& t : r.terms_) t.c = static_cast<std::uint8_t>((t.c * v) % p_);
    return r;
  }

  MultiPoly times_monomial(const Monomial& m, int c = 1) const {
    MultiPoly r(p_);
    int v = detail::mod_p(c, p_);
    if (v == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, static_cast<std::uint8_t>((t.c * v) % p_)});
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    const int p = a.p_;
    if (a.is_zero() || b.is_zero()) return MultiPoly(p);
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) return large.times_monomial(small.terms_[0].m, small.terms_[0].c);
    // each row s·large is already sorted; merge rows pairwise
    std::vector<std::vector<Term>> rows;
    rows.reserve(small.size());
    for (const auto& s : small.terms_) rows.push_back(large.times_monomial(s.m, s.c).terms_);
    while (rows.size() > 1) {
      std::vector<std::vector<Term>> next;
      next.reserve((rows.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge_terms(rows[i], rows[i + 1], p));
      if (rows.size() % 2) next.push_back(std::move(rows.back()));
      rows = std::move(next);
    }
    MultiPoly r(p);
    r.terms_ = std::move(rows.front());
    return r;
  }

  static std::vector<Term> merge_terms(const std::vector<Term>& x, const std::vector<Term>& y, int p) {
    std::vector<Term> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i].m > y[j].m) out.push_back(x[i++]);
      else if (y[j].m > x[i].m) out.push_back(y[j++]);
      else {
        int c = (x[i].c + y[j].c) % p;
        if (c) out.push_back({x[i].m, static_cast<std::uint8_t>(c)});
        ++i, ++j;
      }
    }
    out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
    return out;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(p_, 1);
    MultiPoly base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Raises to the power p^times; coefficients in GF(p) are Frobenius-fixed.
  MultiPoly frobenius(int times = 1) const {
    std::uint32_t q = 1;
    for (int i = 0; i < times; ++i) q *= p_;
    MultiPoly r(p_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m.pow(q), t.c});
    return r;
  }

  /// Componentwise minimum exponent over all terms. Zero polynomial gives 1.
  Monomial content_monomial() const {
    if (terms_.empty()) return Monomial{};
    Monomial g = terms_[0].m;
    for (const auto& t : terms_) g = Monomial::gcd(g, t.m);
    return g;
  }

  MultiPoly divided_by_monomial(const Monomial& m) const {
    MultiPoly r(p_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m / m, t.c});
    return r;
  }

  /// Quotient when `d` divides exactly, otherwise nullopt. Aborts at the first
  /// leading term not divisible by LT(d).
  std::optional<MultiPoly> exact_div(const MultiPoly& d) const {
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    if (is_zero()) return MultiPoly(p_);
    if (d.is_monomial()) {
      const auto& lt = d.leading();
      for (const auto& t : terms_)
        if (!lt.m.divides(t.m)) return std::nullopt;
      return divided_by_monomial(lt.m).scaled(detail::inv_mod_p(lt.c, p_));
    }
    const auto& lt = d.leading();
    if (!lt.m.divides(leading().m) || d.total_degree() > total_degree()) return std::nullopt;
    int inv_lc = detail::inv_mod_p(lt.c, p_);
    MultiPoly rem = *this;
    MultiPoly quot(p_);
    while (!rem.is_zero()) {
      const auto& rt = rem.leading();
      if (!lt.m.divides(rt.m)) return std::nullopt;
      Monomial qm = rt.m / lt.m;
      int qc = (rt.c * inv_lc) % p_;
      quot.terms_.push_back({qm, static_cast<std::uint8_t>(qc)});
      rem = rem - d.times_monomial(qm, qc);
    }
    return quot;
  }

  /// Evaluation helper for tests: substitutes small integers mod p.
  int eval_mod_p(const std::array<int, kMaxVars>& point) const {
    long long acc = 0;
    for (const auto& t : terms_) {
      long long v = t.c;
      for (int i = 0; i < kMaxVars; ++i)
        for (std::uint32_t k = 0; k < t.m.e[i]; ++k) v = (v * point[i]) % p_;
      acc += v;
    }
    return detail::mod_p(acc, p_);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += "+";
      if (t.m.is_one()) {
        s += std::to_string(t.c);
      } else {
        if (t.c != 1) s += std::to_string(t.c);
        s += t.m.to_string();
      }
    }
    return s;
  }

  // Univariate helpers (variable x1), used for canonical reduction when n == 1.
  static std::pair<MultiPoly, MultiPoly> divmod_univariate(const MultiPoly& a, const MultiPoly& b) {
    const int p = a.p_;
    MultiPoly q(p), r = a;
    const auto& lt = b.leading();
    int inv_lc = detail::inv_mod_p(lt.c, p);
    while (!r.is_zero() && r.leading().m.e[0] >= lt.m.e[0]) {
      Monomial qm = Monomial::var(0, r.leading().m.e[0] - lt.m.e[0]);
      int qc = (r.leading().c * inv_lc) % p;
      q.terms_.push_back({qm, static_cast<std::uint8_t>(qc)});
      r = r - b.times_monomial(qm, qc);
    }
    return {q, r};
  }

  static MultiPoly gcd_univariate(MultiPoly a, MultiPoly b) {
    while (!b.is_zero()) {
      auto r = divmod_univariate(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(detail::inv_mod_p(a.leading().c, a.p_));
  }

 private:
  static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, int bscale) {
    const int p = a.p_;
    MultiPoly r(p);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].m > b.terms_[j].m)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].m > a.terms_[i].m) {
        int c = (b.terms_[j].c * bscale) % p;
        if (c != 0) r.terms_.push_back({b.terms_[j].m, static_cast<std::uint8_t>(c)});
        ++j;
      } else {
        int c = (a.terms_[i].c + b.terms_[j].c * bscale) % p;
        if (c != 0) r.terms_.push_back({a.terms_[i].m, static_cast<std::uint8_t>(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::uint8_t p_ = 2;
  std::vector<Term> terms_;
};


// ---------------------------------------------------------------------------
// Multivariate gcd over GF(p). Brown's dense modular scheme: evaluate one
// variable at points of an extension field GF(p^k), recurse, interpolate, and
// confirm by exact division.

namespace detail {

/// GF(p^k) with p^k near 2^16, via log/antilog tables. Codes are base-p digit strings.
struct ExtField {
  int p = 2, k = 16;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> exp_, log_;
  std::vector<std::uint32_t> pw;  // p^i

  static const ExtField& get(int p) {
    static const ExtField f2 = make(2, 16), f3 = make(3, 10);
    if (p == 2) return f2;
    if (p == 3) return f3;
    throw DomainError("unsupported characteristic");
  }

  static ExtField make(int p, int k) {
    ExtField f;
    f.p = p;
    f.k = k;
    f.pw.assign(static_cast<std::size_t>(k + 1), 1);
    for (int i = 1; i <= k; ++i) f.pw[i] = f.pw[i - 1] * static_cast<std::uint32_t>(p);
    f.q = f.pw[k];
    // search a primitive polynomial x^k + c(x) by checking that x has order q-1
    for (std::uint32_t low = 1; low < f.q; ++low) {
      if (low % static_cast<std::uint32_t>(p) == 0) continue;
      f.exp_.assign(2 * (f.q - 1), 0);
      std::uint32_t cur = 1;
      bool ok = true;
      for (std::uint32_t i = 0; i < f.q - 1; ++i) {
        f.exp_[i] = cur;
        cur = f.times_x(cur, low);
        if (cur == 1 && i + 2 < f.q) {
          ok = false;
          break;
        }
      }
      if (!ok || cur != 1) continue;
      f.log_.assign(f.q, 0);
      for (std::uint32_t i = 0; i < f.q - 1; ++i) {
        f.exp_[i + f.q - 1] = f.exp_[i];
        f.log_[f.exp_[i]] = i;
      }
      return f;
    }
    throw DomainError("no primitive polynomial found");
  }

  int digit(std::uint32_t a, int i) const { return static_cast<int>((a / pw[i]) % static_cast<std::uint32_t>(p)); }

  std::uint32_t times_x(std::uint32_t a, std::uint32_t low) const {
    int top = digit(a, k - 1);
    std::uint32_t shifted = (a % pw[k - 1]) * static_cast<std::uint32_t>(p);
    // x^k = -c(x)
    return top == 0 ? shifted : sub(shifted, scale_int(low, top));
  }

  std::uint32_t scale_int(std::uint32_t a, int c) const {
    std::uint32_t r = 0;
    for (int i = 0; i < k; ++i) r += pw[i] * static_cast<std::uint32_t>((digit(a, i) * c) % p);
    return r;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    std::uint32_t r = 0;
    for (int i = 0; i < k; ++i) r += pw[i] * static_cast<std::uint32_t>((digit(a, i) + digit(b, i)) % p);
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const { return p == 2 ? a : scale_int(a, p - 1); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("inversion of zero");
    return exp_[(q - 1 - log_[a]) % (q - 1)];
  }
  std::uint32_t power(std::uint32_t a, std::uint32_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * e) % (q - 1))];
  }
};

/// Dense univariate polynomial over ExtField, low degree first, no trailing zeros.
using UPoly = std::vector<std::uint32_t>;

inline void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t ueval(const ExtField& F, const UPoly& a, std::uint32_t x) {
  std::uint32_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

inline UPoly umul(const ExtField& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  utrim(r);
  return r;
}

/// Remainder of a by b; quotient written to *quot when given.
inline UPoly urem(const ExtField& F, UPoly a, const UPoly& b, UPoly* quot = nullptr) {
  if (quot) quot->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  std::uint32_t il = F.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t s = a.size() - b.size();
    std::uint32_t c = F.mul(a.back(), il);
    if (quot) (*quot)[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = F.sub(a[s + j], F.mul(c, b[j]));
    utrim(a);
  }
  if (quot) utrim(*quot);
  return a;
}

inline UPoly umonic(const ExtField& F, UPoly a) {
  if (a.empty()) return a;
  std::uint32_t il = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, il);
  return a;
}

inline UPoly ugcd(const ExtField& F, UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = urem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(F, std::move(a));
}

/// Sparse polynomial over ExtField; terms in decreasing graded-lex order.
struct QTerm {
  Monomial m;
  std::uint32_t c;
};
using QPoly = std::vector<QTerm>;

inline QPoly qnormalize(const ExtField& F, QPoly t) {
  std::sort(t.begin(), t.end(), [](const QTerm& x, const QTerm& y) { return x.m > y.m; });
  QPoly r;
  r.reserve(t.size());
  for (std::size_t i = 0; i < t.size();) {
    std::uint32_t c = 0;
    std::size_t j = i;
    while (j < t.size() && t[j].m == t[i].m) c = F.add(c, t[j++].c);
    if (c) r.push_back({t[i].m, c});
    i = j;
  }
  return r;
}

inline QPoly qadd(const ExtField& F, const QPoly& a, const QPoly& b, bool subtract = false) {
  QPoly r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].m > b[j].m)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].m > a[i].m) {
      r.push_back({b[j].m, subtract ? F.neg(b[j].c) : b[j].c});
      ++j;
    } else {
      std::uint32_t c = subtract ? F.sub(a[i].c, b[j].c) : F.add(a[i].c, b[j].c);
      if (c) r.push_back({a[i].m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

inline QPoly qmul(const ExtField& F, const QPoly& a, const QPoly& b) {
  QPoly all;
  all.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) all.push_back({x.m * y.m, F.mul(x.c, y.c)});
  return qnormalize(F, std::move(all));
}

inline QPoly qscale(const ExtField& F, const QPoly& a, std::uint32_t c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& t : r) t.c = F.mul(t.c, c);
  return r;
}

/// Exact quotient a / d, or nullopt.
inline std::optional<QPoly> qdiv(const ExtField& F, const QPoly& a, const QPoly& d) {
  if (a.empty()) return QPoly{};
  const QTerm& lt = d.front();
  std::uint32_t il = F.inv(lt.c);
  QPoly rem = a, quot;
  while (!rem.empty()) {
    const QTerm& rt = rem.front();
    if (!lt.m.divides(rt.m)) return std::nullopt;
    QTerm qt{rt.m / lt.m, F.mul(rt.c, il)};
    quot.push_back(qt);
    QPoly sub;
    sub.reserve(d.size());
    for (const auto& t : d) sub.push_back({t.m * qt.m, F.mul(t.c, qt.c)});
    rem = qadd(F, rem, sub, true);
  }
  return quot;
}

/// Substitutes x_v = x.
inline QPoly qeval(const ExtField& F, const QPoly& a, int v, std::uint32_t x) {
  QPoly t;
  t.reserve(a.size());
  for (const auto& term : a) {
    std::uint32_t c = F.mul(term.c, F.power(x, term.m.e[v]));
    if (!c) continue;
    Monomial m = term.m;
    m.deg -= m.e[v];
    m.e[v] = 0;
    t.push_back({m, c});
  }
  return qnormalize(F, std::move(t));
}

/// Lexicographic comparison of exponent vectors on the listed variables.
inline int lex_cmp(const Monomial& a, const Monomial& b, const std::vector<int>& vars) {
  for (int v : vars)
    if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
  return 0;
}

inline const QTerm& lex_leading(const QPoly& a, const std::vector<int>& vars) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (lex_cmp(a[i].m, a[best].m, vars) > 0) best = i;
  return a[best];
}

/// View of a as a polynomial in the `main` variables with coefficients in F[x_v].
struct Recursive {
  std::vector<Monomial> keys;  // lex-descending on main
  std::vector<UPoly> coeffs;
};

inline Recursive qview(const QPoly& a, int v, const std::vector<int>& main) {
  std::vector<std::pair<Monomial, std::pair<std::uint32_t, std::uint32_t>>> rows;
  rows.reserve(a.size());
  for (const auto& t : a) {
    Monomial m = t.m;
    std::uint32_t d = m.e[v];
    m.deg -= d;
    m.e[v] = 0;
    rows.push_back({m, {d, t.c}});
  }
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) { return lex_cmp(x.first, y.first, main) > 0; });
  Recursive r;
  for (const auto& [m, dc] : rows) {
    if (r.keys.empty() || !(r.keys.back() == m)) {
      r.keys.push_back(m);
      r.coeffs.emplace_back();
    }
    UPoly& u = r.coeffs.back();
    if (u.size() <= dc.first) u.resize(dc.first + 1, 0);
    u[dc.first] = dc.second;
  }
  return r;
}

inline QPoly qfrom_view(const ExtField& F, const Recursive& r, int v) {
  QPoly t;
  for (std::size_t i = 0; i < r.keys.size(); ++i)
    for (std::size_t d = 0; d < r.coeffs[i].size(); ++d)
      if (r.coeffs[i][d]) t.push_back({r.keys[i] * Monomial::var(v, static_cast<std::uint32_t>(d)), r.coeffs[i][d]});
  return qnormalize(F, std::move(t));
}

inline UPoly view_content(const ExtField& F, const Recursive& r) {
  UPoly g;
  for (const auto& c : r.coeffs) {
    g = ugcd(F, g, c);
    if (g.size() == 1) break;
  }
  return g;
}

inline Recursive view_divide(const ExtField& F, Recursive r, const UPoly& c) {
  if (c.size() <= 1) return r;
  for (auto& u : r.coeffs) {
    UPoly quot;
    urem(F, u, c, &quot);
    u = std::move(quot);
  }
  return r;
}

inline QPoly qmonic(const ExtField& F, const QPoly& a, const std::vector<int>& vars) {
  return qscale(F, a, F.inv(lex_leading(a, vars).c));
}

/// Monic (lex on vars) gcd of nonzero a, b involving only the listed variables.
inline QPoly brown_gcd(const ExtField& F, const QPoly& a, const QPoly& b, const std::vector<int>& vars) {
  const QPoly one{{Monomial{}, 1}};
  if (vars.size() == 1) {
    int v = vars[0];
    auto dense = [&](const QPoly& x) {
      UPoly u;
      for (const auto& t : x) {
        if (u.size() <= t.m.e[v]) u.resize(t.m.e[v] + 1, 0);
        u[t.m.e[v]] = t.c;
      }
      return u;
    };
    UPoly g = ugcd(F, dense(a), dense(b));
    QPoly r;
    for (std::size_t d = g.size(); d-- > 0;)
      if (g[d]) r.push_back({Monomial::var(v, static_cast<std::uint32_t>(d)), g[d]});
    return r;
  }
  const int v = vars.back();
  std::vector<int> main(vars.begin(), vars.end() - 1);
  Recursive ra = qview(a, v, main), rb = qview(b, v, main);
  UPoly ca = view_content(F, ra), cb = view_content(F, rb);
  UPoly c = ugcd(F, ca, cb);
  ra = view_divide(F, ra, ca);
  rb = view_divide(F, rb, cb);
  QPoly pa = qfrom_view(F, ra, v), pb = qfrom_view(F, rb, v);
  QPoly cpoly = qfrom_view(F, Recursive{{Monomial{}}, {c}}, v);
  const UPoly& la = ra.coeffs.front();
  const UPoly& lb = rb.coeffs.front();
  UPoly gamma = ugcd(F, la, lb);
  std::size_t dva = 0, dvb = 0;
  for (const auto& u : ra.coeffs) dva = std::max(dva, u.size());
  for (const auto& u : rb.coeffs) dvb = std::max(dvb, u.size());
  const std::size_t bound = gamma.size() + std::min(dva, dvb) + 1;

  QPoly h;
  UPoly m{1};
  std::optional<Monomial> lead;
  std::size_t points = 0, tried = 0;
  for (std::uint32_t x = 0; x < F.q && tried < 4 * bound + 32; ++x) {
    std::uint32_t gx = ueval(F, gamma, x);
    if (!gx || !ueval(F, la, x) || !ueval(F, lb, x)) continue;
    ++tried;
    QPoly gi = brown_gcd(F, qeval(F, pa, v, x), qeval(F, pb, v, x), main);
    if (gi.size() == 1 && gi[0].m.is_one()) return qmonic(F, cpoly, vars);
    gi = qscale(F, gi, gx);
    Monomial ld = lex_leading(gi, main).m;
    bool changed = true;
    if (!lead || lex_cmp(ld, *lead, main) < 0) {
      h.clear();
      for (const auto& t : gi) h.push_back(t);
      m = UPoly{F.neg(x), 1};
      lead = ld;
      points = 1;
    } else if (lex_cmp(ld, *lead, main) > 0) {
      continue;
    } else {
      QPoly err = qadd(F, gi, qeval(F, h, v, x), true);
      changed = !err.empty();
      if (changed) {
        std::uint32_t s = F.inv(ueval(F, m, x));
        QPoly mq;
        for (std::size_t d = 0; d < m.size(); ++d)
          if (m[d]) mq.push_back({Monomial::var(v, static_cast<std::uint32_t>(d)), F.mul(m[d], s)});
        h = qadd(F, h, qmul(F, qnormalize(F, mq), err));
      }
      m = umul(F, m, UPoly{F.neg(x), 1});
      ++points;
    }
    if (points >= bound || (!changed && points > 1)) {
      Recursive rh = qview(h, v, main);
      QPoly cand = qfrom_view(F, view_divide(F, rh, view_content(F, rh)), v);
      if (qdiv(F, pa, cand) && qdiv(F, pb, cand)) return qmonic(F, qmul(F, cpoly, cand), vars);
    }
  }
  // persistent bad luck: the content gcd is still a common divisor
  return qmonic(F, cpoly, vars);
}

inline std::uint32_t var_degree(const MultiPoly& a, int v) {
  std::uint32_t d = 0;
  for (const auto& t : a.terms()) d = std::max(d, t.m.e[v]);
  return d;
}

inline MultiPoly make_monic(const MultiPoly& a) {
  if (a.is_zero()) return a;
  return a.scaled(inv_mod_p(a.leading().c, a.prime()));
}

inline MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& d) {
  if (d.is_one()) return a;
  auto q = a.exact_div(d);
  if (!q) throw DomainError("internal: inexact polynomial division");
  return std::move(*q);
}

inline MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b) {
  const int p = a.prime();
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(p, 1);
  if (a == b) return make_monic(a);
  Monomial mg = Monomial::gcd(a.content_monomial(), b.content_monomial());
  if (a.is_monomial() || b.is_monomial()) return MultiPoly::monomial(p, mg);
  const ExtField& F = ExtField::get(p);
  auto lift = [&](const MultiPoly& x) {
    QPoly r;
    Monomial cm = x.content_monomial();
    for (const auto& t : x.terms()) r.push_back({t.m / cm, static_cast<std::uint32_t>(t.c)});
    return r;
  };
  QPoly qa = lift(a), qb = lift(b);
  // variables by decreasing degree; the first is handled by univariate Euclid
  std::vector<std::pair<std::uint32_t, int>> degs;
  for (int v = 0; v < kMaxVars; ++v) {
    std::uint32_t d = 0;
    for (const auto& t : qa) d = std::max(d, t.m.e[v]);
    for (const auto& t : qb) d = std::max(d, t.m.e[v]);
    if (d > 0) degs.push_back({d, v});
  }
  std::sort(degs.begin(), degs.end(), [](const auto& x, const auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
  std::vector<int> vars;
  for (const auto& dv : degs) vars.push_back(dv.second);
  QPoly g = brown_gcd(F, qa, qb, vars);
  std::vector<MultiPoly::Term> ts;
  for (const auto& t : g) {
    if (t.c >= static_cast<std::uint32_t>(p)) throw DomainError("internal: gcd left the prime field");
    ts.push_back({t.m * mg, static_cast<std::uint8_t>(t.c)});
  }
  return make_monic(MultiPoly::from_terms(p, std::move(ts)));
}

}  // namespace detail

/// Monic greatest common divisor of two polynomials over GF(p).
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) { return detail::gcd_rec(a, b); }

// ---------------------------------------------------------------------------
// Finite fields GF(p^k), k <= 2. Element code = a0 + p*a1 for a0 + a1*x1.

namespace detail {

inline int gf_add(int p, int a, int b) { return (a % p + b % p) % p + p * ((a / p + b / p) % p); }

inline int gf_neg(int p, int a) { return ((p - a % p) % p) + p * ((p - a / p) % p); }

inline int gf_mul(int p, int k, int a, int b) {
  if (k == 1) return (a * b) % p;
  int a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
  int c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
  // x1^2 = x1 + 1 in GF(4), x1^2 = -1 in GF(9)
  if (p == 2) {
    c0 += c2;
    c1 += c2;
  } else {
    c0 -= c2;
  }
  return mod_p(c0, p) + p * mod_p(c1, p);
}

inline int gf_inv(int p, int k, int a) {
  int q = k == 1 ? p : p * p;
  for (int x = 1; x < q; ++x)
    if (gf_mul(p, k, a, x) == 1) return x;
  throw DomainError("inversion of zero");
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// An element of a FieldDescriptor's field. Rational-function values are kept as
/// (numerator, denominator) pairs that need not be reduced; equality is decided by
/// cross-multiplication. Fractions are reduced by the polynomial gcd.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldPtr& f) { return from_int(f, 0); }
  static Scalar one(const FieldPtr& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldPtr& f, long long v) {
    Scalar s;
    s.field_ = f;
    if (f->is_finite()) {
      s.code_ = static_cast<std::uint8_t>(detail::mod_p(v, f->p));
    } else {
      s.num_ = MultiPoly::constant(f->p, v);
      s.den_ = MultiPoly::constant(f->p, 1);
    }
    return s;
  }

  /// GF(p^k) element from its code a0 + p*a1.
  static Scalar from_code(const FieldPtr& f, int code) {
    if (!f->is_finite() || code < 0 || code >= f->order()) throw DomainError("bad finite-field code");
    Scalar s;
    s.field_ = f;
    s.code_ = static_cast<std::uint8_t>(code);
    return s;
  }

  static Scalar from_poly(const FieldPtr& f, MultiPoly num) {
    if (f->is_finite()) throw DomainError("polynomial value in a finite field");
    Scalar s;
    s.field_ = f;
    s.num_ = std::move(num);
    s.den_ = MultiPoly::constant(f->p, 1);
    return s;
  }

  static Scalar fraction(const FieldPtr& f, MultiPoly num, MultiPoly den) {
    if (den.is_zero()) throw DomainError("division by zero polynomial");
    Scalar s;
    s.field_ = f;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.normalize();
    return s;
  }

  /// The variable x_{index+1} (or the extension generator of GF(p^2) for index 0).
  static Scalar variable(const FieldPtr& f, int index) {
    if (f->is_finite()) {
      if (f->k != 2 || index != 0) throw DomainError("variable out of range");
      return from_code(f, f->p);
    }
    if (index < 0 || index >= f->nvars) throw DomainError("variable out of range");
    return from_poly(f, MultiPoly::monomial(f->p, Monomial::var(index)));
  }

  const FieldPtr& field() const { return field_; }
  bool is_finite() const { return field_->is_finite(); }
  int code() const { return code_; }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return is_finite() ? code_ == 0 : num_.is_zero(); }
  bool is_one() const {
    if (is_finite()) return code_ == 1;
    if (den_.is_one()) return num_.is_one();
    return num_ == den_;
  }
  bool is_polynomial() const { return is_finite() || den_.is_one(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r;
    r.field_ = a.field_;
    if (a.is_finite()) {
      r.code_ = static_cast<std::uint8_t>(detail::gf_add(a.field_->p, a.code_, b.code_));
      return r;
    }
    if (a.num_.is_zero()) return b;
    if (b.num_.is_zero()) return a;
    if (a.den_ == b.den_) {
      r.num_ = a.num_ + b.num_;
      r.den_ = a.den_;
    } else if (a.field_->nvars > 1) {
      // Henrici: with g = gcd(b, d), only g can share factors with the new numerator
      MultiPoly g = chevcarpet::gcd(a.den_, b.den_);
      MultiPoly bq = detail::exact_quotient(a.den_, g), dq = detail::exact_quotient(b.den_, g);
      MultiPoly t = a.num_ * dq + b.num_ * bq;
      if (t.is_zero()) return zero(a.field_);
      MultiPoly g2 = g.is_constant() ? g : chevcarpet::gcd(t, g);
      r.num_ = detail::exact_quotient(t, g2);
      r.den_ = detail::exact_quotient(a.den_, g2) * dq;
      r.finish();
      return r;
    } else {
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      r.den_ = a.den_ * b.den_;
    }
    r.normalize();
    return r;
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (is_finite())
      r.code_ = static_cast<std::uint8_t>(detail::gf_neg(field_->p, code_));
    else
      r.num_ = -num_;
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r;
    r.field_ = a.field_;
    if (a.is_finite()) {
      r.code_ = static_cast<std::uint8_t>(detail::gf_mul(a.field_->p, a.field_->k, a.code_, b.code_));
      return r;
    }
    if (a.num_.is_zero() || b.num_.is_zero()) return zero(a.field_);
    if (a.den_.is_one() && b.den_.is_one()) {
      r.num_ = a.num_ * b.num_;
      r.den_ = a.den_;
      return r;
    }
    if (a.field_->nvars > 1) {
      // operands are reduced, so cancelling across is enough
      MultiPoly g1 = chevcarpet::gcd(a.num_, b.den_), g2 = chevcarpet::gcd(b.num_, a.den_);
      r.num_ = detail::exact_quotient(a.num_, g1) * detail::exact_quotient(b.num_, g2);
      r.den_ = detail::exact_quotient(a.den_, g2) * detail::exact_quotient(b.den_, g1);
      r.finish();
      return r;
    }
    // cross-cancel exact factors before multiplying
    if (a.den_ == b.num_) {
      r.num_ = a.num_;
      r.den_ = b.den_;
    } else if (b.den_ == a.num_) {
      r.num_ = b.num_;
      r.den_ = a.den_;
    } else {
      r.num_ = a.num_ * b.num_;
      r.den_ = a.den_ * b.den_;
    }
    r.normalize();
    return r;
  }

  Scalar inv() const {
    if (is_zero()) throw DomainError("inversion of zero");
    Scalar r;
    r.field_ = field_;
    if (is_finite()) {
      r.code_ = static_cast<std::uint8_t>(detail::gf_inv(field_->p, field_->k, code_));
      return r;
    }
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar pow(long long k) const {
    if (k < 0) return inv().pow(-k);
    Scalar result = one(field_);
    Scalar base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Field equality; fractions compare by cross-multiplication.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    if (a.is_finite()) return a.code_ == b.code_;
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  /// Canonical text in the scalar grammar (graded-lex term order).
  std::string to_string() const {
    if (is_finite()) {
      const int p = field_->p;
      int a0 = code_ % p, a1 = code_ / p;
      if (a1 == 0) return std::to_string(a0);
      std::string s = (a1 == 1 ? std::string() : std::to_string(a1)) + "x1";
      if (a0 != 0) s += "+" + std::to_string(a0);
      return s;
    }
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

  /// Cancels the polynomial gcd and makes the denominator monic.
  void normalize() {
    if (is_finite()) return;
    const int p = field_->p;
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(p, 1);
      return;
    }
    if (den_.is_one()) return;
    Monomial g = Monomial::gcd(num_.content_monomial(), den_.content_monomial());
    if (!g.is_one()) {
      num_ = num_.divided_by_monomial(g);
      den_ = den_.divided_by_monomial(g);
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(detail::inv_mod_p(den_.constant_value(), p));
      den_ = MultiPoly::constant(p, 1);
      return;
    }
    if (field_->nvars == 1) {
      MultiPoly gcd = MultiPoly::gcd_univariate(num_, den_);
      if (!gcd.is_constant()) {
        num_ = MultiPoly::divmod_univariate(num_, gcd).first;
        den_ = MultiPoly::divmod_univariate(den_, gcd).first;
      }
    } else {
      if (den_.size() <= num_.size())
        if (auto q = num_.exact_div(den_)) {
          num_ = std::move(*q);
          den_ = MultiPoly::constant(p, 1);
          return;
        }
      MultiPoly g = chevcarpet::gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = detail::exact_quotient(num_, g);
        den_ = detail::exact_quotient(den_, g);
        if (den_.is_constant()) {
          num_ = num_.scaled(detail::inv_mod_p(den_.constant_value(), p));
          den_ = MultiPoly::constant(p, 1);
          return;
        }
      }
    }
    int lc = den_.leading().c;
    if (lc != 1) {
      int inv = detail::inv_mod_p(lc, p);
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

 private:
  // num/den already coprime: fold a constant denominator, else make it monic
  void finish() {
    const int p = field_->p;
    int lc = den_.leading().c;
    if (den_.is_constant()) {
      num_ = num_.scaled(detail::inv_mod_p(lc, p));
      den_ = MultiPoly::constant(p, 1);
    } else if (lc != 1) {
      int inv = detail::inv_mod_p(lc, p);
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  static void check_same(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_ && !(a.field_ && b.field_ && *a.field_ == *b.field_))
      throw DomainError("scalar descriptor mismatch");
  }

  FieldPtr field_;
  std::uint8_t code_ = 0;
  MultiPoly num_, den_;
};

inline std::string to_string(const Scalar& s) { return s.to_string(); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, FieldPtr f) : field_(std::move(f)) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  Scalar parse() {
    if (s_.empty()) fail("empty expression");
    Scalar v = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar syntax error at offset " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  Scalar expr() {
    Scalar v = term();
    while (peek('+') || peek('-')) {
      char op = s_[pos_++];
      Scalar t = term();
      v = op == '+' ? v + t : v - t;
    }
    return v;
  }

  bool starts_factor() const {
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'x' || s_[pos_] == '(');
  }

  Scalar term() {
    bool negate = false;
    while (peek('-') || peek('+')) {
      if (s_[pos_] == '-') negate = !negate;
      ++pos_;
    }
    Scalar v = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        v = v * power();
      } else if (peek('/')) {
        ++pos_;
        Scalar d = power();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else if (starts_factor()) {
        v = v * power();
      } else {
        break;
      }
    }
    return negate ? -v : v;
  }

  long long integer() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > (1LL << 40)) fail("integer too large");
    }
    return v;
  }

  Scalar power() {
    Scalar b = base();
    if (peek('^')) {
      ++pos_;
      long long k = integer();
      if (k > kDegreeCap) fail("exponent exceeds degree cap");
      b = b.pow(k);
    }
    return b;
  }

  Scalar base() {
    if (peek('(')) {
      ++pos_;
      Scalar v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (peek('x')) {
      ++pos_;
      long long idx = integer();
      int limit = field_->is_finite() ? (field_->k == 2 ? 1 : 0) : field_->nvars;
      if (idx < 1 || idx > limit) fail("variable x" + std::to_string(idx) + " out of range");
      return Scalar::variable(field_, static_cast<int>(idx - 1));
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return Scalar::from_int(field_, integer());
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
  }

  FieldPtr field_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the scalar grammar (sums of coefficient-monomial terms, optional
/// "(expr)/(expr)" fraction); also accepts '-', nested parentheses and '/' anywhere.
inline Scalar parse_scalar(std::string_view text, const FieldPtr& field) {
  return detail::ScalarParser(text, field).parse();
}

// ---------------------------------------------------------------------------
// Frobenius and coordinates over the p-th power subfield

inline Scalar frobenius(const Scalar& a, int times = 1) {
  if (a.is_finite()) {
    Scalar r = a;
    for (int i = 0; i < times; ++i) r = r.pow(a.field()->p);
    return r;
  }
  return Scalar::fraction(a.field(), a.num().frobenius(times), a.den().frobenius(times));
}

/// Number of coordinates of F over K = F_p(x1^q..xn^q), i.e. q^n; for finite fields,
/// the degree over the prime field.
inline std::size_t subfield_dimension(const FieldDescriptor& f, int q) {
  if (f.is_finite()) return static_cast<std::size_t>(f.k);
  std::size_t d = 1;
  for (int i = 0; i < f.nvars; ++i) d *= static_cast<std::size_t>(q);
  return d;
}

/// Exponent vector S (entries in [0, q-1]) of basis slot `index`; x1 varies fastest.
inline Monomial subfield_basis_monomial(const FieldDescriptor& f, int q, std::size_t index) {
  Monomial m;
  for (int i = 0; i < f.nvars; ++i) {
    m.e[i] = static_cast<std::uint32_t>(index % q);
    m.deg += m.e[i];
    index /= q;
  }
  return m;
}

inline std::size_t subfield_slot(const FieldDescriptor& f, int q, const Monomial& m) {
  std::size_t idx = 0, mult = 1;
  for (int i = 0; i < f.nvars; ++i) {
    idx += (m.e[i] % q) * mult;
    mult *= static_cast<std::size_t>(q);
  }
  return idx;
}

namespace detail {

inline int log_p(int q, int p) {
  int t = 0;
  while (q > 1) {
    if (q % p != 0) throw DomainError("subfield exponent must be a power of p");
    q /= p;
    ++t;
  }
  return t;
}

/// Writes a = (sum_S N_S x^S) / E with E in K, each N_S in K; returns (N_S by slot, E).
/// All polynomials returned have exponents divisible by q.
inline std::pair<std::vector<MultiPoly>, MultiPoly> split_over_subfield(const Scalar& a, int q) {
  const auto& f = *a.field();
  const int p = f.p;
  std::size_t dim = subfield_dimension(f, q);
  std::vector<MultiPoly> parts(dim, MultiPoly(p));
  MultiPoly numer = a.num();
  MultiPoly denom = a.den();
  if (!denom.is_one()) {
    numer = numer * denom.pow(static_cast<unsigned>(q - 1));
    denom = denom.frobenius(log_p(q, p));
  }
  std::vector<std::vector<MultiPoly::Term>> buckets(dim);
  for (const auto& t : numer.terms()) {
    std::size_t slot = subfield_slot(f, q, t.m);
    Monomial base = subfield_basis_monomial(f, q, slot);
    buckets[slot].push_back({t.m / base, t.c});
  }
  for (std::size_t s = 0; s < dim; ++s) {
    MultiPoly acc(p);
    for (const auto& t : buckets[s]) acc = acc + MultiPoly::monomial(p, t.m, t.c);
    parts[s] = std::move(acc);
  }
  return {std::move(parts), std::move(denom)};
}

}  // namespace detail

/// Coordinates of `a` over K = F_p(x1^q..xn^q) on the basis x^S, S in [0,q-1]^n
/// (slot order: x1 fastest). Each coordinate is an element of K. For finite
/// fields the coordinates are over the prime field on the basis (1, x1).
inline std::vector<Scalar> coords_over_K(const Scalar& a, int q = 0) {
  const auto& f = a.field();
  if (f->is_finite()) {
    auto prime = finite_field(f->p);
    std::vector<Scalar> out;
    out.push_back(Scalar::from_int(prime, a.code() % f->p));
    if (f->k == 2) out.push_back(Scalar::from_int(prime, a.code() / f->p));
    return out;
  }
  if (q == 0) q = f->p;
  auto [parts, denom] = detail::split_over_subfield(a, q);
  std::vector<Scalar> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.push_back(Scalar::fraction(f, std::move(part), denom));
  return out;
}

inline bool is_in_K(const Scalar& a, int q = 0) {
  if (a.is_finite()) return a.field()->k == 1 || a.code() < a.field()->p;
  if (q == 0) q = a.field()->p;
  auto [parts, denom] = detail::split_over_subfield(a, q);
  for (std::size_t s = 1; s < parts.size(); ++s)
    if (!parts[s].is_zero()) return false;
  return true;
}

/// Inverse of the p-th power map on K = F^p (rational kind). Requires is_in_K(a, p).
inline Scalar pth_root(const Scalar& a) {
  if (a.is_finite()) {
    Scalar r = a;
    // Frobenius has finite order k on GF(p^k)
    for (int i = 1; i < a.field()->k; ++i) r = frobenius(r);
    return r;
  }
  const int p = a.field()->p;
  auto [parts, denom] = detail::split_over_subfield(a, p);
  for (std::size_t s = 1; s < parts.size(); ++s)
    if (!parts[s].is_zero()) throw DomainError("element is not a p-th power");
  auto root = [p](const MultiPoly& m) {
    MultiPoly r(p);
    for (const auto& t : m.terms()) {
      Monomial e;
      for (int i = 0; i < kMaxVars; ++i) {
        e.e[i] = t.m.e[i] / p;
        e.deg += e.e[i];
      }
      r = r + MultiPoly::monomial(p, e, t.c);
    }
    return r;
  };
  return Scalar::fraction(a.field(), root(parts[0]), root(denom));
}

}  // namespace chevcarpet
