#include <gtest/gtest.h>

#include <chevcarpet/random.hpp>
#include <chevcarpet/scalars.hpp>

#include "oracle.hpp"

using namespace chevcarpet;

namespace {

FieldPtr F2x1() { return rational_field(2, 1); }
FieldPtr F2x2() { return rational_field(2, 2); }

Scalar S(const char* text, const FieldPtr& f) { return parse_scalar(text, f); }

}  // namespace

TEST(FieldParse, Names) {
  EXPECT_EQ(parse_field("F2(x1,x2)")->name(), "F2(x1,x2)");
  EXPECT_EQ(parse_field("F3(x1..x3)")->nvars, 3);
  EXPECT_EQ(parse_field("GF(9)")->order(), 9);
  EXPECT_THROW(parse_field("GF(8)"), DomainError);
  EXPECT_THROW(parse_field("F5(x1)"), ParseError);
  EXPECT_THROW(parse_field("F2(x2)"), ParseError);
}

TEST(ParseScalar, Basics) {
  auto f = F2x2();
  EXPECT_TRUE(S("0", f).is_zero());
  Scalar a = S("x1^2 + x2", f);
  EXPECT_EQ(a.num().size(), 2u);
  EXPECT_EQ(a.to_string(), "x1^2+x2");
  EXPECT_TRUE(S("(x1+1)/(x1)", f) == S("(x1^2+x1)/(x1^2)", f));
}

TEST(ParseScalar, Errors) {
  auto f = F2x2();
  EXPECT_THROW(S("x3", f), ParseError);
  EXPECT_THROW(S("x1+", f), ParseError);
  EXPECT_THROW(S("(x1", f), ParseError);
  EXPECT_THROW(S("1/(x1+x1)", f), ParseError);
  EXPECT_THROW(S("", f), ParseError);
}

TEST(ParseScalar, RenderRoundTrip) {
  auto f = rational_field(3, 3);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Scalar a = random_scalar(f, rng);
    Scalar b = parse_scalar(a.to_string(), f);
    EXPECT_TRUE(a == b) << a.to_string();
    EXPECT_EQ(a.to_string(), b.to_string());
  }
}

TEST(ParseScalar, GradedLexRendering) {
  auto f = rational_field(3, 2);
  EXPECT_EQ(S("1 + x2 + x1 + x1*x2 + 2x1^2", f).to_string(), "2x1^2+x1*x2+x1+x2+1");
  EXPECT_EQ(S("-x1", f).to_string(), "2x1");
}

TEST(ScalarArith, CharacteristicIdentities) {
  auto f = F2x1();
  Scalar x = S("x1", f);
  EXPECT_TRUE((x + x).is_zero());
  EXPECT_TRUE(-x == x);
  Scalar a = S("x1+1", f);
  EXPECT_TRUE((a * a.inv()).is_one());
  auto g = F2x2();
  EXPECT_TRUE(S("(x1+1)/x2", g) == S("(x1^2+1)/(x2*(x1+1))", g));
  EXPECT_THROW(Scalar::zero(f).inv(), DomainError);
  EXPECT_THROW(x + S("x1", g), DomainError);
}

TEST(ScalarArith, UnivariateFractionsReduce) {
  auto f = F2x1();
  Scalar a = S("(x1^2+1)/(x1+1)", f);
  EXPECT_EQ(a.to_string(), "x1+1");
  Scalar b = S("1/(x1+1) + 1/(x1^2+1)", f);
  EXPECT_EQ(b.to_string(), "(x1)/(x1^2+1)");
}

TEST(ScalarArith, FiniteFields) {
  auto gf4 = finite_field(4);
  Scalar w = Scalar::variable(gf4, 0);
  EXPECT_TRUE(w * w == w + Scalar::one(gf4));
  EXPECT_TRUE(w.pow(3).is_one());
  auto gf9 = finite_field(9);
  Scalar i = Scalar::variable(gf9, 0);
  EXPECT_TRUE(i * i == Scalar::from_int(gf9, -1));
  EXPECT_EQ(i.pow(8).to_string(), "1");
  for (int c = 1; c < 9; ++c) {
    Scalar a = Scalar::from_code(gf9, c);
    EXPECT_TRUE((a * a.inv()).is_one());
  }
  EXPECT_EQ(parse_scalar("x1+1", gf4).to_string(), "x1+1");
  EXPECT_EQ(parse_scalar("2x1+2", gf9).code(), 8);
}

TEST(ScalarProperties, EqualityIsCongruence) {
  // 500 triples: a ~ a' built as (a*k)/(1*k), transitivity and compatibility
  auto f = F2x2();
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    Scalar a = random_scalar(f, rng), b = random_scalar(f, rng);
    Scalar k = random_nonzero_scalar(f, rng, false, 1);
    Scalar a1 = Scalar::fraction(f, (a.num() * k.num()), a.den() * k.num());
    Scalar a2 = Scalar::fraction(f, (a1.num() * k.num()), a1.den() * k.num());
    ASSERT_TRUE(a == a1);
    ASSERT_TRUE(a1 == a2);
    ASSERT_TRUE(a == a2);
    ASSERT_TRUE(a + b == a1 + b);
    ASSERT_TRUE(a * b == a2 * b);
    ASSERT_TRUE(oracle::same_value(a + b, a1 + b));
  }
}

TEST(ScalarProperties, ArithmeticAgreesWithEvaluationOracle) {
  for (int p : {2, 3}) {
    auto f = rational_field(p, 3);
    Rng rng(p);
    for (int t = 0; t < 150; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_nonzero_scalar(f, rng);
      Scalar lhs = (a + b) * c;
      std::mt19937_64 prng(t);
      std::vector<oracle::Residue> pt;
      for (int i = 0; i < 3; ++i) pt.push_back(oracle::random_residue(p, prng));
      // (a+b)c = (an*bd + bn*ad)*cn / (ad*bd*cd), evaluated independently
      auto an = oracle::eval(a.num(), pt), ad = oracle::eval(a.den(), pt);
      auto bn = oracle::eval(b.num(), pt), bd = oracle::eval(b.den(), pt);
      auto cn = oracle::eval(c.num(), pt), cd = oracle::eval(c.den(), pt);
      auto on = (an * bd + bn * ad) * cn, od = ad * bd * cd;
      ASSERT_TRUE(oracle::eval(lhs.num(), pt) * od == on * oracle::eval(lhs.den(), pt));
      ASSERT_TRUE(oracle::same_value(a / c * c, a));
    }
  }
}

TEST(ScalarProperties, CharacteristicSums) {
  Rng rng(3);
  auto f2 = rational_field(2, 2), f3 = rational_field(3, 2);
  for (int t = 0; t < 100; ++t) {
    Scalar a = random_scalar(f2, rng);
    EXPECT_TRUE((a + a).is_zero());
    Scalar b = random_scalar(f3, rng);
    EXPECT_TRUE((b + b + b).is_zero());
    EXPECT_FALSE(!b.is_zero() && (b + b).is_zero());
  }
}

TEST(Frobenius, Examples) {
  auto f = F2x2();
  EXPECT_TRUE(frobenius(Scalar::zero(f)).is_zero());
  EXPECT_TRUE(frobenius(S("x1+x2", f)) == S("x1^2+x2^2", f));
  EXPECT_TRUE(frobenius(S("1/x1", f)) == S("1/x1^2", f));
  auto gf4 = finite_field(4);
  Scalar w = Scalar::variable(gf4, 0);
  EXPECT_TRUE(frobenius(w) == w * w);
}

TEST(Frobenius, HomomorphismAndInjective) {
  for (int p : {2, 3}) {
    auto f = rational_field(p, 2);
    Rng rng(17 + p);
    for (int t = 0; t < 100; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng);
      EXPECT_TRUE(frobenius(a + b) == frobenius(a) + frobenius(b));
      EXPECT_TRUE(frobenius(a * b) == frobenius(a) * frobenius(b));
      EXPECT_TRUE(frobenius(a) == a.pow(p));
      EXPECT_EQ(frobenius(a) == frobenius(b), a == b);
    }
  }
}

TEST(CoordsOverK, Examples) {
  auto f = F2x1();
  auto c = coords_over_K(S("x1^2", f));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c[0] == S("x1^2", f));
  EXPECT_TRUE(c[1].is_zero());
  c = coords_over_K(S("x1", f));
  EXPECT_TRUE(c[0].is_zero());
  EXPECT_TRUE(c[1].is_one());
  c = coords_over_K(S("1/x1", f));
  EXPECT_TRUE(c[0].is_zero());
  EXPECT_TRUE(c[1] == S("1/x1^2", f));
}

TEST(CoordsOverK, ReconstructionIdentity) {
  for (int p : {2, 3}) {
    auto f = rational_field(p, 2);
    Rng rng(23 + p);
    for (int t = 0; t < 200; ++t) {
      Scalar a = random_scalar(f, rng);
      auto c = coords_over_K(a);
      ASSERT_EQ(c.size(), static_cast<std::size_t>(p * p));
      Scalar acc = Scalar::zero(f);
      for (std::size_t s = 0; s < c.size(); ++s) {
        ASSERT_TRUE(is_in_K(c[s])) << c[s].to_string();
        Monomial m = subfield_basis_monomial(*f, p, s);
        acc += c[s] * Scalar::from_poly(f, MultiPoly::monomial(p, m));
      }
      ASSERT_TRUE(acc == a);
      ASSERT_TRUE(oracle::same_value(acc, a));
    }
  }
}

TEST(CoordsOverK, FourthPowerSubfield) {
  auto f = F2x2();
  auto c = coords_over_K(S("x1^3*x2^5", f), 4);
  ASSERT_EQ(c.size(), 16u);
  // slot of x1^3 x2^1 = 3 + 4*1
  EXPECT_TRUE(c[7] == S("x2^4", f));
  EXPECT_TRUE(is_in_K(S("x1^4+x2^8", f), 4));
  EXPECT_FALSE(is_in_K(S("x1^2", f), 4));
}

TEST(IsInK, Examples) {
  auto f = F2x2();
  EXPECT_TRUE(is_in_K(Scalar::one(f)));
  EXPECT_FALSE(is_in_K(S("x1", f)));
  EXPECT_TRUE(is_in_K(S("x1^2*x2^2+1", f)));
  EXPECT_TRUE(is_in_K(S("1/(x1^2+x2^2)", f)));
}

TEST(PthRoot, InvertsFrobenius) {
  auto f = rational_field(3, 2);
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    Scalar a = random_scalar(f, rng);
    EXPECT_TRUE(pth_root(frobenius(a)) == a);
  }
  EXPECT_THROW(pth_root(S("x1", f)), DomainError);
}

TEST(DegreeCap, Overflow) {
  auto f = F2x1();
  EXPECT_THROW(S("x1^1048577", f), ParseError);
  Scalar big = S("x1^1048576", f);
  EXPECT_THROW(big * S("x1", f), DomainError);
}

TEST(PolyGcd, PlantedCommonFactor) {
  Rng rng(21);
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      auto f = rational_field(p, n);
      for (int k = 0; k < 15; ++k) {
        MultiPoly a = random_poly(*f, rng, 3, 3), b = random_poly(*f, rng, 3, 3), c = random_poly(*f, rng, 2, 2);
        if (a.is_zero() || b.is_zero() || c.is_constant()) continue;
        MultiPoly g = gcd(a * c, b * c);
        EXPECT_TRUE((a * c).exact_div(g).has_value());
        EXPECT_TRUE((b * c).exact_div(g).has_value());
        EXPECT_TRUE(g.exact_div(c).has_value()) << "p=" << p << " n=" << n;
      }
    }
}

TEST(PolyGcd, CoprimeAndZero) {
  auto f = F2x2();
  EXPECT_TRUE(gcd(S("x1", f).num(), S("x1+1", f).num()).is_constant());
  EXPECT_TRUE(gcd(S("x1*x2+1", f).num(), S("x1+x2", f).num()).is_constant());
  MultiPoly a = S("x1^2+x2", f).num();
  EXPECT_TRUE(gcd(a, MultiPoly(2)).exact_div(a).has_value());
}

TEST(ScalarArith, MultivariateFractionsReduce) {
  auto f = rational_field(2, 3);
  Scalar r = S("(x1+x2)*(x3+1)", f) / S("(x1+x2)*(x2*x3+x1)", f);
  EXPECT_EQ(r.to_string(), S("(x3+1)/(x2*x3+x1)", f).to_string());
  EXPECT_TRUE((S("x1*x2+x3", f) / S("x1*x2+x3", f)).is_one());
}
