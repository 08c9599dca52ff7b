#include <gtest/gtest.h>

#include <map>
#include <set>

#include <chevcarpet/bn_pair.hpp>
#include <chevcarpet/perfectness.hpp>

using namespace chevcarpet;

namespace {

// |SL2(q)| = q(q^2 - 1)
std::size_t sl2_order(std::size_t q) { return q * (q * q - 1); }

std::vector<SmallMatrix> sl2_generators(int q) {
  std::vector<SmallMatrix> gens;
  for (int c = 1; c < q; ++c) {
    SmallMatrix a = SmallMatrix::identity(2), b = SmallMatrix::identity(2);
    a(0, 1) = static_cast<std::uint8_t>(c);
    b(1, 0) = static_cast<std::uint8_t>(c);
    gens.push_back(a);
    gens.push_back(b);
  }
  return gens;
}

}  // namespace

TEST(SmallField, TablesAgreeWithScalars) {
  for (int q : {2, 3, 4, 9}) {
    const SmallField& sf = SmallField::get(q);
    auto f = finite_field(q);
    for (int a = 0; a < q; ++a) {
      Scalar x = Scalar::from_code(f, a);
      EXPECT_EQ(sf.neg[a], (-x).code());
      if (a) {
        EXPECT_EQ(sf.inv[a], x.inv().code());
      }
      for (int b = 0; b < q; ++b) {
        Scalar y = Scalar::from_code(f, b);
        EXPECT_EQ(sf.add[a][b], (x + y).code());
        EXPECT_EQ(sf.mul[a][b], (x * y).code());
      }
    }
  }
  EXPECT_THROW(SmallField::get(5), DomainError);
}

TEST(SmallMatrix, KeyRoundTripAndPack) {
  auto f = finite_field(9);
  Matrix m(f, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Scalar::from_code(f, (3 * i + j) % 9);
  SmallMatrix s = pack(m);
  EXPECT_EQ(SmallMatrix::from_key(4, s.key()), s);
  EXPECT_EQ(unpack(s, f), m);
  EXPECT_THROW(pack(Matrix::identity(rational_field(2, 1), 2)), DomainError);
}

TEST(SmallMatrix, InverseAgainstIdentity) {
  for (int q : {2, 3, 4, 9}) {
    const SmallField& f = SmallField::get(q);
    FiniteGroup g = enumerate_closure(f, sl2_generators(q));
    for (std::size_t i = 0; i < g.order(); ++i) {
      SmallMatrix x = g.at(i);
      EXPECT_EQ(multiply(f, x, inverse(f, x)), SmallMatrix::identity(2));
    }
  }
}

TEST(Closure, Sl2Orders) {
  for (int q : {2, 3, 4, 9}) {
    FiniteGroup g = enumerate_closure(SmallField::get(q), sl2_generators(q));
    EXPECT_EQ(g.order(), sl2_order(static_cast<std::size_t>(q))) << "q = " << q;
    EXPECT_EQ(g.index.size(), g.order());
  }
}

TEST(Closure, CapIsEnforced) {
  EXPECT_THROW(enumerate_closure(SmallField::get(9), sl2_generators(9), 100), CapExceeded);
}

TEST(Closure, DerivedSubgroupOfSl2) {
  // SL2(2) = S3 has derived subgroup A3; SL2(4) = A5 is perfect
  const SmallField& f2 = SmallField::get(2);
  EXPECT_EQ(derived_subgroup(enumerate_closure(f2, sl2_generators(2))).order(), 3u);
  const SmallField& f4 = SmallField::get(4);
  EXPECT_EQ(derived_subgroup(enumerate_closure(f4, sl2_generators(4))).order(), 60u);
}

TEST(Closure, ElementOrders) {
  const SmallField& f = SmallField::get(3);
  FiniteGroup g = enumerate_closure(f, sl2_generators(3));
  std::map<int, int> histogram;
  for (std::size_t i = 0; i < g.order(); ++i) ++histogram[element_order(f, g.at(i))];
  // SL2(3): 1 identity, 1 element of order 2, 6 of order 4, 8 of order 3, 8 of order 6
  EXPECT_EQ(histogram, (std::map<int, int>{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}}));
  EXPECT_EQ(projective_order(g), 12u);
}

TEST(Sl2Enumerate, DihedralOverF4) {
  auto rep = sl2_enumerate("dihedral-F4");
  EXPECT_TRUE(rep.involutions);
  EXPECT_EQ(rep.product_order, 5);
  EXPECT_EQ(rep.order, 10u);
  EXPECT_TRUE(rep.dihedral);
  EXPECT_TRUE(rep.holds);
}

TEST(Sl2Enumerate, A5OverF9) {
  auto rep = sl2_enumerate("a5-F9");
  EXPECT_EQ(rep.order, 120u);
  EXPECT_EQ(rep.centre, 2u);
  EXPECT_EQ(rep.psl_order, 60u);
  EXPECT_TRUE(rep.perfect);
  EXPECT_TRUE(rep.holds);
  EXPECT_THROW(sl2_enumerate("a6-F9"), DomainError);
}

TEST(Sp4, ClassicalOrderFormula) {
  EXPECT_EQ(classical_sp4_order(2), 720u);
  EXPECT_EQ(classical_sp4_order(3), 51840u);
  EXPECT_EQ(classical_sp4_order(4), 979200u);
}

TEST(Sp4, RootSubgroupsGenerateOverF2) {
  auto f = finite_field(2);
  std::vector<SmallMatrix> gens;
  for (const auto& a : system_for(RootType::C, 2).roots()) gens.push_back(pack(gen_matrix(a, Scalar::one(f))));
  FiniteGroup g = enumerate_closure(SmallField::get(2), gens);
  EXPECT_EQ(g.order(), 720u);
  // Sp4(2) = S6, whose commutator subgroup is A6
  EXPECT_EQ(derived_subgroup(g).order(), 360u);
}

TEST(BnPair, ExhaustiveOverF2) {
  auto rep = bn_verify_sp4_exhaustive(2);
  EXPECT_TRUE(rep.holds());
  std::map<std::string, std::size_t> counts(rep.counts.begin(), rep.counts.end());
  EXPECT_EQ(counts["G"], 720u);
  EXPECT_EQ(counts["U"], 16u);
  EXPECT_EQ(counts["T"], 1u);
  EXPECT_EQ(counts["N"], 8u);
  std::set<std::string> names;
  for (const auto& a : rep.axioms) names.insert(a.name);
  for (const char* n : {"BN1", "BN2", "BN3", "BN4", "BN5", "split", "saturated"}) EXPECT_TRUE(names.count(n)) << n;
}

TEST(BnPair, MixedRationalSampled) {
  auto rep = bn_verify_mixed_rational(60, 3);
  for (const auto& a : rep.axioms) EXPECT_TRUE(a.holds) << a.name << ": " << a.detail;
  EXPECT_EQ(rep.instance, "mixed-rational-sampled");
}

TEST(BnPair, Dispatch) {
  EXPECT_THROW(bn_verify("sp4-gf5-exhaustive", 1, 0), DomainError);
  EXPECT_EQ(bn_verify("mixed-rational-sampled", 5, 1).instance, "mixed-rational-sampled");
}

TEST(Perfectness, MixedRationalCertificates) {
  auto f = rational_field(2, 1);
  Carpet c = mixed_rational_carpet(f);
  auto rep = perfectness_certificates(c, 6, 11);
  ASSERT_TRUE(rep.applicable);
  EXPECT_EQ(rep.certificates.size(), 8u * 6u);
  EXPECT_EQ(rep.failures, 0u);
  for (const auto& cert : rep.certificates) {
    // [x_a(s), h_b(t)] = x_a(s(t^m - 1)) recomputed from the certificate
    Matrix h = torus_matrix(cert.beta, cert.t);
    EXPECT_EQ(commutator(gen_matrix(cert.alpha, cert.s), h), gen_matrix(cert.alpha, cert.target));
    EXPECT_EQ(cert.s * (cert.t.pow(cert.m) - Scalar::one(f)), cert.target);
    EXPECT_TRUE(c.module(cert.alpha).contains(cert.s));
  }
}

TEST(Perfectness, Sp4OverF2IsInapplicable) {
  auto rep = sp4_gf2_perfectness();
  EXPECT_FALSE(rep.applicable);
  EXPECT_TRUE(rep.certificates.empty());
  ASSERT_TRUE(rep.group_order && rep.derived_order);
  EXPECT_EQ(*rep.group_order, 720u);
  EXPECT_LT(*rep.derived_order, *rep.group_order);
}

TEST(Perfectness, OnlyTypeC) {
  auto f = rational_field(2, 1);
  Carpet c(RootSystem::build(RootType::B, 2), KModule::whole_field(f), KModule::whole_field(f));
  EXPECT_THROW(perfectness_certificates(c, 1, 0), DomainError);
}
