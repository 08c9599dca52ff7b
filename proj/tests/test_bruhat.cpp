#include <gtest/gtest.h>

#include <chrono>

#include <chevcarpet/bruhat.hpp>

using namespace chevcarpet;

namespace {

Scalar S(const FieldPtr& f, const char* t) { return parse_scalar(t, f); }

void expect_valid(const BruhatForm& b, const Matrix& g) {
  const RootSystem& rs = system_for(RootType::C, b.rank);
  auto inv = rs.inversion_set(b.w);
  for (const auto& [a, t] : b.v) EXPECT_NE(std::find(inv.begin(), inv.end(), a), inv.end());
  for (const auto& [a, t] : b.u) EXPECT_TRUE(rs.is_positive(a));
  EXPECT_EQ(recompose(b, g.field()), g);
  EXPECT_EQ(b.w.word, rs.reduced(b.w).word);
}

}  // namespace

TEST(Bruhat, Identity) {
  auto f = rational_field(2, 1);
  auto b = bruhat_decompose(Matrix::identity(f, 4));
  EXPECT_TRUE(b.u.empty());
  EXPECT_TRUE(b.v.empty());
  EXPECT_TRUE(b.w.word.empty());
  for (const auto& d : b.torus) EXPECT_TRUE(d.is_one());
  EXPECT_EQ(bruhat_json(b), R"({"u":[],"torus":["1","1"],"w":"1","v":[]})");
}

TEST(Bruhat, PositiveRootElementIsInB) {
  auto f = rational_field(2, 1);
  const RootSystem& c3 = system_for(RootType::C, 3);
  for (const auto& a : c3.positive_roots()) {
    auto b = bruhat_decompose(gen_matrix(a, S(f, "x1+1")));
    ASSERT_EQ(b.u.size(), 1u);
    EXPECT_EQ(b.u[0].first, a);
    EXPECT_EQ(b.u[0].second, S(f, "x1+1"));
    EXPECT_TRUE(b.w.word.empty());
    EXPECT_TRUE(b.v.empty());
  }
}

TEST(Bruhat, NegativeRootRankOneBlock) {
  // x_{-α}(t) = x_α(1/t) h_α(1/t) n_{s_α} x_α(1/t)
  auto f = rational_field(2, 1);
  const RootSystem& c2 = system_for(RootType::C, 2);
  Scalar t = S(f, "x1"), ti = t.inv();
  for (const auto& a : c2.positive_roots()) {
    Matrix g = gen_matrix(RootSystem::negate(a), t);
    auto b = bruhat_decompose(g);
    ASSERT_EQ(b.u.size(), 1u);
    ASSERT_EQ(b.v.size(), 1u);
    EXPECT_EQ(b.u[0].first, a);
    EXPECT_EQ(b.u[0].second, ti);
    EXPECT_EQ(b.v[0].first, a);
    EXPECT_EQ(b.v[0].second, ti);
    for (const auto& s : c2.simple_roots()) EXPECT_EQ(c2.apply(b.w, s), c2.reflect(a, s));
    EXPECT_EQ(torus_diagonal(b.torus), torus_matrix(a, ti));
    expect_valid(b, g);
  }
  auto b = bruhat_decompose(gen_matrix(c2.parse("-2e1"), t));
  EXPECT_EQ(bruhat_json(b), R"j({"u":[["2e1","(1)/(x1)"]],"torus":["(1)/(x1)","1"],"w":"s1 s2 s1","v":[["2e1","(1)/(x1)"]]})j");
}

TEST(Bruhat, LongestElementAndWeylRepresentatives) {
  auto f = rational_field(2, 1);
  const RootSystem& c3 = system_for(RootType::C, 3);
  WeylElement w0 = c3.longest();
  auto b = bruhat_decompose(weyl_representative(c3, w0, f));
  EXPECT_EQ(b.w.word, w0.word);
  EXPECT_EQ(c3.length(b.w), 9);
  EXPECT_TRUE(b.u.empty());
  EXPECT_TRUE(b.v.empty());
}

TEST(Bruhat, RejectsBadInput) {
  auto f = rational_field(2, 1);
  Matrix z(f, 4);
  EXPECT_THROW(bruhat_decompose(z), DomainError);
  Matrix d = Matrix::identity(f, 4);
  d(0, 0) = S(f, "x1");
  EXPECT_THROW(bruhat_decompose(d), DomainError);
}

TEST(UnipotentCoordinates, PeelInHeightOrder) {
  auto f = rational_field(2, 2);
  const RootSystem& c2 = system_for(RootType::C, 2);
  EXPECT_TRUE(unipotent_coordinates(Matrix::identity(f, 4), c2.positive_roots()).empty());
  Scalar a = S(f, "x1"), bb = S(f, "x2+1");
  Matrix u = gen_matrix(c2.parse("e1-e2"), a) * gen_matrix(c2.parse("2e1"), bb);
  auto cs = unipotent_coordinates(u, c2.positive_roots());
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].first, c2.parse("e1-e2"));
  EXPECT_EQ(cs[0].second, a);
  EXPECT_EQ(cs[1].first, c2.parse("2e1"));
  EXPECT_EQ(cs[1].second, bb);
  Rng rng(3);
  Matrix all = Matrix::identity(f, 4);
  for (const auto& r : c2.positive_roots()) all = all * gen_matrix(r, random_nonzero_scalar(f, rng, false, 1));
  auto cs2 = unipotent_coordinates(all, c2.positive_roots());
  EXPECT_EQ(cs2.size(), 4u);
  EXPECT_EQ(product_of(cs2, f, 2), all);
}

TEST(Bruhat, RoundtripAndUniquenessSp6) {
  auto f = rational_field(2, 1);
  Rng rng(0);
  auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < 20; ++k) {
    Word w = random_word(RootType::C, 3, f, rng, 30);
    Matrix g = word_matrix(w, f);
    auto b = bruhat_decompose(g);
    expect_valid(b, g);
    EXPECT_EQ(bruhat_decompose(recompose(b, f)), b);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RecordProperty("seconds", std::to_string(secs));
}

TEST(Bruhat, GF4Matrices) {
  auto f = finite_field(4);
  Rng rng(6);
  for (int k = 0; k < 30; ++k) {
    Matrix g = word_matrix(random_word(RootType::C, 2, f, rng, 20), f);
    auto b = bruhat_decompose(g);
    expect_valid(b, g);
  }
}

#include <chevcarpet/membership.hpp>

namespace {

KModule span_of(const FieldPtr& f, std::initializer_list<const char*> items) {
  std::vector<Scalar> g;
  for (auto t : items) g.push_back(parse_scalar(t, f));
  return KModule::span(f, g);
}

}  // namespace

TEST(Membership, GeneratorsAndWitness) {
  auto f = rational_field(2, 1);
  KModule F = KModule::whole_field(f);
  Carpet c(RootSystem::build(RootType::C, 2), span_of(f, {"1", "x1^2"}), F);
  auto in = carpet_membership({gen_matrix({2, 0}, S(f, "x1^2+1")), std::nullopt}, c);
  EXPECT_EQ(in.verdict, Verdict::member);
  auto out = carpet_membership({gen_matrix({2, 0}, S(f, "x1")), std::nullopt}, c);
  EXPECT_EQ(out.verdict, Verdict::not_member);
  ASSERT_TRUE(out.witness);
  EXPECT_EQ(*out.witness, S(f, "x1"));
  EXPECT_EQ(*out.root, (RootVec{2, 0}));
}

TEST(Membership, TorusVerdicts) {
  auto f = rational_field(2, 1);
  KModule K = KModule::subfield(f), F = KModule::whole_field(f);
  Carpet full(RootSystem::build(RootType::C, 2), F, F);
  Matrix h = torus_matrix({1, -1}, S(f, "x1"));
  EXPECT_EQ(carpet_membership({h, std::nullopt}, full).verdict, Verdict::member);
  // x1 ∉ K: no certificate without provenance
  Carpet small(RootSystem::build(RootType::C, 2), K, K);
  EXPECT_EQ(carpet_membership({h, std::nullopt}, small).verdict, Verdict::torus_undetermined);
  Matrix hk = torus_matrix({1, -1}, S(f, "x1^2"));
  EXPECT_EQ(carpet_membership({hk, std::nullopt}, small).verdict, Verdict::member);
}

TEST(Membership, TorusProvenance) {
  // diag(x1, x2): the simple-coroot factor h_{2e2}(x1 x2) leaves Q, the word does not
  auto f = rational_field(2, 2);
  KModule Q = span_of(f, {"1", "x1", "x2"});
  Carpet c(RootSystem::build(RootType::C, 2), Q, KModule::whole_field(f));
  Word w = parse_word("h[2e1](x1); h[2e2](x2)", RootType::C, 2, f);
  Matrix g = word_matrix(w, f);
  EXPECT_EQ(carpet_membership({g, std::nullopt}, c).verdict, Verdict::torus_undetermined);
  auto v = carpet_membership(element_from_word(w, f), c);
  EXPECT_EQ(v.verdict, Verdict::member);
  EXPECT_EQ(v.certificate, "torus symbols with carpet parameters");
}

TEST(Membership, TypeBThroughPsi) {
  auto f = rational_field(2, 1);
  KModule K = KModule::subfield(f), F = KModule::whole_field(f);
  Carpet b(RootSystem::build(RootType::B, 2), K, F);
  // ψ(x_{e1}(x1)) = x_{2e1}(x1^2)
  Word w = parse_word("x[e1](x1)", RootType::B, 2, f);
  EXPECT_EQ(carpet_membership(element_from_word(w, f), b).verdict, Verdict::member);
  // x_{2e1}(x1) is not a ψ-image
  auto v = carpet_membership({gen_matrix({2, 0}, S(f, "x1")), std::nullopt}, b);
  EXPECT_EQ(v.verdict, Verdict::not_member);
  Word wl = parse_word("x[e1-e2](x1)", RootType::B, 2, f);
  EXPECT_EQ(carpet_membership(element_from_word(wl, f), b).verdict, Verdict::not_member);
}

TEST(Membership, ClosureOnRandomCarpetWords) {
  // C3 with short roots F and long roots span{1, x2, x3} over F2(x1, x2, x3)
  auto f = rational_field(2, 3);
  Carpet c(RootSystem::build(RootType::C, 3), span_of(f, {"1", "x2", "x3"}), KModule::whole_field(f));
  Rng rng(12);
  int rejected = 0;
  for (int k = 0; k < 6; ++k) {
    Word w = random_carpet_word(c, rng, 12);
    auto v = carpet_membership(element_from_word(w, f), c);
    EXPECT_NE(v.verdict, Verdict::not_member) << word_to_string(w);
    for (const RootCoords* part : {&v.form.u, &v.form.v})
      for (const auto& [a, t] : *part) EXPECT_TRUE(coordinate_in_carpet(c, a, t));
    std::size_t at = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(w.size())));
    w.symbols.insert(w.symbols.begin() + static_cast<std::ptrdiff_t>(at), Symbol{SymbolKind::root_elt, {0, 0, 2}, S(f, "x1")});
    rejected += carpet_membership(element_from_word(w, f), c).verdict == Verdict::not_member;
  }
  EXPECT_EQ(rejected, 6);
}
