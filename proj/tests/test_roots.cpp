#include <gtest/gtest.h>

#include <set>

#include <chevcarpet/random.hpp>
#include <chevcarpet/roots.hpp>

using namespace chevcarpet;

namespace {

int count_long(const RootSystem& rs) {
  int n = 0;
  for (const auto& r : rs.roots()) n += rs.is_long(r);
  return n;
}

// Weyl group order by closure of the action on simple roots.
std::size_t weyl_order(const RootSystem& rs) {
  std::set<std::vector<RootVec>> seen;
  std::vector<WeylElement> frontier{WeylElement{}};
  auto key = [&](const WeylElement& w) {
    std::vector<RootVec> k;
    for (const auto& s : rs.simple_roots()) k.push_back(rs.apply(w, s));
    return k;
  };
  seen.insert(key(WeylElement{}));
  while (!frontier.empty()) {
    std::vector<WeylElement> next;
    for (const auto& w : frontier)
      for (int i = 0; i < rs.rank(); ++i) {
        WeylElement t = RootSystem::multiply(w, WeylElement{{i}});
        if (seen.insert(key(t)).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST(BuildSystem, Counts) {
  auto c2 = RootSystem::build(RootType::C, 2);
  EXPECT_EQ(c2.roots().size(), 8u);
  EXPECT_EQ(count_long(c2), 4);
  auto b3 = RootSystem::build(RootType::B, 3);
  EXPECT_EQ(b3.roots().size(), 18u);
  EXPECT_EQ(18 - count_long(b3), 6);
  auto g2 = RootSystem::build(RootType::G2);
  EXPECT_EQ(g2.roots().size(), 12u);
  EXPECT_EQ(count_long(g2), 6);
  auto f4 = RootSystem::build(RootType::F4);
  EXPECT_EQ(f4.roots().size(), 48u);
  EXPECT_EQ(count_long(f4), 24);
  EXPECT_THROW(RootSystem::build(RootType::B, 1), DomainError);
  for (int l = 2; l <= 5; ++l)
    for (auto t : {RootType::B, RootType::C})
      EXPECT_EQ(RootSystem::build(t, l).roots().size(), static_cast<std::size_t>(2 * l * l));
}

TEST(BuildSystem, PositiveSystemClosedAndHeights) {
  for (auto [t, l] : {std::pair{RootType::B, 3}, {RootType::C, 3}, {RootType::F4, 4}, {RootType::G2, 2}}) {
    auto rs = RootSystem::build(t, l);
    for (const auto& r : rs.roots()) {
      EXPECT_NE(rs.is_positive(r), rs.is_positive(RootSystem::negate(r)));
      EXPECT_TRUE(rs.is_root(RootSystem::negate(r)));
    }
    for (const auto& a : rs.positive_roots())
      for (const auto& b : rs.positive_roots()) {
        auto s = RootSystem::add(a, b);
        if (rs.is_root(s)) EXPECT_TRUE(rs.is_positive(s));
      }
    // height equals the sum of simple coefficients
    for (const auto& a : rs.positive_roots()) {
      const auto& c = rs.simple_coefficients(a);
      int h = 0;
      for (int x : c) {
        EXPECT_GE(x, 0);
        h += x;
      }
      EXPECT_EQ(h, rs.height(a));
    }
  }
  // highest roots
  EXPECT_EQ(RootSystem::build(RootType::G2).positive_roots().back(), (RootVec{-1, -1, 2}));
  EXPECT_EQ(RootSystem::build(RootType::C, 3).positive_roots().back(), (RootVec{2, 0, 0}));
}

TEST(Pairing, Examples) {
  auto b2 = RootSystem::build(RootType::B, 2);
  RootVec a = b2.parse("e1-e2"), b = b2.parse("e2");
  EXPECT_EQ(b2.pairing(a, a), 2);
  EXPECT_EQ(b2.pairing(a, b), -2);
  EXPECT_EQ(b2.pairing(b, a), -1);
  EXPECT_EQ(b2.pairing(b2.parse("e1"), b), 0);
  auto g2 = RootSystem::build(RootType::G2);
  std::set<int> values;
  for (const auto& x : g2.roots())
    for (const auto& y : g2.roots()) values.insert(g2.pairing(x, y));
  EXPECT_EQ(values, (std::set<int>{-3, -2, -1, 0, 1, 2, 3}));
}

TEST(StructureConstants, Examples) {
  auto b2 = RootSystem::build(RootType::B, 2);
  RootVec a = b2.parse("e1-e2"), b = b2.parse("e2");
  EXPECT_EQ(b2.structure_constant_magnitude(a, b, 1, 1), 1);
  EXPECT_EQ(b2.structure_constant_magnitude(a, b, 1, 2), 1);
  EXPECT_EQ(b2.structure_constant_magnitude(b2.parse("e1"), b, 1, 1), 2);
  EXPECT_EQ(b2.structure_constant_magnitude(b2.parse("e1+e2"), b2.parse("e1-e2"), 1, 1), 0);
  auto c2 = RootSystem::build(RootType::C, 2);
  EXPECT_EQ(c2.structure_constant_magnitude(c2.parse("e1-e2"), c2.parse("e1+e2"), 1, 1), 2);
  EXPECT_EQ(c2.structure_constant_magnitude(c2.parse("2e2"), c2.parse("e1-e2"), 1, 2), 1);
}

TEST(StructureConstants, G2) {
  auto g2 = RootSystem::build(RootType::G2);
  RootVec a = g2.simple(0), b = g2.simple(1);
  EXPECT_EQ(g2.structure_constant_magnitude(a, b, 1, 1), 1);
  EXPECT_EQ(g2.structure_constant_magnitude(a, b, 2, 1), 1);
  EXPECT_EQ(g2.structure_constant_magnitude(a, b, 3, 1), 1);
  EXPECT_EQ(g2.structure_constant_magnitude(a, b, 3, 2), 1);
  EXPECT_EQ(g2.structure_constant_magnitude(b, a, 2, 3), 2);
  // short pair a, a+b: N = 2, C_21 = 3
  RootVec ab = RootSystem::add(a, b);
  EXPECT_EQ(g2.structure_constant_magnitude(a, ab, 1, 1), 2);
  EXPECT_EQ(g2.structure_constant_magnitude(a, ab, 2, 1), 3);
  int max = 0;
  for (const auto& x : g2.roots())
    for (const auto& y : g2.roots())
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) max = std::max(max, g2.structure_constant_magnitude(x, y, i, j));
  EXPECT_EQ(max, 3);
}

TEST(StructureConstants, SupportMatchesRootSums) {
  for (auto t : {RootType::B, RootType::C}) {
    auto rs = RootSystem::build(t, 3);
    for (const auto& a : rs.roots())
      for (const auto& b : rs.roots()) {
        if (a == b || a == RootSystem::negate(b)) continue;
        for (int i = 1; i <= 3; ++i)
          for (int j = 1; j <= 3; ++j)
            EXPECT_EQ(rs.structure_constant_magnitude(a, b, i, j) != 0, rs.is_root(RootSystem::add(a, b, i, j)));
      }
  }
}

TEST(Weyl, InversionSets) {
  auto c2 = RootSystem::build(RootType::C, 2);
  EXPECT_TRUE(c2.inversion_set(WeylElement{}).empty());
  for (int i = 0; i < 2; ++i) {
    auto inv = c2.inversion_set(WeylElement{{i}});
    ASSERT_EQ(inv.size(), 1u);
    EXPECT_EQ(inv[0], c2.simple(i));
  }
  WeylElement w0 = c2.longest();
  EXPECT_EQ(w0.word.size(), 4u);
  EXPECT_EQ(c2.inversion_set(w0).size(), 4u);
  EXPECT_EQ(c2.word_string(w0), "s1 s2 s1 s2");
}

TEST(Weyl, GroupOrders) {
  EXPECT_EQ(weyl_order(RootSystem::build(RootType::C, 2)), 8u);
  EXPECT_EQ(weyl_order(RootSystem::build(RootType::B, 3)), 48u);
  EXPECT_EQ(weyl_order(RootSystem::build(RootType::G2)), 12u);
}

TEST(Weyl, ReducedWordsAndPairings) {
  auto rs = RootSystem::build(RootType::C, 3);
  Rng rng(4);
  const auto& roots = rs.roots();
  for (int t = 0; t < 100; ++t) {
    WeylElement w;
    int len = uniform_int(rng, 0, 12);
    for (int k = 0; k < len; ++k) w.word.push_back(uniform_int(rng, 0, 2));
    const auto& a = roots[uniform_int(rng, 0, static_cast<int>(roots.size()) - 1)];
    const auto& b = roots[uniform_int(rng, 0, static_cast<int>(roots.size()) - 1)];
    EXPECT_EQ(rs.pairing(rs.apply(w, a), rs.apply(w, b)), rs.pairing(a, b));
    WeylElement r = rs.reduced(w);
    EXPECT_TRUE(rs.equal(r, w));
    EXPECT_EQ(static_cast<int>(r.word.size()), rs.length(w));
    EXPECT_EQ(rs.reduced(r).word, r.word);
  }
}

TEST(RootText, RoundTrip) {
  for (auto [t, l] : {std::pair{RootType::B, 3}, {RootType::C, 3}, {RootType::F4, 4}, {RootType::G2, 2}}) {
    auto rs = RootSystem::build(t, l);
    for (const auto& r : rs.roots()) EXPECT_EQ(rs.parse(rs.to_string(r)), r) << rs.to_string(r);
  }
  auto c2 = RootSystem::build(RootType::C, 2);
  EXPECT_EQ(c2.to_string(c2.parse("2e1")), "2e1");
  EXPECT_EQ(c2.to_string(c2.parse("-e1+e2")), "-e1+e2");
  EXPECT_THROW(c2.parse("e1"), ParseError);
  EXPECT_THROW(c2.parse("e3-e1"), ParseError);
  auto f4 = RootSystem::build(RootType::F4);
  EXPECT_EQ(f4.to_string(f4.simple(3)), "1/2e1-1/2e2-1/2e3-1/2e4");
}

TEST(CommutingRoot, Examples) {
  auto b2 = RootSystem::build(RootType::B, 2);
  auto r = find_commuting_root(b2, {b2.parse("e1")});
  ASSERT_TRUE(r);
  EXPECT_EQ(b2.to_string(r->alpha), "e1+e2");
  auto c2 = RootSystem::build(RootType::C, 2);
  r = find_commuting_root(c2, c2.positive_roots());
  ASSERT_TRUE(r);
  EXPECT_EQ(c2.to_string(r->alpha), "e1+e2");
}

TEST(CommutingRoot, ExhaustiveAgainstBruteForce) {
  for (auto t : {RootType::B, RootType::C}) {
    auto rs = RootSystem::build(t, 2);
    const auto& pos = rs.positive_roots();
    bool want_long = t == RootType::B;
    for (int mask = 1; mask < 16; ++mask) {
      std::vector<RootVec> delta;
      for (int k = 0; k < 4; ++k)
        if (mask >> k & 1) delta.push_back(pos[k]);
      // independent criterion: B needs every a+g, 2a+g, a+2g outside Φ; C in char 2
      // additionally tolerates a short+short sum landing on a long root (constant 2)
      auto ok = [&](const RootVec& a) {
        if (rs.is_long(a) != want_long) return false;
        for (const auto& g : delta) {
          if (g == a) continue;
          for (auto [i, j] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
            RootVec s = RootSystem::add(a, g, i, j);
            if (!rs.is_root(s)) continue;
            bool even = t == RootType::C && i == 1 && j == 1 && rs.is_short(a) && rs.is_short(g) && rs.is_long(s);
            if (!even) return false;
          }
        }
        for (const auto& b : delta)
          if (rs.inner(a, b) != 0) return true;
        return false;
      };
      bool brute = false;
      for (const auto& a : pos) brute |= ok(a);
      auto r = find_commuting_root(rs, delta);
      EXPECT_EQ(r.has_value(), brute) << rs.name() << " mask " << mask;
      if (r) {
        EXPECT_TRUE(ok(r->alpha));
        EXPECT_NE(std::find(delta.begin(), delta.end(), r->beta), delta.end());
        EXPECT_NE(rs.inner(r->alpha, r->beta), 0);
      }
    }
  }
}
