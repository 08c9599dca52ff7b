#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Invocation {
  int status = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  std::string cmd = std::string(CHEVCARPET_CLI) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(CHEVCARPET_DATA) + "/" + name; }

nlohmann::json json_of(const Invocation& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, CounterexamplesPass) {
  Invocation r = run("counterexamples --n 4 --json");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = json_of(r);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "counterexamples");
  EXPECT_TRUE(j["ok"].get<bool>());
  std::string text = j["report"].dump();
  EXPECT_NE(text.find("x1*x2"), std::string::npos);
  EXPECT_NE(text.find("x1^3"), std::string::npos);
}

TEST(Cli, BruhatOfNegativeLongRoot) {
  Invocation r = run("bruhat --rank 2 --field \"F2(x1)\" --word \"x[-2e1](x1)\"");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("s[2e1]"), std::string::npos) << r.out;
  auto j = json_of(run("bruhat --rank 2 --field \"F2(x1)\" --word \"x[-2e1](x1)\" --json"));
  EXPECT_EQ(j["report"]["w"], "s1 s2 s1");
  EXPECT_FALSE(j.contains("seed"));
}

TEST(Cli, WordFromFile) {
  Invocation a = run("membership --pair " + data("c2_mixed_rational.json") + " --word @" + data("word_c2_member.txt") + " --json");
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(json_of(a)["report"]["verdict"], "Member");
}

TEST(Cli, PropertyFailureExitsOne) {
  Invocation m = run("membership --pair " + data("c2_mixed_rational.json") + " --word @" + data("word_c2_outside.txt") + " --json");
  ASSERT_EQ(m.status, 1) << m.out;
  auto j = json_of(m);
  EXPECT_EQ(j["report"]["verdict"], "NotMember");
  EXPECT_EQ(j["report"]["witness"], "x1");

  Invocation c = run("carpet check --pair " + data("c2_p2q_fails.json") + " --json");
  ASSERT_EQ(c.status, 1);
  EXPECT_NE(c.out.find("x1^3"), std::string::npos);

  Invocation p = run("pair check --pair " + data("b3_pq_fails.json"));
  EXPECT_EQ(p.status, 1);
}

TEST(Cli, AdmissiblePairsPass) {
  for (const char* f : {"b3_field_short.json", "c3_nonfield_long.json", "c2_neither_field.json", "c2_mixed_rational.json"}) {
    EXPECT_EQ(run("pair check --pair " + data(f)).status, 0) << f;
    EXPECT_EQ(run("carpet check --pair " + data(f)).status, 0) << f;
  }
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("bruhat").status, 2);
  EXPECT_EQ(run("bruhat --word \"x[9e1](x1)\"").status, 2);
  EXPECT_EQ(run("bruhat --word \"x[2e1](x1\"").status, 2);
  EXPECT_EQ(run("pair check --pair /nonexistent.json").status, 2);
  EXPECT_EQ(run("bruhat --word @/nonexistent.txt").status, 2);
  EXPECT_EQ(run("symbols --p 5").status, 2);
  EXPECT_EQ(run("sl2 enumerate --case a5-F9 --cap 50").status, 2);
  EXPECT_EQ(run("bn verify --instance nope").status, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").status, 0); }

TEST(Cli, RandomizedCommandsPrintSeed) {
  Invocation t = run("symbols --trials 5 --seed 17");
  EXPECT_EQ(t.status, 0);
  EXPECT_NE(t.out.find("seed 17"), std::string::npos) << t.out;
  auto j = json_of(run("relations verify --trials 2 --seed 4 --json"));
  EXPECT_EQ(j["seed"], 4);
  EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Cli, SameSeedSameBytes) {
  for (const char* args : {"morphism roundtrip --trials 10 --seed 5 --json", "perfectness --trials 3 --seed 9 --json",
                           "bn verify --instance mixed-rational-sampled --trials 20 --seed 2 --json"}) {
    Invocation a = run(args), b = run(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
  EXPECT_NE(run("perfectness --trials 3 --seed 9 --json").out, run("perfectness --trials 3 --seed 10 --json").out);
}

TEST(Cli, FiniteCases) {
  auto d = json_of(run("sl2 enumerate --case dihedral-F4 --json"));
  EXPECT_EQ(d["report"]["order"], 10);
  EXPECT_EQ(d["report"]["product_order"], 5);
  auto a = json_of(run("sl2 enumerate --case a5-F9 --json"));
  EXPECT_EQ(a["report"]["psl_order"], 60);
  Invocation p = run("perfectness --field \"GF(2)\" --json");
  EXPECT_EQ(p.status, 0);
  auto pj = json_of(p);
  EXPECT_FALSE(pj["report"]["applicable"].get<bool>());
  EXPECT_EQ(pj["report"]["group_order"], 720);
  EXPECT_EQ(pj["report"]["derived_order"], 360);
}
