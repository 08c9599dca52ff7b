#include <CLI11.hpp>

#include <chevcarpet/chevcarpet.hpp>

#include <cctype>
#include <deque>
#include <iostream>

using namespace chevcarpet;

namespace {

struct Options {
  std::string field, type = "C", pair, word, instance, which;
  int rank = 2, n = 4, trials = 0, p = 0;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultCap;
  bool json = false;
};

struct Row {
  std::string name, status, detail;
};

struct Outcome {
  bool ok = true;
  bool randomized = false;
  Json report;
  std::vector<Row> rows;
};

std::string status(bool ok) { return ok ? "ok" : "FAIL"; }

void print_rows(const std::vector<Row>& rows) {
  std::size_t w0 = 0, w1 = 0;
  for (const auto& r : rows) {
    w0 = std::max(w0, r.name.size());
    w1 = std::max(w1, r.status.size());
  }
  for (const auto& r : rows) {
    std::string line = r.name + std::string(w0 - r.name.size() + 2, ' ') + r.status;
    if (!r.detail.empty()) line += std::string(w1 - r.status.size() + 2, ' ') + r.detail;
    std::cout << line << "\n";
  }
}

std::string load_word_text(const std::string& arg) {
  std::string s = arg.rfind('@', 0) == 0 ? read_text_file(arg.substr(1)) : arg;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// --field wins; otherwise --p picks the characteristic of the default function field
FieldPtr resolve_field(const Options& o, int p, int vars) {
  if (!o.field.empty()) return parse_field(o.field);
  return rational_field(o.p ? o.p : p, vars);
}

// the simple-reflection word, followed by "= s[beta]" when w is a single reflection
std::string weyl_text(const RootSystem& rs, const WeylElement& w) {
  std::string s = rs.word_string(w);
  for (const auto& b : rs.positive_roots()) {
    bool same = true;
    for (const auto& a : rs.simple_roots()) same = same && rs.apply(w, a) == rs.reflect(b, a);
    if (same) return s + " = s[" + rs.to_string(b) + "]";
  }
  return s;
}

AdmissiblePair load_pair(const Options& o) {
  if (o.pair.empty()) throw ParseError("--pair is required");
  return pair_from_json(parse_json_text(read_text_file(o.pair)));
}

Outcome pair_check(const Options& o) {
  AdmissiblePair pr = load_pair(o);
  auto rep = check_admissible(pr);
  Outcome out{rep.admissible(), false, to_json(rep), {}};
  for (const auto& a : rep.axioms)
    out.rows.push_back({a.axiom, a.holds ? "holds" : a.required ? "FAILS" : "fails (waived)", a.witness ? "witness " + a.witness->to_string() : ""});
  out.rows.push_back({"admissible", status(out.ok), ""});
  return out;
}

Outcome carpet_check(const Options& o) {
  Carpet c = carpet_from_pair(load_pair(o));
  auto rep = check_carpet(c);
  Outcome out{rep.holds(), false, to_json(rep, c.system()), {}};
  for (const auto& cond : rep.distinct())
    out.rows.push_back({cond.condition, cond.holds ? "holds" : "FAILS",
                        cond.holds ? "" : "witness " + (cond.witness ? cond.witness->to_string() : std::string("?")) + " at (" +
                                              c.system().to_string(cond.alpha) + ", " + c.system().to_string(cond.beta) + ")"});
  return out;
}

Outcome counterexamples(const Options& o) {
  auto rep = counterexample_suite(o.n);
  Outcome out{rep.passed(), false, to_json(rep), {}};
  for (const auto& i : rep.items) out.rows.push_back({i.name, status(i.passed), i.detail});
  return out;
}

Outcome bruhat(const Options& o) {
  FieldPtr f = resolve_field(o, 2, 1);
  Word w = parse_word(load_word_text(o.word), parse_root_type(o.type), o.rank, f);
  Matrix g = word_matrix(w, f);
  BruhatForm b = bruhat_decompose(g);
  bool exact = recompose(b, f) == g;
  Outcome out{exact, false, to_json(b), {}};
  out.report["recomposes"] = exact;
  const RootSystem& rs = system_for(RootType::C, o.rank);
  auto coords = [&](const RootCoords& cs) {
    std::string s;
    for (const auto& [a, t] : cs) s += (s.empty() ? "" : " ") + ("x[" + rs.to_string(a) + "](" + t.to_string() + ")");
    return s.empty() ? std::string("1") : s;
  };
  std::string torus;
  for (const auto& t : b.torus) torus += (torus.empty() ? "" : ", ") + t.to_string();
  out.rows = {{"u", "", coords(b.u)}, {"torus", "", "diag(" + torus + ")"}, {"w", "", weyl_text(rs, b.w)},
              {"v", "", coords(b.v)}, {"recomposes", status(exact), ""}};
  return out;
}

Outcome membership(const Options& o) {
  AdmissiblePair pr = load_pair(o);
  Carpet c = carpet_from_pair(pr);
  FieldPtr f = c.field();
  Word w = parse_word(load_word_text(o.word), pr.type, pr.rank, f);
  auto v = carpet_membership(element_from_word(w, f), c);
  Outcome out{v.verdict != Verdict::not_member, false, to_json(v), {}};
  std::string detail = v.certificate;
  if (v.witness) detail = "witness " + v.witness->to_string() + " at " + system_for(RootType::C, pr.rank).to_string(*v.root);
  out.rows = {{"verdict", verdict_name(v.verdict), detail}};
  return out;
}

Outcome morphism_roundtrip(const Options& o) {
  FieldPtr f = resolve_field(o, 2, 2);
  auto rep = frobenius_roundtrip_check(o.rank, o.n, o.trials, o.seed, f);
  Outcome out{rep.holds(), true, to_json(rep), {}};
  out.rows.push_back({"psi.phi / phi.psi", status(rep.holds()), std::to_string(rep.checked) + " words"});
  for (const auto& fl : rep.failures) out.rows.push_back({fl.direction, "FAIL", word_to_string(fl.word)});
  return out;
}

Outcome relations_verify(const Options& o) {
  FieldPtr f = resolve_field(o, 2, 2);
  auto rep = verify_relations(parse_root_type(o.type), o.rank, f, o.trials, o.seed);
  Outcome out{rep.holds(), true, to_json(rep), {}};
  const RootSystem& rs = system_for(rep.tag, rep.rank);
  out.rows.push_back({std::string(1, type_letter(rep.tag)) + std::to_string(rep.rank), status(rep.holds()),
                      std::to_string(rep.checked) + " instances"});
  for (const auto& fl : rep.failures)
    out.rows.push_back({fl.relation, "FAIL", rs.to_string(fl.alpha) + ", " + rs.to_string(fl.beta) + ", r = " + fl.r.to_string() +
                                                ", s = " + fl.s.to_string()});
  return out;
}

Outcome symbols(const Options& o) {
  FieldPtr f = resolve_field(o, 2, 1);
  const RootSystem& rs = system_for(RootType::C, o.rank);
  Rng rng(o.seed);
  Json failures = Json::array();
  for (int k = 0; k < o.trials; ++k) {
    const RootVec& a = rs.roots()[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rs.roots().size()) - 1))];
    Scalar r = random_nonzero_scalar(f, rng), s = random_nonzero_scalar(f, rng);
    if (!symbol_image(r, s, a).is_identity()) failures.push_back({{"root", rs.to_string(a)}, {"r", r.to_string()}, {"s", s.to_string()}});
  }
  Outcome out{failures.empty(), true, {{"checked", o.trials}, {"holds", failures.empty()}, {"failures", failures}}, {}};
  out.rows.push_back({"{r,s} = 1", status(out.ok), std::to_string(o.trials) + " pairs"});
  for (const auto& fl : failures)
    out.rows.push_back({"failure", "FAIL", fl["root"].get<std::string>() + ": {" + fl["r"].get<std::string>() + ", " + fl["s"].get<std::string>() + "}"});
  return out;
}

Outcome sl2(const Options& o) {
  auto rep = sl2_enumerate(o.which, o.cap);
  Outcome out{rep.holds, false, to_json(rep), {}};
  out.rows.push_back({"|M|", "", std::to_string(rep.order)});
  if (rep.q == 4) {
    out.rows.push_back({"involutions", status(rep.involutions), ""});
    out.rows.push_back({"ord(st)", "", std::to_string(rep.product_order)});
    out.rows.push_back({"dihedral of order 2k", status(rep.dihedral), ""});
  } else {
    out.rows.push_back({"|M ∩ scalars|", "", std::to_string(rep.centre)});
    out.rows.push_back({"|image in PSL2|", status(rep.psl_order == 60), std::to_string(rep.psl_order)});
    out.rows.push_back({"perfect", status(rep.perfect), ""});
  }
  return out;
}

Outcome bn(const Options& o) {
  auto rep = bn_verify(o.instance, o.trials, o.seed, o.cap);
  Outcome out{rep.holds(), o.instance != "sp4-gf4-exhaustive", to_json(rep), {}};
  for (const auto& [k, v] : rep.counts) out.rows.push_back({"|" + k + "|", "", std::to_string(v)});
  for (const auto& a : rep.axioms) out.rows.push_back({a.name, status(a.holds), a.detail});
  return out;
}

Outcome perfectness(const Options& o) {
  FieldPtr f = resolve_field(o, 2, 1);
  PerfectnessReport rep;
  Outcome out;
  out.randomized = true;
  const RootSystem& rs = system_for(RootType::C, 2);
  if (f->is_finite()) {
    if (f->order() != 2) throw DomainError("the finite instance is Sp4(GF(2))");
    rep = sp4_gf2_perfectness(o.cap);
    // inapplicable is the expected answer; the enumeration must agree that G is not perfect
    out.ok = !rep.applicable && *rep.derived_order < *rep.group_order;
    out.rows = {{"certificates", "inapplicable", rep.reason},
                {"|G|", "", std::to_string(*rep.group_order)},
                {"|[G,G]|", status(out.ok), std::to_string(*rep.derived_order)}};
  } else {
    Carpet c = o.pair.empty() ? mixed_rational_carpet(f) : carpet_from_pair(load_pair(o));
    rep = perfectness_certificates(c, o.trials, o.seed);
    out.ok = rep.holds();
    out.rows.push_back({"certificates", status(out.ok), std::to_string(rep.certificates.size() - rep.failures) + " of " +
                                                            std::to_string(rep.certificates.size()) + " verified"});
    for (const auto& cert : rep.certificates)
      if (!cert.verified)
        out.rows.push_back({c.system().to_string(cert.alpha), "FAIL", "target " + cert.target.to_string() + ", s = " + cert.s.to_string()});
  }
  out.report = to_json(rep, rs);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carpet subgroups of Chevalley groups: checks, decompositions and reports"};
  app.require_subcommand(1);
  // one option set per subcommand, so per-command defaults do not collide
  std::deque<Options> store;
  Options* chosen = nullptr;
  std::string command;
  std::function<Outcome(const Options&)> run;

  auto common = [&](CLI::App* sub, std::string name, std::function<Outcome(const Options&)> fn) -> Options& {
    Options& o = store.emplace_back();
    sub->add_flag("--json", o.json, "machine-readable report");
    sub->callback([&, name, fn, opts = &o] {
      command = name;
      run = fn;
      chosen = opts;
    });
    return o;
  };
  auto randomized = [](CLI::App* sub, Options& o, int trials) {
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->add_option("--trials", o.trials, "number of samples")->default_val(trials);
  };

  auto* pair = app.add_subcommand("pair", "admissible pairs");
  pair->require_subcommand(1);
  CLI::App* pc = pair->add_subcommand("check", "check AP1-AP4");
  Options& o_pc = common(pc, "pair check", pair_check);
  pc->add_option("--pair", o_pc.pair, "pair JSON file")->required();

  auto* carpet = app.add_subcommand("carpet", "carpets");
  carpet->require_subcommand(1);
  CLI::App* cc = carpet->add_subcommand("check", "check the carpet conditions");
  Options& o_cc = common(cc, "carpet check", carpet_check);
  cc->add_option("--pair", o_cc.pair, "pair JSON file")->required();

  CLI::App* ce = app.add_subcommand("counterexamples", "reproduce the non-field carpet examples");
  Options& o_ce = common(ce, "counterexamples", counterexamples);
  ce->add_option("--n", o_ce.n, "number of variables")->default_val(4);

  CLI::App* br = app.add_subcommand("bruhat", "reduced Bruhat decomposition of a word");
  Options& o_br = common(br, "bruhat", bruhat);
  br->add_option("--field", o_br.field, "field, e.g. F2(x1)");
  br->add_option("--p", o_br.p, "characteristic of the default field F_p(x1, ...)");
  br->add_option("--rank", o_br.rank, "rank l of Sp_2l")->default_val(2);
  br->add_option("--type", o_br.type, "word type: C, or B through psi")->default_val("C");
  br->add_option("--word", o_br.word, "word text or @file")->required();

  CLI::App* mb = app.add_subcommand("membership", "carpet membership of a word");
  Options& o_mb = common(mb, "membership", membership);
  mb->add_option("--pair", o_mb.pair, "pair JSON file")->required();
  mb->add_option("--word", o_mb.word, "word text or @file")->required();

  auto* morph = app.add_subcommand("morphism", "exceptional morphisms");
  morph->require_subcommand(1);
  CLI::App* rt = morph->add_subcommand("roundtrip", "psi.phi and phi.psi against Frobenius");
  Options& o_rt = common(rt, "morphism roundtrip", morphism_roundtrip);
  rt->add_option("--field", o_rt.field, "field")->default_str("F2(x1,x2)");
  rt->add_option("--p", o_rt.p, "characteristic of the default field F_p(x1, ...)");
  rt->add_option("--rank", o_rt.rank, "rank")->default_val(2);
  rt->add_option("--n", o_rt.n, "maximal word length")->default_val(20);
  randomized(rt, o_rt, 100);

  auto* rel = app.add_subcommand("relations", "Chevalley commutator relations");
  rel->require_subcommand(1);
  CLI::App* rv = rel->add_subcommand("verify", "check relations over all root pairs");
  Options& o_rv = common(rv, "relations verify", relations_verify);
  rv->add_option("--field", o_rv.field, "field")->default_str("F2(x1,x2)");
  rv->add_option("--p", o_rv.p, "characteristic of the default field F_p(x1, ...)");
  rv->add_option("--type", o_rv.type, "C, or B through psi")->default_val("C");
  rv->add_option("--rank", o_rv.rank, "rank")->default_val(3);
  randomized(rv, o_rv, 50);

  CLI::App* sy = app.add_subcommand("symbols", "symbol images {r,s}");
  Options& o_sy = common(sy, "symbols", symbols);
  sy->add_option("--field", o_sy.field, "field")->default_str("F2(x1)");
  sy->add_option("--p", o_sy.p, "characteristic of the default field F_p(x1, ...)");
  sy->add_option("--rank", o_sy.rank, "rank")->default_val(2);
  randomized(sy, o_sy, 50);

  auto* s2 = app.add_subcommand("sl2", "SL2 subgroups");
  s2->require_subcommand(1);
  CLI::App* se = s2->add_subcommand("enumerate", "enumerate <t21(K), t12(rK)>");
  Options& o_se = common(se, "sl2 enumerate", sl2);
  se->add_option("--case", o_se.which, "dihedral-F4 or a5-F9")->required();
  se->add_option("--cap", o_se.cap, "element cap")->capture_default_str();

  auto* bnc = app.add_subcommand("bn", "BN-pair axioms");
  bnc->require_subcommand(1);
  CLI::App* bv = bnc->add_subcommand("verify", "verify BN1-BN5, split, saturated");
  Options& o_bv = common(bv, "bn verify", bn);
  bv->add_option("--instance", o_bv.instance, "sp4-gf4-exhaustive or mixed-rational-sampled")->required();
  bv->add_option("--cap", o_bv.cap, "element cap")->capture_default_str();
  randomized(bv, o_bv, 500);

  CLI::App* pf = app.add_subcommand("perfectness", "commutator certificates x_a(q) = [x_a(s), h]");
  Options& o_pf = common(pf, "perfectness", perfectness);
  pf->add_option("--field", o_pf.field, "F2(x1) or GF(2)")->default_str("F2(x1)");
  pf->add_option("--p", o_pf.p, "characteristic of the default field F_p(x1, ...)");
  pf->add_option("--pair", o_pf.pair, "pair JSON file (type C) instead of E(C2, (F, F^2))");
  pf->add_option("--cap", o_pf.cap, "element cap")->capture_default_str();
  randomized(pf, o_pf, 20);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Outcome out;
  try {
    out = run(*chosen);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const Options& o = *chosen;
  if (o.json) {
    Json doc{{"schema", 1}, {"command", command}, {"ok", out.ok}, {"report", out.report}};
    if (out.randomized) doc["seed"] = o.seed;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << command << (out.randomized ? "  (seed " + std::to_string(o.seed) + ")" : "") << "\n";
    print_rows(out.rows);
    std::cout << (out.ok ? "PASS" : "FAIL") << "\n";
  }
  return out.ok ? 0 : 1;
}
