#pragma once

// JSON documents for modules and pairs, and JSON forms of every report.
//   module: {"field": {"p":2, "vars":2, "power":2}, "basis": ["1","x1","x2"]}
//   pair:   {"type":"B", "rank":3, "p":2, "lambda_long": <module>, "lambda_short": <module>}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bn_pair.hpp"
#include "carpets.hpp"
#include "perfectness.hpp"
#include "relations.hpp"

namespace chevcarpet {

using Json = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

template <class T>
T json_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("bad value for '") + key + "'");
  }
}

inline FieldPtr field_from_json(const Json& j) {
  if (j.is_object() && j.contains("q")) return finite_field(json_field<int>(j, "q"));
  return rational_field(json_field<int>(j, "p"), json_field<int>(j, "vars"));
}

inline Json field_to_json(const FieldDescriptor& f, int power) {
  if (f.is_finite()) return {{"q", f.order()}};
  return {{"p", f.p}, {"vars", f.nvars}, {"power", power}};
}

inline Json opt_scalar(const std::optional<Scalar>& s) { return s ? Json(s->to_string()) : Json(nullptr); }

}  // namespace detail

/// Reads a module; when `field` is given the document's field must match it.
inline KModule module_from_json(const Json& j, FieldPtr field = nullptr) {
  if (!j.is_object() || !j.contains("field")) throw ParseError("missing key 'field'");
  const Json& fj = j.at("field");
  FieldPtr f = detail::field_from_json(fj);
  if (field) {
    if (!(*field == *f)) throw ParseError("modules of a pair must share one field");
    f = field;
  }
  int power = fj.contains("power") ? detail::json_field<int>(fj, "power") : 0;
  std::vector<Scalar> gens;
  for (const auto& s : detail::json_field<std::vector<std::string>>(j, "basis")) gens.push_back(parse_scalar(s, f));
  return KModule::span(f, power, gens);
}

inline Json module_to_json(const KModule& m) {
  Json basis = Json::array();
  for (const auto& b : m.basis()) basis.push_back(b.to_string());
  return {{"field", detail::field_to_json(*m.field(), m.power())}, {"basis", basis}};
}

inline AdmissiblePair pair_from_json(const Json& j) {
  AdmissiblePair pr{KModule(), KModule()};
  pr.type = parse_root_type(detail::json_field<std::string>(j, "type"));
  pr.rank = detail::json_field<int>(j, "rank");
  pr.p = j.contains("p") ? detail::json_field<int>(j, "p") : max_structure_constant(pr.type);
  if (!j.contains("lambda_long") || !j.contains("lambda_short")) throw ParseError("pair needs lambda_long and lambda_short");
  pr.lambda_long = module_from_json(j.at("lambda_long"));
  pr.lambda_short = module_from_json(j.at("lambda_short"), pr.lambda_long.field());
  return pr;
}

inline Json pair_to_json(const AdmissiblePair& pr) {
  return {{"type", std::string(1, type_letter(pr.type))},
          {"rank", pr.rank},
          {"p", pr.p},
          {"lambda_long", module_to_json(pr.lambda_long)},
          {"lambda_short", module_to_json(pr.lambda_short)}};
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const AdmissibilityReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.axioms)
    axioms.push_back({{"axiom", a.axiom}, {"holds", a.holds}, {"required", a.required}, {"witness", detail::opt_scalar(a.witness)}});
  return {{"admissible", r.admissible()}, {"axioms", axioms}};
}

inline Json to_json(const CarpetReport& r, const RootSystem& rs) {
  Json list = Json::array();
  for (const auto& c : r.distinct()) {
    Json e{{"condition", c.condition}, {"status", c.holds ? "holds" : "fails"}};
    if (!c.holds) {
      e["witness"] = detail::opt_scalar(c.witness);
      e["alpha"] = rs.to_string(c.alpha);
      e["beta"] = rs.to_string(c.beta);
    }
    list.push_back(e);
  }
  return {{"holds", r.holds()}, {"conditions", list}};
}

inline Json to_json(const SuiteReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items)
    items.push_back({{"name", i.name}, {"expectation", i.expectation}, {"passed", i.passed}, {"detail", i.detail},
                     {"witness", detail::opt_scalar(i.witness)}});
  return {{"n", r.n}, {"passed", r.passed()}, {"items", items}};
}

inline Json to_json(const BruhatForm& b) { return Json::parse(bruhat_json(b)); }

inline Json to_json(const MembershipVerdict& v) {
  const RootSystem& rs = system_for(RootType::C, v.form.rank);
  Json j{{"verdict", verdict_name(v.verdict)}, {"bruhat", to_json(v.form)}};
  if (v.root) j["root"] = rs.to_string(*v.root);
  if (v.witness) j["witness"] = v.witness->to_string();
  if (!v.certificate.empty()) j["certificate"] = v.certificate;
  return j;
}

inline Json to_json(const RelationReport& r) {
  const RootSystem& rs = system_for(r.tag, r.rank);
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"alpha", rs.to_string(f.alpha)}, {"beta", rs.to_string(f.beta)}, {"r", f.r.to_string()},
                        {"s", f.s.to_string()}, {"relation", f.relation}});
  return {{"type", std::string(1, type_letter(r.tag))}, {"rank", r.rank}, {"checked", r.checked},
          {"holds", r.holds()}, {"failures", failures}};
}

inline Json to_json(const RoundtripReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back({{"word", word_to_string(f.word)}, {"type", std::string(1, type_letter(f.word.tag))}, {"direction", f.direction}});
  return {{"checked", r.checked}, {"holds", r.holds()}, {"failures", failures}};
}

inline Json to_json(const Sl2Report& r) {
  Json j{{"case", r.name}, {"q", r.q}, {"order", r.order}, {"centre", r.centre}, {"psl_order", r.psl_order},
         {"derived_psl_order", r.derived_psl_order}, {"perfect", r.perfect}, {"holds", r.holds}};
  if (r.q == 4) {
    j["involutions"] = r.involutions;
    j["product_order"] = r.product_order;
    j["dihedral"] = r.dihedral;
  }
  return j;
}

inline Json to_json(const BnReport& r) {
  Json axioms = Json::array(), counts = Json::object();
  for (const auto& a : r.axioms) axioms.push_back({{"axiom", a.name}, {"holds", a.holds}, {"checked", a.checked}, {"detail", a.detail}});
  for (const auto& [k, v] : r.counts) counts[k] = v;
  return {{"instance", r.instance}, {"holds", r.holds()}, {"axioms", axioms}, {"counts", counts}};
}

inline Json to_json(const PerfectnessReport& r, const RootSystem& rs) {
  Json certs = Json::array();
  for (const auto& c : r.certificates)
    certs.push_back({{"alpha", rs.to_string(c.alpha)}, {"beta", rs.to_string(c.beta)}, {"target", c.target.to_string()},
                     {"t", c.t.to_string()}, {"m", c.m}, {"s", c.s.to_string()}, {"verified", c.verified}});
  Json j{{"applicable", r.applicable}, {"certificates", certs}, {"failures", r.failures}};
  if (!r.applicable) j["reason"] = r.reason;
  if (r.group_order) j["group_order"] = *r.group_order;
  if (r.derived_order) j["derived_order"] = *r.derived_order;
  return j;
}

}  // namespace chevcarpet
