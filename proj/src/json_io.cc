// Copyright 2026 The mtree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtree/json_io.h"

#include <limits>

namespace mtree {

JsonDataError::JsonDataError(const std::string& path,
                             const std::string& message)
    : std::runtime_error((path.empty() ? std::string("/") : path) + ": " +
                         message),
      path_(path) {}

namespace {

std::size_t Index(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw JsonDataError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Label LabelFrom(const Json& j, const std::string& path) {
  const std::size_t v = Index(j, path);
  if (v > std::numeric_limits<Label>::max()) {
    throw JsonDataError(path, "label out of range");
  }
  return static_cast<Label>(v);
}

const Json& Field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw JsonDataError(path, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

const Json& Pair(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw JsonDataError(path, "expected a two-element array");
  }
  return j;
}

}  // namespace

Json ToJson(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
      return "T";
    case Formula::Kind::kVar:
      return Json{{"var", f.name()}};
    case Formula::Kind::kDia:
      return Json{{"dia", Json::array({f.label(), ToJson(f.body())})}};
    case Formula::Kind::kAnd:
      return Json{{"and", Json::array({ToJson(f.left()), ToJson(f.right())})}};
  }
  return "T";
}

Formula FormulaFromJson(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return Parse(s);
    } catch (const ParseError& e) {
      throw JsonDataError(path, std::string("formula text: ") + e.what());
    }
  }
  if (!j.is_object() || j.size() != 1) {
    throw JsonDataError(path, "expected a formula");
  }
  if (j.contains("var")) {
    if (!j.at("var").is_string()) throw JsonDataError(path + "/var", "expected a string");
    const std::string name = j.at("var").get<std::string>();
    const Formula f = FormulaFromJson(Json(name), path + "/var");
    if (!f.is_var()) throw JsonDataError(path + "/var", "not a variable name");
    return f;
  }
  if (j.contains("dia")) {
    const Json& p = Pair(j.at("dia"), path + "/dia");
    return Formula::Dia(LabelFrom(p[0], path + "/dia/0"),
                        FormulaFromJson(p[1], path + "/dia/1"));
  }
  if (j.contains("and")) {
    const Json& p = Pair(j.at("and"), path + "/and");
    return Formula::And(FormulaFromJson(p[0], path + "/and/0"),
                        FormulaFromJson(p[1], path + "/and/1"));
  }
  throw JsonDataError(path, "unknown formula constructor");
}

Json ToJson(const ModalTree& t) {
  Json kids = Json::array();
  for (const Edge& e : t.children) {
    kids.push_back(Json::array({e.label, ToJson(e.tree)}));
  }
  return Json{{"atoms", t.atoms}, {"children", kids}};
}

ModalTree TreeFromJson(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonDataError(path, "expected a tree object");
  for (const auto& [key, value] : j.items()) {
    if (key != "atoms" && key != "children") {
      throw JsonDataError(path, "unexpected field \"" + key + "\"");
    }
  }
  ModalTree t;
  if (j.contains("atoms")) {
    const Json& a = j.at("atoms");
    if (!a.is_array()) throw JsonDataError(path + "/atoms", "expected an array");
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string p = path + "/atoms/" + std::to_string(k);
      if (!a[k].is_string()) throw JsonDataError(p, "expected a string");
      const std::string name = a[k].get<std::string>();
      Formula f;
      try {
        f = Parse(name);
      } catch (const ParseError&) {
      }
      if (!f.is_var() || f.name() != name) {
        throw JsonDataError(p, "not a variable name: \"" + name + "\"");
      }
      t.atoms.push_back(name);
    }
  }
  if (j.contains("children")) {
    const Json& c = j.at("children");
    if (!c.is_array()) {
      throw JsonDataError(path + "/children", "expected an array");
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string p = path + "/children/" + std::to_string(k);
      const Json& e = Pair(c[k], p);
      t.children.push_back(
          Edge{LabelFrom(e[0], p + "/0"), TreeFromJson(e[1], p + "/1")});
    }
  }
  return t;
}

Json PositionToJson(const Position& k) {
  Json out = Json::array();
  for (std::size_t x : k) out.push_back(x);
  return out;
}

Position PositionFromJson(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return ParsePosition(j.get<std::string>());
    } catch (const std::exception& e) {
      throw JsonDataError(path, e.what());
    }
  }
  if (!j.is_array()) throw JsonDataError(path, "expected a position array");
  Position k;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::size_t x = Index(j[n], path + "/" + std::to_string(n));
    if (x == 0) {
      throw JsonDataError(path + "/" + std::to_string(n),
                          "position entries are 1-based");
    }
    k.push_back(x);
  }
  return k;
}

Json ToJson(const RuleInstance& r) {
  Json out{{"kind", std::string(KindName(r.kind))}, {"pos", PositionToJson(r.pos)}};
  switch (r.kind) {
    case RuleKind::kSigma:
    case RuleKind::kJ:
      out["i"] = r.i;
      out["j"] = r.j;
      break;
    case RuleKind::kM:
      out["i"] = r.i;
      out["b"] = r.beta;
      break;
    default:
      out["i"] = r.i;
      break;
  }
  return out;
}

RuleInstance RuleFromJson(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return ParseRule(j.get<std::string>());
    } catch (const std::exception& e) {
      throw JsonDataError(path, e.what());
    }
  }
  const Json& kind = Field(j, "kind", path);
  if (!kind.is_string()) throw JsonDataError(path + "/kind", "expected a string");
  const auto k = KindFromName(kind.get<std::string>());
  if (!k) {
    throw JsonDataError(path + "/kind",
                        "unknown rule kind \"" + kind.get<std::string>() + "\"");
  }
  RuleInstance r;
  r.kind = *k;
  r.pos = j.contains("pos") ? PositionFromJson(j.at("pos"), path + "/pos")
                            : Position{};
  r.i = Index(Field(j, "i", path), path + "/i");
  if (r.kind == RuleKind::kSigma || r.kind == RuleKind::kJ) {
    r.j = Index(Field(j, "j", path), path + "/j");
  }
  if (r.kind == RuleKind::kM) {
    const char* key = j.contains("b") ? "b" : "beta";
    r.beta = LabelFrom(Field(j, key, path), path + "/" + key);
  }
  return r;
}

Json ToJson(const std::vector<RuleInstance>& rs) {
  Json out = Json::array();
  for (const RuleInstance& r : rs) out.push_back(ToJson(r));
  return out;
}

Json ToJson(const Derivation& d) {
  return Json{{"start", ToJson(d.start)}, {"steps", ToJson(d.steps)}};
}

Derivation DerivationFromJson(const Json& j) {
  Derivation d;
  d.start = TreeFromJson(Field(j, "start", ""), "/start");
  if (j.contains("steps")) {
    const Json& s = j.at("steps");
    if (!s.is_array()) throw JsonDataError("/steps", "expected an array");
    for (std::size_t k = 0; k < s.size(); ++k) {
      d.steps.push_back(RuleFromJson(s[k], "/steps/" + std::to_string(k)));
    }
  }
  return d;
}

Json ToJson(const SequentProof& p) {
  Json prem = Json::array();
  for (const SequentProof& q : p.premises) prem.push_back(ToJson(q));
  return Json{{"rule", p.rule},
              {"conclusion",
               Json::array({Print(p.conclusion.lhs), Print(p.conclusion.rhs)})},
              {"premises", prem}};
}

SequentProof SequentProofFromJson(const Json& j, const std::string& path) {
  SequentProof p;
  const Json& rule = Field(j, "rule", path);
  if (!rule.is_string()) throw JsonDataError(path + "/rule", "expected a string");
  p.rule = rule.get<std::string>();
  const Json& c = Pair(Field(j, "conclusion", path), path + "/conclusion");
  p.conclusion = Sequent{FormulaFromJson(c[0], path + "/conclusion/0"),
                         FormulaFromJson(c[1], path + "/conclusion/1")};
  if (j.contains("premises")) {
    const Json& ps = j.at("premises");
    if (!ps.is_array()) {
      throw JsonDataError(path + "/premises", "expected an array");
    }
    for (std::size_t k = 0; k < ps.size(); ++k) {
      p.premises.push_back(SequentProofFromJson(
          ps[k], path + "/premises/" + std::to_string(k)));
    }
  }
  return p;
}

Json ToJson(const NormalShape& s) {
  return Json{{"replicative", ToJson(s.replicative)},
              {"modal", ToJson(s.modal)},
              {"decreasing", ToJson(s.decreasing)},
              {"atomic", ToJson(s.atomic)},
              {"structural", ToJson(s.structural)}};
}

Json ToJson(const BoundReport& b, const NormalShape& s) {
  auto row = [](std::size_t len, const BigBound& bound) {
    return Json{{"length", len},
                {"bound", bound.ToString()},
                {"ok", bound.Admits(len)}};
  };
  return Json{
      {"regime", b.with_j ? "with-J" : "without-J"},
      {"omega", b.length},
      {"width", b.width},
      {"height", b.height},
      {"end_nodes", b.end_nodes},
      {"replicative", row(s.replicative.size(), b.replicative)},
      {"modal", row(s.modal.size(),
                    b.Modal(s.decreasing.size(), s.replicative.size()))},
      {"modal_formula", b.ModalFormula()},
      {"decreasing_atomic",
       row(s.decreasing.size() + s.atomic.size(), b.decreasing_atomic)},
      {"structural", row(s.structural.size(), b.structural)}};
}

Json ToJson(const ProofResult& r) {
  Json out{{"verdict", std::string(VerdictName(r.verdict))},
           {"diagnostics", r.diagnostics},
           {"states", r.states}};
  if (r.derivation) out["derivation"] = ToJson(*r.derivation);
  return out;
}

Json ParseJsonText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    throw JsonDataError("", "invalid JSON at offset " +
                                std::to_string(offset) + ": " + e.what());
  }
}

}  // namespace mtree
