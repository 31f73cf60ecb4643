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

#include "mtree/calculus.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <utility>

#include "mtree/embed.h"

namespace mtree {

System::System(bool four, bool m, bool j) {
  if (four) kinds_.insert(RuleKind::kFour);
  if (m) kinds_.insert(RuleKind::kM);
  if (j) kinds_.insert(RuleKind::kJ);
}

System System::Parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s == "rc") return RC();
  if (s == "kplus") return KPlus();
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = s.find('+', start);
    tokens.push_back(s.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  bool four = false, m = false, j = false;
  if (tokens[0] == "k4") {
    four = true;
  } else if (tokens[0] != "k") {
    throw std::invalid_argument("unknown system '" + std::string(text) + "'");
  }
  for (std::size_t n = 1; n < tokens.size(); ++n) {
    const std::string& tok = tokens[n];
    if (tok.empty()) continue;
    if (tok == "4") {
      four = true;
    } else if (tok == "m") {
      m = true;
    } else if (tok == "j") {
      j = true;
    } else {
      throw std::invalid_argument("unknown system extension '" + tok + "'");
    }
  }
  return System(four, m, j);
}

std::string System::Name() const {
  if (*this == KPlus()) return "K+";
  if (*this == K4Plus()) return "K4+";
  if (*this == RC()) return "RC";
  std::string out = "K+{";
  bool first = true;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!first) out += ',';
    out += name;
    first = false;
  };
  add(four(), "4");
  add(m(), "m");
  add(j(), "J");
  return out + "}";
}

DerivationError::DerivationError(std::size_t step, Reason reason,
                                 const std::string& detail)
    : std::runtime_error("step " + std::to_string(step) +
                         (reason == Reason::kNotApplicable
                              ? " not applicable: "
                              : " not in system: ") +
                         detail),
      step_(step),
      reason_(reason) {}

ModalTree Check(const Derivation& d, const System& sys,
                std::vector<ModalTree>* trace) {
  ModalTree cur = d.start;
  if (trace != nullptr) {
    trace->clear();
    trace->push_back(cur);
  }
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const RuleInstance& r = d.steps[n];
    if (!sys.allows(r.kind)) {
      throw DerivationError(n + 1, DerivationError::Reason::kNotInSystem,
                            ToString(r) + " is outside " + sys.Name());
    }
    if (auto why = WhyNotApplicable(cur, r)) {
      throw DerivationError(n + 1, DerivationError::Reason::kNotApplicable,
                            ToString(r) + ": " + *why);
    }
    ApplyInPlace(&cur, r);
    if (trace != nullptr) trace->push_back(cur);
  }
  return cur;
}

std::vector<RuleInstance> DuplicateToSum(const ModalTree& t) {
  std::vector<RuleInstance> out;
  const std::size_t na = t.atoms.size();
  const std::size_t nc = t.children.size();
  for (std::size_t n = 0; n < na; ++n) out.push_back(RhoPlus({}, na));
  for (std::size_t n = 0; n < nc; ++n) out.push_back(PiPlus({}, nc));
  return out;
}

std::vector<RuleInstance> ProjectLeft(const ModalTree& a, const ModalTree& b) {
  std::vector<RuleInstance> out;
  for (std::size_t n = 0; n < b.atoms.size(); ++n) {
    out.push_back(RhoMinus({}, a.atoms.size() + 1));
  }
  for (std::size_t n = 0; n < b.children.size(); ++n) {
    out.push_back(PiMinus({}, a.children.size() + 1));
  }
  return out;
}

std::vector<RuleInstance> ProjectRight(const ModalTree& a, const ModalTree& b) {
  (void)b;
  std::vector<RuleInstance> out;
  for (std::size_t n = 0; n < a.atoms.size(); ++n) out.push_back(RhoMinus({}, 1));
  for (std::size_t n = 0; n < a.children.size(); ++n) {
    out.push_back(PiMinus({}, 1));
  }
  return out;
}

std::vector<RuleInstance> PermuteAtoms(std::size_t n1, std::size_t n2) {
  std::vector<RuleInstance> out;
  for (std::size_t n = 0; n < n2; ++n) out.push_back(RhoPlus({}, n1 + n2));
  for (std::size_t n = 0; n < n2; ++n) out.push_back(RhoMinus({}, n2 + n1 + 1));
  return out;
}

std::vector<RuleInstance> SwapSummands(const ModalTree& a, const ModalTree& b) {
  std::vector<RuleInstance> out = PermuteAtoms(a.atoms.size(), b.atoms.size());
  const std::size_t ca = a.children.size();
  const std::size_t cb = b.children.size();
  std::vector<std::size_t> current(ca + cb);
  std::iota(current.begin(), current.end(), 0);
  std::vector<std::size_t> target;
  for (std::size_t n = 0; n < cb; ++n) target.push_back(ca + n);
  for (std::size_t n = 0; n < ca; ++n) target.push_back(n);
  std::vector<RuleInstance> sigmas = SortingSigmas({}, current, target);
  out.insert(out.end(), sigmas.begin(), sigmas.end());
  return out;
}

std::vector<RuleInstance> PairDerivations(
    const ModalTree& t, const std::vector<RuleInstance>& to_s,
    const std::vector<RuleInstance>& to_s2) {
  const ModalTree s = ApplyAll(t, to_s);
  const ModalTree s2 = ApplyAll(t, to_s2);
  std::vector<RuleInstance> out = DuplicateToSum(t);
  auto append = [&out](const std::vector<RuleInstance>& rs) {
    out.insert(out.end(), rs.begin(), rs.end());
  };
  append(to_s);                // t + t  ->* s + t
  append(SwapSummands(s, t));  // ->* t + s
  append(to_s2);               // ->* s2 + s
  append(SwapSummands(s2, s)); // ->* s + s2
  return out;
}

namespace {

[[noreturn]] void Malformed(const SequentProof& p, const std::string& why) {
  throw MalformedProof("rule '" + p.rule + "' with conclusion " +
                       Print(p.conclusion.lhs) + " |- " +
                       Print(p.conclusion.rhs) + ": " + why);
}

void Expect(bool cond, const Sequent& s, const char* rule, const char* why) {
  if (!cond) {
    throw MalformedProof(std::string("axiom '") + rule + "' with conclusion " +
                         Print(s.lhs) + " |- " + Print(s.rhs) + ": " + why);
  }
}

std::vector<RuleInstance> Translate(const SequentProof& p, const System& sys,
                                    const std::map<std::string, AxiomTemplate>&
                                        axioms) {
  const Sequent& c = p.conclusion;
  auto premises = [&p](std::size_t n) {
    if (p.premises.size() != n) {
      Malformed(p, "expects " + std::to_string(n) + " premise(s), got " +
                       std::to_string(p.premises.size()));
    }
  };
  if (p.rule == "cut") {
    premises(2);
    const Sequent& a = p.premises[0].conclusion;
    const Sequent& b = p.premises[1].conclusion;
    if (a.lhs != c.lhs || a.rhs != b.lhs || b.rhs != c.rhs) {
      Malformed(p, "premises do not chain to the conclusion");
    }
    std::vector<RuleInstance> out = Translate(p.premises[0], sys, axioms);
    std::vector<RuleInstance> rest = Translate(p.premises[1], sys, axioms);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  if (p.rule == "and_r") {
    premises(2);
    const Sequent& a = p.premises[0].conclusion;
    const Sequent& b = p.premises[1].conclusion;
    if (!c.rhs.is_and() || a.lhs != c.lhs || b.lhs != c.lhs ||
        a.rhs != c.rhs.left() || b.rhs != c.rhs.right()) {
      Malformed(p, "premises do not match the conjunction");
    }
    return PairDerivations(ToTree(c.lhs), Translate(p.premises[0], sys, axioms),
                           Translate(p.premises[1], sys, axioms));
  }
  if (p.rule == "dist") {
    premises(1);
    const Sequent& a = p.premises[0].conclusion;
    if (!c.lhs.is_dia() || !c.rhs.is_dia() ||
        c.lhs.label() != c.rhs.label() || a.lhs != c.lhs.body() ||
        a.rhs != c.rhs.body()) {
      Malformed(p, "conclusion is not the distribution of the premise");
    }
    return Lift(Translate(p.premises[0], sys, axioms), Position{1});
  }
  auto it = axioms.find(p.rule);
  if (it == axioms.end()) {
    if (p.rule == "four" || p.rule == "m" || p.rule == "j") {
      Malformed(p, "axiom is not admitted by " + sys.Name());
    }
    Malformed(p, "unknown rule");
  }
  premises(0);
  return it->second(c);
}

}  // namespace

std::map<std::string, AxiomTemplate> AxiomDerivations(const System& sys) {
  std::map<std::string, AxiomTemplate> out;
  out["id"] = [](const Sequent& s) {
    Expect(s.lhs == s.rhs, s, "id", "sides differ");
    return std::vector<RuleInstance>{};
  };
  out["top"] = [](const Sequent& s) {
    Expect(s.rhs.is_top(), s, "top", "right side is not T");
    const ModalTree t = ToTree(s.lhs);
    return ProjectRight(t, ModalTree{});
  };
  out["and_l1"] = [](const Sequent& s) {
    Expect(s.lhs.is_and() && s.lhs.left() == s.rhs, s, "and_l1",
           "not a left projection");
    return ProjectLeft(ToTree(s.lhs.left()), ToTree(s.lhs.right()));
  };
  out["and_l2"] = [](const Sequent& s) {
    Expect(s.lhs.is_and() && s.lhs.right() == s.rhs, s, "and_l2",
           "not a right projection");
    return ProjectRight(ToTree(s.lhs.left()), ToTree(s.lhs.right()));
  };
  if (sys.four()) {
    out["four"] = [](const Sequent& s) {
      Expect(s.lhs.is_dia() && s.lhs.body().is_dia() &&
                 s.lhs.label() == s.lhs.body().label() && s.rhs.is_dia() &&
                 s.rhs.label() == s.lhs.label() &&
                 s.rhs.body() == s.lhs.body().body(),
             s, "four", "not of the form <a><a>f |- <a>f");
      return std::vector<RuleInstance>{Four({}, 1)};
    };
  }
  if (sys.m()) {
    out["m"] = [](const Sequent& s) {
      Expect(s.lhs.is_dia() && s.rhs.is_dia() &&
                 s.lhs.label() > s.rhs.label() && s.lhs.body() == s.rhs.body(),
             s, "m", "not of the form <a>f |- <b>f with a > b");
      return std::vector<RuleInstance>{M({}, 1, s.rhs.label())};
    };
  }
  if (sys.j()) {
    out["j"] = [](const Sequent& s) {
      bool ok = s.lhs.is_and() && s.lhs.left().is_dia() &&
                s.lhs.right().is_dia() && s.rhs.is_dia();
      if (ok) {
        const Formula& a = s.lhs.left();
        const Formula& b = s.lhs.right();
        ok = a.label() > b.label() && s.rhs.label() == a.label() &&
             s.rhs.body() == Formula::And(a.body(), b);
      }
      Expect(ok, s, "j",
             "not of the form <a>f & <b>g |- <a>(f & <b>g) with a > b");
      return std::vector<RuleInstance>{J({}, 1, 2)};
    };
  }
  return out;
}

Derivation TranslateSequentProof(const SequentProof& proof, const System& sys) {
  const auto axioms = AxiomDerivations(sys);
  return Derivation{ToTree(proof.conclusion.lhs), Translate(proof, sys, axioms)};
}

}  // namespace mtree
