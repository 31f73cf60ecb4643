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

#include "mtree/rules.h"

#include <array>
#include <charconv>
#include <tuple>
#include <utility>

namespace mtree {

namespace {

struct KindInfo {
  RuleKind kind;
  std::string_view name;
  KindClass cls;
};

constexpr std::array<KindInfo, kNumRuleKinds> kKinds = {{
    {RuleKind::kRhoPlus, "rho_plus", KindClass::kAtomic},
    {RuleKind::kRhoMinus, "rho_minus", KindClass::kAtomic},
    {RuleKind::kSigma, "sigma", KindClass::kStructural},
    {RuleKind::kPiPlus, "pi_plus", KindClass::kReplicative},
    {RuleKind::kPiMinus, "pi_minus", KindClass::kDecreasing},
    {RuleKind::kFour, "four", KindClass::kDecreasing},
    {RuleKind::kM, "m", KindClass::kModal},
    {RuleKind::kJ, "J", KindClass::kModal},
}};

bool TwoChildArgs(RuleKind k) {
  return k == RuleKind::kSigma || k == RuleKind::kJ;
}

}  // namespace

KindClass ClassOf(RuleKind kind) {
  return kKinds[static_cast<std::size_t>(kind)].cls;
}

std::string_view KindName(RuleKind kind) {
  return kKinds[static_cast<std::size_t>(kind)].name;
}

std::string_view ClassName(KindClass c) {
  switch (c) {
    case KindClass::kReplicative:
      return "replicative";
    case KindClass::kModal:
      return "modal";
    case KindClass::kDecreasing:
      return "decreasing";
    case KindClass::kAtomic:
      return "atomic";
    case KindClass::kStructural:
      return "structural";
  }
  return "?";
}

std::optional<RuleKind> KindFromName(std::string_view name) {
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  if (name == "4") return RuleKind::kFour;
  if (name == "j") return RuleKind::kJ;
  if (name == "rho+") return RuleKind::kRhoPlus;
  if (name == "rho-") return RuleKind::kRhoMinus;
  if (name == "pi+") return RuleKind::kPiPlus;
  if (name == "pi-") return RuleKind::kPiMinus;
  return std::nullopt;
}

bool operator<(const RuleInstance& a, const RuleInstance& b) {
  return std::tie(a.pos, a.kind, a.i, a.j, a.beta) <
         std::tie(b.pos, b.kind, b.i, b.j, b.beta);
}

RuleInstance RhoPlus(Position pos, std::size_t i) {
  return {RuleKind::kRhoPlus, std::move(pos), i, 0, 0};
}
RuleInstance RhoMinus(Position pos, std::size_t i) {
  return {RuleKind::kRhoMinus, std::move(pos), i, 0, 0};
}
RuleInstance Sigma(Position pos, std::size_t i, std::size_t j) {
  return {RuleKind::kSigma, std::move(pos), i, j, 0};
}
RuleInstance PiPlus(Position pos, std::size_t i) {
  return {RuleKind::kPiPlus, std::move(pos), i, 0, 0};
}
RuleInstance PiMinus(Position pos, std::size_t i) {
  return {RuleKind::kPiMinus, std::move(pos), i, 0, 0};
}
RuleInstance Four(Position pos, std::size_t i) {
  return {RuleKind::kFour, std::move(pos), i, 0, 0};
}
RuleInstance M(Position pos, std::size_t i, Label beta) {
  return {RuleKind::kM, std::move(pos), i, 0, beta};
}
RuleInstance J(Position pos, std::size_t i, std::size_t j) {
  return {RuleKind::kJ, std::move(pos), i, j, 0};
}

std::string ToString(const RuleInstance& r) {
  std::string out(KindName(r.kind));
  out += '@';
  out += PositionToString(r.pos);
  out += "(i=" + std::to_string(r.i);
  if (TwoChildArgs(r.kind)) out += ",j=" + std::to_string(r.j);
  if (r.kind == RuleKind::kM) out += ",b=" + std::to_string(r.beta);
  out += ')';
  return out;
}

std::string ToString(const std::vector<RuleInstance>& rs) {
  std::string out = "[";
  for (std::size_t n = 0; n < rs.size(); ++n) {
    if (n > 0) out += ", ";
    out += ToString(rs[n]);
  }
  return out + "]";
}

RuleInstance ParseRule(std::string_view text) {
  auto fail = [&text](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("malformed rule '" + std::string(text) +
                                 "': " + why);
  };
  const std::size_t at = text.find('@');
  const std::size_t open = text.find('(', at == std::string_view::npos ? 0 : at);
  if (at == std::string_view::npos || open == std::string_view::npos ||
      text.back() != ')') {
    throw fail("expected <kind>@<pos>(<args>)");
  }
  RuleInstance r;
  const auto kind = KindFromName(text.substr(0, at));
  if (!kind) throw fail("unknown rule kind");
  r.kind = *kind;
  try {
    r.pos = ParsePosition(text.substr(at + 1, open - at - 1));
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  bool seen_i = false, seen_j = false, seen_b = false;
  while (!args.empty()) {
    const std::size_t comma = args.find(',');
    std::string_view item = args.substr(0, comma);
    args = comma == std::string_view::npos ? std::string_view{}
                                           : args.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw fail("argument without '='");
    std::string_view key = item.substr(0, eq);
    std::string_view val = item.substr(eq + 1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw fail("non-numeric argument");
    }
    if (key == "i") {
      r.i = value;
      seen_i = true;
    } else if (key == "j" && TwoChildArgs(r.kind)) {
      r.j = value;
      seen_j = true;
    } else if ((key == "b" || key == "beta") && r.kind == RuleKind::kM) {
      r.beta = static_cast<Label>(value);
      seen_b = true;
    } else {
      throw fail("unexpected argument '" + std::string(key) + "'");
    }
  }
  if (!seen_i) throw fail("missing argument i");
  if (TwoChildArgs(r.kind) && !seen_j) throw fail("missing argument j");
  if (r.kind == RuleKind::kM && !seen_b) throw fail("missing argument b");
  return r;
}

std::optional<std::string> WhyNotApplicable(const ModalTree& t,
                                            const RuleInstance& r) {
  if (!HasPosition(t, r.pos)) {
    return "position " + PositionToString(r.pos) + " is not in the tree";
  }
  const ModalTree& node = Subtree(t, r.pos);
  const std::size_t n_atoms = node.atoms.size();
  const std::size_t n_children = node.children.size();
  auto child_range = [n_children](const char* name,
                                  std::size_t v) -> std::optional<std::string> {
    if (v < 1 || v > n_children) {
      return std::string("child index ") + name + "=" + std::to_string(v) +
             " outside 1.." + std::to_string(n_children);
    }
    return std::nullopt;
  };
  switch (r.kind) {
    case RuleKind::kRhoPlus:
    case RuleKind::kRhoMinus:
      if (r.i < 1 || r.i > n_atoms) {
        return "atom index i=" + std::to_string(r.i) + " outside 1.." +
               std::to_string(n_atoms);
      }
      return std::nullopt;
    case RuleKind::kSigma:
    case RuleKind::kJ: {
      if (auto e = child_range("i", r.i)) return e;
      if (auto e = child_range("j", r.j)) return e;
      if (r.i == r.j) return std::string("requires i != j");
      if (r.kind == RuleKind::kJ) {
        const Label a = node.children[r.i - 1].label;
        const Label b = node.children[r.j - 1].label;
        if (!(a > b)) {
          return "J-rule label ordering: requires label of child i (" +
                 std::to_string(a) + ") > label of child j (" +
                 std::to_string(b) + ")";
        }
      }
      return std::nullopt;
    }
    case RuleKind::kPiPlus:
    case RuleKind::kPiMinus:
      return child_range("i", r.i);
    case RuleKind::kFour: {
      if (auto e = child_range("i", r.i)) return e;
      const Edge& e = node.children[r.i - 1];
      if (!e.tree.atoms.empty()) {
        return std::string("4-shape: intermediate node has non-empty atoms");
      }
      if (e.tree.children.size() != 1) {
        return "4-shape: intermediate node has " +
               std::to_string(e.tree.children.size()) +
               " children, requires exactly one";
      }
      if (e.tree.children[0].label != e.label) {
        return "4-shape: inner label " +
               std::to_string(e.tree.children[0].label) +
               " differs from outer label " + std::to_string(e.label);
      }
      return std::nullopt;
    }
    case RuleKind::kM: {
      if (auto e = child_range("i", r.i)) return e;
      const Label a = node.children[r.i - 1].label;
      if (!(a > r.beta)) {
        return "m-rule label ordering: requires label of child i (" +
               std::to_string(a) + ") > b=" + std::to_string(r.beta);
      }
      return std::nullopt;
    }
  }
  return std::string("unknown rule kind");
}

bool Applicable(const ModalTree& t, const RuleInstance& r) {
  return !WhyNotApplicable(t, r).has_value();
}

void ApplyInPlace(ModalTree* t, const RuleInstance& r) {
  if (auto why = WhyNotApplicable(*t, r)) {
    throw NotApplicable(ToString(r) + ": " + *why);
  }
  ModalTree& node = *MutableSubtree(t, r.pos);
  auto& atoms = node.atoms;
  auto& kids = node.children;
  const std::size_t i = r.i - 1;
  switch (r.kind) {
    case RuleKind::kRhoPlus: {
      std::string copy = atoms[i];
      atoms.insert(atoms.begin(), std::move(copy));
      return;
    }
    case RuleKind::kRhoMinus:
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    case RuleKind::kSigma:
      std::swap(kids[i], kids[r.j - 1]);
      return;
    case RuleKind::kPiPlus: {
      Edge copy = kids[i];
      kids.insert(kids.begin(), std::move(copy));
      return;
    }
    case RuleKind::kPiMinus:
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    case RuleKind::kFour: {
      Edge inner = std::move(kids[i].tree.children[0]);
      kids[i] = std::move(inner);
      return;
    }
    case RuleKind::kM:
      kids[i].label = r.beta;
      return;
    case RuleKind::kJ: {
      const std::size_t j = r.j - 1;
      Edge moved = std::move(kids[j]);
      kids[i].tree.children.push_back(std::move(moved));
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(j));
      return;
    }
  }
}

ModalTree Apply(const ModalTree& t, const RuleInstance& r) {
  ModalTree out = t;
  ApplyInPlace(&out, r);
  return out;
}

ModalTree ApplyAll(const ModalTree& t, const std::vector<RuleInstance>& rs) {
  ModalTree out = t;
  for (const RuleInstance& r : rs) ApplyInPlace(&out, r);
  return out;
}

RuleInstance Lift(const RuleInstance& r, const Position& prefix) {
  RuleInstance out = r;
  out.pos = Concat(prefix, r.pos);
  return out;
}

std::vector<RuleInstance> Lift(const std::vector<RuleInstance>& rs,
                               const Position& prefix) {
  std::vector<RuleInstance> out;
  out.reserve(rs.size());
  for (const RuleInstance& r : rs) out.push_back(Lift(r, prefix));
  return out;
}

std::vector<RuleInstance> SortingSigmas(const Position& pos,
                                        std::vector<std::size_t> current,
                                        const std::vector<std::size_t>& target) {
  std::vector<RuleInstance> out;
  for (std::size_t p = 0; p < current.size(); ++p) {
    if (current[p] == target[p]) continue;
    std::size_t q = p + 1;
    while (q < current.size() && current[q] != target[p]) ++q;
    if (q == current.size()) {
      throw std::invalid_argument("SortingSigmas: target is not a permutation");
    }
    std::swap(current[p], current[q]);
    out.push_back(Sigma(pos, p + 1, q + 1));
  }
  return out;
}

namespace {

void EnumerateAt(const ModalTree& node, const Position& pos, KindSet allowed,
                 std::vector<RuleInstance>* out) {
  const std::size_t na = node.atoms.size();
  const std::size_t nc = node.children.size();
  for (int k = 0; k < kNumRuleKinds; ++k) {
    const auto kind = static_cast<RuleKind>(k);
    if (!allowed.contains(kind)) continue;
    switch (kind) {
      case RuleKind::kRhoPlus:
      case RuleKind::kRhoMinus:
        for (std::size_t i = 1; i <= na; ++i) out->push_back({kind, pos, i, 0, 0});
        break;
      case RuleKind::kSigma:
        for (std::size_t i = 1; i <= nc; ++i) {
          for (std::size_t j = 1; j <= nc; ++j) {
            if (i != j) out->push_back(Sigma(pos, i, j));
          }
        }
        break;
      case RuleKind::kPiPlus:
      case RuleKind::kPiMinus:
        for (std::size_t i = 1; i <= nc; ++i) out->push_back({kind, pos, i, 0, 0});
        break;
      case RuleKind::kFour:
        for (std::size_t i = 1; i <= nc; ++i) {
          RuleInstance r = Four(pos, i);
          const Edge& e = node.children[i - 1];
          if (e.tree.atoms.empty() && e.tree.children.size() == 1 &&
              e.tree.children[0].label == e.label) {
            out->push_back(std::move(r));
          }
        }
        break;
      case RuleKind::kM:
        for (std::size_t i = 1; i <= nc; ++i) {
          for (Label b = 0; b < node.children[i - 1].label; ++b) {
            out->push_back(M(pos, i, b));
          }
        }
        break;
      case RuleKind::kJ:
        for (std::size_t i = 1; i <= nc; ++i) {
          for (std::size_t j = 1; j <= nc; ++j) {
            if (i != j &&
                node.children[i - 1].label > node.children[j - 1].label) {
              out->push_back(J(pos, i, j));
            }
          }
        }
        break;
    }
  }
  Position child = pos;
  child.push_back(0);
  for (std::size_t i = 0; i < nc; ++i) {
    child.back() = i + 1;
    EnumerateAt(node.children[i].tree, child, allowed, out);
  }
}

}  // namespace

std::vector<RuleInstance> EnumerateApplicable(const ModalTree& t,
                                              KindSet allowed) {
  std::vector<RuleInstance> out;
  EnumerateAt(t, Position{}, allowed, &out);
  return out;
}

}  // namespace mtree
