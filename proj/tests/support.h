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

#ifndef MTREE_TESTS_SUPPORT_H_
#define MTREE_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mtree/calculus.h"
#include "mtree/formula.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

// gtest printers.
inline void PrintTo(const RuleInstance& r, std::ostream* os) {
  *os << ToString(r);
}
inline void PrintTo(const ModalTree& t, std::ostream* os) {
  *os << DebugString(t);
}

}  // namespace mtree

namespace mtree::testing {

using Rng = std::mt19937_64;

inline std::size_t Uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string VarName(std::size_t k) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u"};
  return kNames[k % 6];
}

struct TreeParams {
  std::size_t height = 3;
  std::size_t width = 3;
  std::size_t vars = 3;
  Label labels = 3;  // labels drawn from 0..labels-1
  std::size_t atoms = 2;
};

inline ModalTree RandomTree(Rng& rng, const TreeParams& p) {
  ModalTree t;
  const std::size_t na = Uniform(rng, 0, p.atoms);
  for (std::size_t k = 0; k < na; ++k) {
    t.atoms.push_back(VarName(Uniform(rng, 0, p.vars - 1)));
  }
  if (p.height == 0) return t;
  TreeParams q = p;
  q.height = p.height - 1;
  const std::size_t nc = Uniform(rng, 0, p.width);
  for (std::size_t k = 0; k < nc; ++k) {
    t.children.push_back(Edge{static_cast<Label>(Uniform(rng, 0, p.labels - 1)),
                              RandomTree(rng, q)});
  }
  return t;
}

// Random tree with exactly `nodes` nodes.
inline ModalTree RandomTreeOfSize(Rng& rng, std::size_t nodes,
                                  const TreeParams& p) {
  ModalTree t;
  std::vector<Position> all{{}};
  auto fill_atoms = [&](ModalTree* n) {
    const std::size_t na = Uniform(rng, 0, p.atoms);
    for (std::size_t k = 0; k < na; ++k) {
      n->atoms.push_back(VarName(Uniform(rng, 0, p.vars - 1)));
    }
  };
  fill_atoms(&t);
  while (all.size() < nodes) {
    const Position at = all[Uniform(rng, 0, all.size() - 1)];
    ModalTree* parent = MutableSubtree(&t, at);
    Edge e{static_cast<Label>(Uniform(rng, 0, p.labels - 1)), {}};
    fill_atoms(&e.tree);
    parent->children.push_back(std::move(e));
    all.push_back(Concat(at, {parent->children.size()}));
  }
  return t;
}

struct FormulaParams {
  std::size_t depth = 2;
  std::size_t vars = 3;
  Label labels = 3;
  std::size_t size = 8;  // soft cap on constructor count
};

inline Formula RandomFormula(Rng& rng, const FormulaParams& p,
                             std::size_t budget = 0) {
  if (budget == 0) budget = p.size;
  const std::size_t pick = Uniform(rng, 0, budget <= 1 ? 1 : 3);
  if (pick == 0) return Formula::Top();
  if (pick == 1 || (pick == 2 && p.depth == 0)) {
    return Formula::Var(VarName(Uniform(rng, 0, p.vars - 1)));
  }
  if (pick == 2) {
    FormulaParams q = p;
    q.depth = p.depth - 1;
    return Formula::Dia(static_cast<Label>(Uniform(rng, 0, p.labels - 1)),
                        RandomFormula(rng, q, budget - 1));
  }
  const std::size_t left = Uniform(rng, 1, budget - 2 > 0 ? budget - 2 : 1);
  return Formula::And(RandomFormula(rng, p, left),
                      RandomFormula(rng, p, budget - 1 - left > 0
                                                ? budget - 1 - left
                                                : 1));
}

// Random sequent proof with premise `lhs`, built forward so that every cut
// and conjunction introduction lines up. Uses only the axioms of `sys`.
inline SequentProof RandomProofFrom(Rng& rng, const Formula& lhs,
                                    const System& sys, std::size_t depth,
                                    const FormulaParams& fp) {
  std::vector<std::string> options{"id", "top"};
  if (lhs.is_and()) {
    options.push_back("and_l1");
    options.push_back("and_l2");
    if (sys.j() && lhs.left().is_dia() && lhs.right().is_dia() &&
        lhs.left().label() > lhs.right().label()) {
      options.push_back("j");
    }
  }
  if (lhs.is_dia()) {
    if (sys.m() && lhs.label() > 0) options.push_back("m");
    if (sys.four() && lhs.body().is_dia() &&
        lhs.body().label() == lhs.label()) {
      options.push_back("four");
    }
  }
  if (depth > 0) {
    options.push_back("cut");
    options.push_back("and_r");
    if (lhs.is_dia()) options.push_back("dist");
  }
  const std::string rule = options[Uniform(rng, 0, options.size() - 1)];
  SequentProof p;
  p.rule = rule;
  Formula rhs;
  if (rule == "id") {
    rhs = lhs;
  } else if (rule == "top") {
    rhs = Formula::Top();
  } else if (rule == "and_l1") {
    rhs = lhs.left();
  } else if (rule == "and_l2") {
    rhs = lhs.right();
  } else if (rule == "j") {
    rhs = Formula::Dia(lhs.left().label(),
                       Formula::And(lhs.left().body(), lhs.right()));
  } else if (rule == "m") {
    rhs = Formula::Dia(static_cast<Label>(Uniform(rng, 0, lhs.label() - 1)),
                       lhs.body());
  } else if (rule == "four") {
    rhs = lhs.body();
  } else if (rule == "cut") {
    SequentProof a = RandomProofFrom(rng, lhs, sys, depth - 1, fp);
    SequentProof b =
        RandomProofFrom(rng, a.conclusion.rhs, sys, depth - 1, fp);
    rhs = b.conclusion.rhs;
    p.premises = {std::move(a), std::move(b)};
  } else if (rule == "and_r") {
    SequentProof a = RandomProofFrom(rng, lhs, sys, depth - 1, fp);
    SequentProof b = RandomProofFrom(rng, lhs, sys, depth - 1, fp);
    rhs = Formula::And(a.conclusion.rhs, b.conclusion.rhs);
    p.premises = {std::move(a), std::move(b)};
  } else {  // dist
    SequentProof a = RandomProofFrom(rng, lhs.body(), sys, depth - 1, fp);
    rhs = Formula::Dia(lhs.label(), a.conclusion.rhs);
    p.premises = {std::move(a)};
  }
  p.conclusion = Sequent{lhs, rhs};
  return p;
}

// Premises are biased toward shapes that enable the modal axioms.
inline Formula RandomPremise(Rng& rng, const FormulaParams& fp) {
  const Formula f = RandomFormula(rng, fp);
  const Label a = static_cast<Label>(Uniform(rng, 0, fp.labels - 1));
  switch (Uniform(rng, 0, 3)) {
    case 0:
      return Formula::Dia(a, Formula::Dia(a, f));
    case 1:
      return Formula::And(
          Formula::Dia(a, f),
          Formula::Dia(static_cast<Label>(Uniform(rng, 0, fp.labels - 1)),
                       RandomFormula(rng, fp)));
    case 2:
      return Formula::Dia(a, f);
    default:
      return f;
  }
}

// Random walk over applicable instances; stops early when stuck. With
// `by_kind`, a kind is drawn first so rare kinds show up often.
inline std::vector<RuleInstance> RandomSteps(Rng& rng, const ModalTree& start,
                                             KindSet kinds, std::size_t steps,
                                             std::size_t max_nodes,
                                             bool by_kind = false) {
  std::vector<RuleInstance> out;
  ModalTree t = start;
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<RuleInstance> cand;
    for (const RuleInstance& r : EnumerateApplicable(t, kinds)) {
      if (r.kind != RuleKind::kPiPlus ||
          NodeCount(t) + NodeCount(Subtree(t, Concat(r.pos, {r.i}))) <=
              max_nodes) {
        cand.push_back(r);
      }
    }
    if (cand.empty()) break;
    if (by_kind) {
      const RuleKind k = cand[Uniform(rng, 0, cand.size() - 1)].kind;
      std::vector<RuleInstance> same;
      for (const RuleInstance& r : cand) {
        if (r.kind == k) same.push_back(r);
      }
      cand = std::move(same);
    }
    const RuleInstance r = cand[Uniform(rng, 0, cand.size() - 1)];
    t = Apply(t, r);
    out.push_back(r);
  }
  return out;
}

struct BlockState {
  ModalTree tree;
  int block;
  friend bool operator==(const BlockState& a, const BlockState& b) {
    return a.block == b.block && a.tree == b.tree;
  }
};

struct BlockStateHash {
  std::size_t operator()(const BlockState& s) const {
    return HashTree(s.tree) ^ (static_cast<std::size_t>(s.block) << 1);
  }
};

// True when atomic and structural steps alone turn `from` into `to`: same
// shape up to child order, and each target atom present at the source node.
// Brute force over child permutations.
inline bool TailReachable(const ModalTree& from, const ModalTree& to) {
  if (from.children.size() != to.children.size()) return false;
  for (const std::string& a : to.atoms) {
    if (std::find(from.atoms.begin(), from.atoms.end(), a) == from.atoms.end()) {
      return false;
    }
  }
  std::vector<std::size_t> perm(from.children.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t j = 0; ok && j < perm.size(); ++j) {
      const Edge& a = from.children[perm[j]];
      const Edge& b = to.children[j];
      ok = a.label == b.label && TailReachable(a.tree, b.tree);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Breadth-first search over sequences whose kinds respect the normal block
// order, written independently of the normalizer and the prover. The
// atomic and structural blocks are decided by TailReachable. Returns the
// length of the shortest replicative+modal+decreasing prefix, or -1.
inline int NormalBfs(const ModalTree& start, const ModalTree& target,
                     KindSet kinds, std::size_t max_len,
                     std::size_t max_nodes) {
  using State = BlockState;
  using Hash = BlockStateHash;
  auto block_of = [](RuleKind k) { return static_cast<int>(ClassOf(k)); };
  const std::size_t target_nodes = NodeCount(target);
  std::unordered_set<State, Hash> seen;
  std::deque<std::pair<State, std::size_t>> queue;
  queue.push_back({State{start, 0}, 0});
  seen.insert(State{start, 0});
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (TailReachable(s.tree, target)) return static_cast<int>(d);
    if (d == max_len) continue;
    for (const RuleInstance& r : EnumerateApplicable(s.tree, kinds)) {
      const int b = block_of(r.kind);
      if (b < s.block || b > static_cast<int>(KindClass::kDecreasing)) continue;
      ModalTree next = Apply(s.tree, r);
      const std::size_t n = NodeCount(next);
      if (n > max_nodes || (b >= 1 && n < target_nodes)) continue;
      State ns{std::move(next), b};
      if (seen.insert(ns).second) queue.push_back({std::move(ns), d + 1});
    }
  }
  return -1;
}

// Unrestricted reachability within `max_len` steps.
inline bool Reachable(const ModalTree& start, const ModalTree& target,
                      KindSet kinds, std::size_t max_len,
                      std::size_t max_nodes) {
  std::unordered_set<ModalTree, TreeHash> seen{start};
  std::vector<ModalTree> layer{start};
  for (std::size_t d = 0; d <= max_len; ++d) {
    std::vector<ModalTree> next;
    for (const ModalTree& t : layer) {
      if (t == target) return true;
      if (d == max_len) continue;
      for (const RuleInstance& r : EnumerateApplicable(t, kinds)) {
        ModalTree u = Apply(t, r);
        if (NodeCount(u) > max_nodes) continue;
        if (seen.insert(u).second) next.push_back(std::move(u));
      }
    }
    layer = std::move(next);
  }
  return false;
}

}  // namespace mtree::testing

#endif  // MTREE_TESTS_SUPPORT_H_
