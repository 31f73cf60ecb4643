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

#include "mtree/marked_tree.h"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace mtree {

namespace {

MarkedNode MarkFrom(const ModalTree& t, NodeId* next) {
  MarkedNode n;
  n.id = n.token = (*next)++;
  n.atoms = t.atoms;
  n.children.reserve(t.children.size());
  for (const Edge& e : t.children) {
    n.children.push_back(MarkedEdge{e.label, MarkFrom(e.tree, next)});
  }
  return n;
}

ModalTree EraseFrom(const MarkedNode& n) {
  ModalTree t;
  t.atoms = n.atoms;
  t.children.reserve(n.children.size());
  for (const MarkedEdge& e : n.children) {
    t.children.push_back(Edge{e.label, EraseFrom(e.node)});
  }
  return t;
}

void Refresh(MarkedNode* n, NodeId* next,
             std::unordered_map<NodeId, NodeId>* copies) {
  const NodeId fresh = (*next)++;
  if (copies != nullptr) (*copies)[n->id] = fresh;
  n->id = fresh;
  for (MarkedEdge& e : n->children) Refresh(&e.node, next, copies);
}

bool FindFrom(const MarkedNode& n, NodeId id, Position* path) {
  if (n.id == id) return true;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path->push_back(i + 1);
    if (FindFrom(n.children[i].node, id, path)) return true;
    path->pop_back();
  }
  return false;
}

MarkedNode* MutableAt(MarkedNode* root, const Position& k) {
  MarkedNode* cur = root;
  for (std::size_t i : k) {
    if (i < 1 || i > cur->children.size()) throw InvalidPosition(k);
    cur = &cur->children[i - 1].node;
  }
  return cur;
}

std::size_t CountFrom(const MarkedNode& n, NodeId token) {
  std::size_t c = n.token == token ? 1 : 0;
  for (const MarkedEdge& e : n.children) c += CountFrom(e.node, token);
  return c;
}

std::optional<std::size_t> ChildIndex(const MarkedNode& n, NodeId child) {
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (n.children[i].node.id == child) return i + 1;
  }
  return std::nullopt;
}

bool UsesTwoChildren(RuleKind k) {
  return k == RuleKind::kSigma || k == RuleKind::kJ;
}

bool UsesAtom(RuleKind k) {
  return k == RuleKind::kRhoPlus || k == RuleKind::kRhoMinus;
}

}  // namespace

MarkedTree::MarkedTree(const ModalTree& t) { root_ = MarkFrom(t, &next_id_); }

ModalTree MarkedTree::Erase() const { return EraseFrom(root_); }

void MarkedTree::Apply(const RuleInstance& r, ApplyInfo* info) {
  // Validate against the erased shape so error messages match mtree::Apply.
  {
    const ModalTree plain = Erase();
    if (auto why = WhyNotApplicable(plain, r)) {
      throw NotApplicable(ToString(r) + ": " + *why);
    }
  }
  MarkedNode& node = *MutableAt(&root_, r.pos);
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
      MarkedEdge copy = kids[i];
      Refresh(&copy.node, &next_id_, info ? &info->copies : nullptr);
      kids.insert(kids.begin(), std::move(copy));
      return;
    }
    case RuleKind::kPiMinus:
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    case RuleKind::kFour: {
      if (info != nullptr) info->removed = kids[i].node.id;
      MarkedEdge inner = std::move(kids[i].node.children[0]);
      kids[i] = std::move(inner);
      return;
    }
    case RuleKind::kM:
      kids[i].label = r.beta;
      return;
    case RuleKind::kJ: {
      const std::size_t j = r.j - 1;
      MarkedEdge moved = std::move(kids[j]);
      kids[i].node.children.push_back(std::move(moved));
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(j));
      return;
    }
  }
}

void MarkedTree::ApplyAll(const std::vector<RuleInstance>& rs) {
  for (const RuleInstance& r : rs) Apply(r);
}

std::optional<Position> MarkedTree::Find(NodeId id) const {
  Position path;
  if (FindFrom(root_, id, &path)) return path;
  return std::nullopt;
}

const MarkedNode& MarkedTree::At(const Position& k) const {
  const MarkedNode* cur = &root_;
  for (std::size_t i : k) {
    if (i < 1 || i > cur->children.size()) throw InvalidPosition(k);
    cur = &cur->children[i - 1].node;
  }
  return *cur;
}

std::optional<NodeId> MarkedTree::Parent(NodeId id) const {
  auto path = Find(id);
  if (!path || path->empty()) return std::nullopt;
  path->pop_back();
  return At(*path).id;
}

bool MarkedTree::InSubtree(NodeId id, NodeId ancestor) const {
  auto a = Find(ancestor);
  auto b = Find(id);
  return a && b && IsPrefix(*a, *b);
}

std::size_t MarkedTree::CountToken(NodeId token) const {
  return CountFrom(root_, token);
}

Anchor MakeAnchor(const MarkedTree& t, const RuleInstance& r) {
  const MarkedNode& node = t.At(r.pos);
  Anchor a;
  a.kind = r.kind;
  a.node = node.id;
  a.beta = r.beta;
  if (UsesAtom(r.kind)) {
    a.atom = r.i;
  } else {
    a.c1 = node.children.at(r.i - 1).node.id;
    if (UsesTwoChildren(r.kind)) a.c2 = node.children.at(r.j - 1).node.id;
  }
  return a;
}

std::optional<RuleInstance> Resolve(const MarkedTree& t, const Anchor& a) {
  auto pos = t.Find(a.node);
  if (!pos) return std::nullopt;
  const MarkedNode& node = t.At(*pos);
  RuleInstance r;
  r.kind = a.kind;
  r.pos = *pos;
  r.beta = a.kind == RuleKind::kM ? a.beta : 0;
  if (UsesAtom(a.kind)) {
    r.i = a.atom;
    return r;
  }
  auto i = ChildIndex(node, a.c1);
  if (!i) return std::nullopt;
  r.i = *i;
  if (UsesTwoChildren(a.kind)) {
    auto j = ChildIndex(node, a.c2);
    if (!j) return std::nullopt;
    r.j = *j;
  }
  return r;
}

Anchor Rename(const Anchor& a, const std::unordered_map<NodeId, NodeId>& map) {
  auto rename = [&map](NodeId id) {
    auto it = map.find(id);
    return it == map.end() ? id : it->second;
  };
  Anchor out = a;
  out.node = rename(a.node);
  if (!UsesAtom(a.kind)) {
    out.c1 = rename(a.c1);
    if (UsesTwoChildren(a.kind)) out.c2 = rename(a.c2);
  }
  return out;
}

namespace {

void AlignNode(const MarkedNode& target, MarkedTree* cur,
               std::vector<RuleInstance>* out) {
  for (const MarkedEdge& e : target.children) AlignNode(e.node, cur, out);
  auto pos = cur->Find(target.id);
  if (!pos) throw std::logic_error("AlignById: node missing from source");
  const MarkedNode& node = cur->At(*pos);
  std::vector<std::size_t> have, want;
  for (const MarkedEdge& e : node.children) have.push_back(e.node.id);
  for (const MarkedEdge& e : target.children) want.push_back(e.node.id);
  std::vector<std::size_t> sorted_have = have, sorted_want = want;
  std::sort(sorted_have.begin(), sorted_have.end());
  std::sort(sorted_want.begin(), sorted_want.end());
  if (sorted_have != sorted_want) {
    throw std::logic_error("AlignById: child sets differ");
  }
  for (const RuleInstance& s : SortingSigmas(*pos, have, want)) {
    cur->Apply(s);
    out->push_back(s);
  }
}

std::string Canon(const ModalTree& t) {
  std::vector<std::string> kids;
  kids.reserve(t.children.size());
  for (const Edge& e : t.children) {
    kids.push_back(std::to_string(e.label) + ":" + Canon(e.tree));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "{";
  for (const std::string& a : t.atoms) out += a + ",";
  out += "|";
  for (const std::string& k : kids) out += "(" + k + ")";
  return out + "}";
}

bool AlignPlain(const ModalTree& from, const ModalTree& to, const Position& at,
                std::vector<RuleInstance>* out) {
  if (from.atoms != to.atoms || from.children.size() != to.children.size()) {
    return false;
  }
  const std::size_t m = from.children.size();
  std::vector<std::string> from_keys(m), to_keys(m);
  for (std::size_t i = 0; i < m; ++i) {
    from_keys[i] = std::to_string(from.children[i].label) + ":" +
                   Canon(from.children[i].tree);
    to_keys[i] = std::to_string(to.children[i].label) + ":" +
                 Canon(to.children[i].tree);
  }
  // target[slot] = index in `from` of the child that must end at `slot`.
  std::vector<std::size_t> target(m);
  std::vector<bool> used(m, false);
  for (std::size_t slot = 0; slot < m; ++slot) {
    std::size_t pick = m;
    // Prefer the child already in place to keep the permutation small.
    if (!used[slot] && from_keys[slot] == to_keys[slot]) {
      pick = slot;
    } else {
      for (std::size_t c = 0; c < m; ++c) {
        if (!used[c] && from_keys[c] == to_keys[slot]) {
          pick = c;
          break;
        }
      }
    }
    if (pick == m) return false;
    used[pick] = true;
    target[slot] = pick;
  }
  Position child = at;
  child.push_back(0);
  for (std::size_t slot = 0; slot < m; ++slot) {
    child.back() = target[slot] + 1;
    if (!AlignPlain(from.children[target[slot]].tree, to.children[slot].tree,
                    child, out)) {
      return false;
    }
  }
  std::vector<std::size_t> current(m);
  std::iota(current.begin(), current.end(), 0);
  for (const RuleInstance& s : SortingSigmas(at, current, target)) {
    out->push_back(s);
  }
  return true;
}

}  // namespace

std::vector<RuleInstance> AlignById(const MarkedTree& from,
                                    const MarkedTree& to) {
  MarkedTree cur = from;
  std::vector<RuleInstance> out;
  AlignNode(to.root(), &cur, &out);
  if (cur.Erase() != to.Erase()) {
    throw std::logic_error("AlignById: trees differ beyond child order");
  }
  return out;
}

std::optional<std::vector<RuleInstance>> AlignStructurally(const ModalTree& from,
                                                           const ModalTree& to) {
  std::vector<RuleInstance> out;
  if (!AlignPlain(from, to, Position{}, &out)) return std::nullopt;
  if (ApplyAll(from, out) != to) return std::nullopt;
  return out;
}

}  // namespace mtree
