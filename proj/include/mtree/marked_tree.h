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

#ifndef MTREE_MARKED_TREE_H_
#define MTREE_MARKED_TREE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

using NodeId = std::uint32_t;

struct MarkedEdge;

// A modal tree whose nodes carry two identities: `id` is unique within the
// tree (copies made by pi_plus get fresh ids), `token` is inherited by copies.
struct MarkedNode {
  NodeId id = 0;
  NodeId token = 0;
  std::vector<std::string> atoms;
  std::vector<MarkedEdge> children;
};

struct MarkedEdge {
  Label label = 0;
  MarkedNode node;
};

// Side effects of one marked application.
struct ApplyInfo {
  // pi_plus: original id -> id of its fresh copy, for the whole subtree.
  std::unordered_map<NodeId, NodeId> copies;
  // four: the intermediate node that disappeared.
  std::optional<NodeId> removed;
};

class MarkedTree {
 public:
  MarkedTree() = default;
  // Ids and tokens are assigned in preorder starting from 0.
  explicit MarkedTree(const ModalTree& t);

  const MarkedNode& root() const { return root_; }
  ModalTree Erase() const;

  // Same semantics as mtree::Apply. Throws NotApplicable.
  void Apply(const RuleInstance& r, ApplyInfo* info = nullptr);
  void ApplyAll(const std::vector<RuleInstance>& rs);

  std::optional<Position> Find(NodeId id) const;
  const MarkedNode& At(const Position& k) const;
  // Parent id of `id`; nullopt for the root or a missing id.
  std::optional<NodeId> Parent(NodeId id) const;
  // True when `id` is `ancestor` or lies below it.
  bool InSubtree(NodeId id, NodeId ancestor) const;
  // Occurrences of nodes carrying `token`.
  std::size_t CountToken(NodeId token) const;

 private:
  MarkedNode root_;
  NodeId next_id_ = 0;
};

// A rule instance addressed by node identities rather than positions, so it
// can be re-resolved after other steps move things around.
//   node: the node at the rule's position
//   c1, c2: ids of children i and j (where the kind takes child indices)
//   atom: atom index for rho kinds
struct Anchor {
  RuleKind kind = RuleKind::kRhoPlus;
  NodeId node = 0;
  NodeId c1 = 0;
  NodeId c2 = 0;
  std::size_t atom = 0;
  Label beta = 0;
};

Anchor MakeAnchor(const MarkedTree& t, const RuleInstance& r);
// nullopt when a referenced node is missing.
std::optional<RuleInstance> Resolve(const MarkedTree& t, const Anchor& a);
// Renames the ids of `a` through `map` (ids absent from the map are kept).
Anchor Rename(const Anchor& a, const std::unordered_map<NodeId, NodeId>& map);

// Transpositions turning `from` into `to`, where both trees carry the same
// ids with the same parents and differ only in child order. Deeper nodes are
// handled first; at most NodeCount - 1 steps. Throws std::logic_error when the
// trees are not id-aligned.
std::vector<RuleInstance> AlignById(const MarkedTree& from,
                                    const MarkedTree& to);

// Transpositions turning `from` into `to` for plain trees equal up to child
// order at every node; nullopt otherwise.
std::optional<std::vector<RuleInstance>> AlignStructurally(const ModalTree& from,
                                                           const ModalTree& to);

}  // namespace mtree

#endif  // MTREE_MARKED_TREE_H_
