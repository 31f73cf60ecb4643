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

#ifndef MTREE_TREE_H_
#define MTREE_TREE_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtree/formula.h"

namespace mtree {

struct Edge;

// <Delta; Gamma>: an atom list and an ordered list of labelled children.
// Duplicates and order are significant everywhere.
struct ModalTree {
  std::vector<std::string> atoms;
  std::vector<Edge> children;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const ModalTree& a, const ModalTree& b);
  friend bool operator!=(const ModalTree& a, const ModalTree& b) {
    return !(a == b);
  }
  friend bool operator<(const ModalTree& a, const ModalTree& b);
};

struct Edge {
  Label label = 0;
  ModalTree tree;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.label == b.label && a.tree == b.tree;
  }
  friend bool operator<(const Edge& a, const Edge& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.tree < b.tree;
  }
};

// 1-based child indices from the root; empty is the root position.
using Position = std::vector<std::size_t>;

class InvalidPosition : public std::out_of_range {
 public:
  explicit InvalidPosition(const Position& k);
};

// "1.2.3"; the root renders as `root` ("" in JSON, "e" on the CLI).
std::string PositionToString(const Position& k, std::string_view root = "e");
// Accepts "", "e" or "ε" for the root. Throws std::invalid_argument.
Position ParsePosition(std::string_view text);
Position Concat(const Position& a, const Position& b);
bool IsPrefix(const Position& prefix, const Position& k);

ModalTree Leaf(std::vector<std::string> atoms = {});

std::size_t Width(const ModalTree& t);
std::size_t Height(const ModalTree& t);
std::size_t NodeCount(const ModalTree& t);

// <D1 D2; G1 G2>.
ModalTree Sum(const ModalTree& a, const ModalTree& b);
ModalTree BigSum(const std::vector<ModalTree>& ts);

// Preorder: root first, then each child's positions in order.
std::vector<Position> Positions(const ModalTree& t);
bool HasPosition(const ModalTree& t, const Position& k);

const ModalTree& Subtree(const ModalTree& t, const Position& k);
ModalTree* MutableSubtree(ModalTree* t, const Position& k);
ModalTree Replace(const ModalTree& t, const Position& k, ModalTree s);

// Compact debugging form, e.g. <[p];[(0,<[];[]>)]>.
std::string DebugString(const ModalTree& t);

std::size_t HashTree(const ModalTree& t);

struct TreeHash {
  std::size_t operator()(const ModalTree& t) const { return HashTree(t); }
};

}  // namespace mtree

#endif  // MTREE_TREE_H_
