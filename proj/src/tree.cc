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

#include "mtree/tree.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <utility>

namespace mtree {

bool operator==(const ModalTree& a, const ModalTree& b) {
  return a.atoms == b.atoms && a.children == b.children;
}

bool operator<(const ModalTree& a, const ModalTree& b) {
  if (a.atoms != b.atoms) return a.atoms < b.atoms;
  return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                      b.children.begin(), b.children.end());
}

InvalidPosition::InvalidPosition(const Position& k)
    : std::out_of_range("invalid position " + PositionToString(k)) {}

std::string PositionToString(const Position& k, std::string_view root) {
  if (k.empty()) return std::string(root);
  std::string out;
  for (std::size_t n = 0; n < k.size(); ++n) {
    if (n > 0) out.push_back('.');
    out += std::to_string(k[n]);
  }
  return out;
}

Position ParsePosition(std::string_view text) {
  Position k;
  if (text.empty() || text == "e" || text == "\xce\xb5") return k;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    std::size_t value = 0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value == 0) {
      throw std::invalid_argument("malformed position '" + std::string(text) +
                                  "'");
    }
    k.push_back(value);
    start = end + 1;
  }
  return k;
}

Position Concat(const Position& a, const Position& b) {
  Position k = a;
  k.insert(k.end(), b.begin(), b.end());
  return k;
}

bool IsPrefix(const Position& prefix, const Position& k) {
  return prefix.size() <= k.size() &&
         std::equal(prefix.begin(), prefix.end(), k.begin());
}

ModalTree Leaf(std::vector<std::string> atoms) {
  ModalTree t;
  t.atoms = std::move(atoms);
  return t;
}

std::size_t Width(const ModalTree& t) {
  if (t.is_leaf()) return 1;
  std::size_t w = t.children.size();
  for (const Edge& e : t.children) w = std::max(w, Width(e.tree));
  return w;
}

std::size_t Height(const ModalTree& t) {
  std::size_t h = 0;
  for (const Edge& e : t.children) h = std::max(h, Height(e.tree) + 1);
  return h;
}

std::size_t NodeCount(const ModalTree& t) {
  std::size_t n = 1;
  for (const Edge& e : t.children) n += NodeCount(e.tree);
  return n;
}

ModalTree Sum(const ModalTree& a, const ModalTree& b) {
  ModalTree s = a;
  s.atoms.insert(s.atoms.end(), b.atoms.begin(), b.atoms.end());
  s.children.insert(s.children.end(), b.children.begin(), b.children.end());
  return s;
}

ModalTree BigSum(const std::vector<ModalTree>& ts) {
  ModalTree acc;
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) acc = Sum(*it, acc);
  return acc;
}

namespace {

void CollectPositions(const ModalTree& t, Position* prefix,
                      std::vector<Position>* out) {
  out->push_back(*prefix);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    prefix->push_back(i + 1);
    CollectPositions(t.children[i].tree, prefix, out);
    prefix->pop_back();
  }
}

void DebugTo(const ModalTree& t, std::string* out) {
  out->append("<[");
  for (std::size_t i = 0; i < t.atoms.size(); ++i) {
    if (i > 0) out->push_back(',');
    out->append(t.atoms[i]);
  }
  out->append("];[");
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i > 0) out->push_back(',');
    out->push_back('(');
    out->append(std::to_string(t.children[i].label));
    out->push_back(',');
    DebugTo(t.children[i].tree, out);
    out->push_back(')');
  }
  out->append("]>");
}

}  // namespace

std::vector<Position> Positions(const ModalTree& t) {
  std::vector<Position> out;
  Position prefix;
  CollectPositions(t, &prefix, &out);
  return out;
}

bool HasPosition(const ModalTree& t, const Position& k) {
  const ModalTree* cur = &t;
  for (std::size_t i : k) {
    if (i < 1 || i > cur->children.size()) return false;
    cur = &cur->children[i - 1].tree;
  }
  return true;
}

const ModalTree& Subtree(const ModalTree& t, const Position& k) {
  const ModalTree* cur = &t;
  for (std::size_t i : k) {
    if (i < 1 || i > cur->children.size()) throw InvalidPosition(k);
    cur = &cur->children[i - 1].tree;
  }
  return *cur;
}

ModalTree* MutableSubtree(ModalTree* t, const Position& k) {
  ModalTree* cur = t;
  for (std::size_t i : k) {
    if (i < 1 || i > cur->children.size()) throw InvalidPosition(k);
    cur = &cur->children[i - 1].tree;
  }
  return cur;
}

ModalTree Replace(const ModalTree& t, const Position& k, ModalTree s) {
  ModalTree out = t;
  *MutableSubtree(&out, k) = std::move(s);
  return out;
}

std::string DebugString(const ModalTree& t) {
  std::string out;
  DebugTo(t, &out);
  return out;
}

std::size_t HashTree(const ModalTree& t) {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ t.atoms.size();
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const std::string& a : t.atoms) mix(std::hash<std::string>{}(a));
  mix(t.children.size());
  for (const Edge& e : t.children) {
    mix(e.label);
    mix(HashTree(e.tree));
  }
  return h;
}

}  // namespace mtree
