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

#include "mtree/embed.h"

#include <vector>

namespace mtree {

ModalTree ToTree(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
      return ModalTree{};
    case Formula::Kind::kVar:
      return Leaf({f.name()});
    case Formula::Kind::kDia: {
      ModalTree t;
      t.children.push_back(Edge{f.label(), ToTree(f.body())});
      return t;
    }
    case Formula::Kind::kAnd:
      return Sum(ToTree(f.left()), ToTree(f.right()));
  }
  return ModalTree{};
}

Formula ToFormula(const ModalTree& t) {
  std::vector<Formula> atoms;
  atoms.reserve(t.atoms.size());
  for (const std::string& a : t.atoms) atoms.push_back(Formula::Var(a));
  std::vector<Formula> dias;
  dias.reserve(t.children.size());
  for (const Edge& e : t.children) {
    dias.push_back(Formula::Dia(e.label, ToFormula(e.tree)));
  }
  return Formula::And(BigAnd(atoms), BigAnd(dias));
}

ModalTree RoundtripTree(const ModalTree& t) { return ToTree(ToFormula(t)); }

}  // namespace mtree
