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

#ifndef MTREE_EMBED_H_
#define MTREE_EMBED_H_

#include "mtree/formula.h"
#include "mtree/tree.h"

namespace mtree {

// T(top) = <;>, T(p) = <[p];>, T(<a>f) = <;[(a,T f)]>, T(f & g) = T f + T g.
ModalTree ToTree(const Formula& f);

// F(<D;G>) = And(BigAnd(D), BigAnd([<a> F(S) for (a,S) in G])).
Formula ToFormula(const ModalTree& t);

// ToTree(ToFormula(t)); equals t.
ModalTree RoundtripTree(const ModalTree& t);

}  // namespace mtree

#endif  // MTREE_EMBED_H_
