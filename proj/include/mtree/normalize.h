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

#ifndef MTREE_NORMALIZE_H_
#define MTREE_NORMALIZE_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "mtree/bounds.h"
#include "mtree/calculus.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

// Blocks of a normal rewriting sequence, applied in declaration order.
struct NormalShape {
  std::vector<RuleInstance> replicative;
  std::vector<RuleInstance> modal;
  std::vector<RuleInstance> decreasing;
  std::vector<RuleInstance> atomic;
  std::vector<RuleInstance> structural;

  std::vector<RuleInstance> Steps() const;
  std::size_t size() const;
};

bool IsNormal(const std::vector<RuleInstance>& steps);

struct JFlagSet {
  Position internal;
  Position upper;
  Position lower;
};

// J at the root with (i, j): internal at the root, upper i, lower j. J at
// l.k: internal at l, upper and lower at l prefixed onto the flags of the
// same step applied to the subtree at l. Throws NotApplicable.
JFlagSet JFlags(const ModalTree& t, const RuleInstance& r);

// Internal inconsistency detected by replay validation.
class CommutationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a rho_minus empties the atom list of a node that a later four
// step uses as its intermediate node. No normal sequence reaches the same
// endpoint in that situation, since atomic steps come after decreasing ones.
class NoNormalForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every operation below takes the tree the input segment starts from and
// replays both the input and the output segment, throwing CommutationError
// when their endpoints differ.

// pre (no pi_plus, no J) then pi  ==>  [pi'] ++ tail, |tail| <= 2 |pre|.
std::vector<RuleInstance> CommuteOverPiPlus(
    const ModalTree& t, const std::vector<RuleInstance>& pre,
    const RuleInstance& pi);

struct MovedStep {
  RuleInstance step;
  std::vector<RuleInstance> rest;
};

// sigmas then mu  ==>  mu' then rest (sigmas).
MovedStep CommuteStructural(const ModalTree& t,
                            const std::vector<RuleInstance>& sigmas,
                            const RuleInstance& mu);

// rhos then mu (pi_minus, four, m or J)  ==>  mu' then rest (rhos).
// Throws NoNormalForm for a four step enabled by a rho_minus.
MovedStep CommuteAtomic(const ModalTree& t,
                        const std::vector<RuleInstance>& rhos,
                        const RuleInstance& mu);

struct ModalOverDecreasing {
  std::vector<RuleInstance> modal;
  std::vector<RuleInstance> decreasing;
};

// deltas then mu (m or J)  ==>  modal (all of mu's kind) then deltas'.
ModalOverDecreasing CommuteDecreasing(const ModalTree& t,
                                      const std::vector<RuleInstance>& deltas,
                                      const RuleInstance& mu);

struct ReplicativeFirst {
  std::vector<RuleInstance> replicative;
  std::vector<RuleInstance> modal;
  std::vector<RuleInstance> structural;
};

// [j] ++ reps (all pi_plus)  ==>  replicative ++ modal (all J) ++ structural.
ReplicativeFirst CommuteJOverReplicatives(const ModalTree& t,
                                          const RuleInstance& j,
                                          const std::vector<RuleInstance>& reps);

// Upper plus lower flag occurrences of j in the tree reached by [j] ++ reps.
std::size_t JFlagOccurrences(const ModalTree& t, const RuleInstance& j,
                             const std::vector<RuleInstance>& reps);

// [m] ++ reps  ==>  replicative (same length as reps) ++ modal (all m).
ReplicativeFirst CommuteMOverReplicatives(const ModalTree& t,
                                          const RuleInstance& m,
                                          const std::vector<RuleInstance>& reps);

// modal ++ [pi]  ==>  replicative ++ modal ++ structural.
ReplicativeFirst CommuteModalBlockOverPiPlus(
    const ModalTree& t, const std::vector<RuleInstance>& modal,
    const RuleInstance& pi);

// Shortest-form replacement for a block of sigmas starting at t: deeper nodes
// first, at most NodeCount(t) - 1 transpositions.
std::vector<RuleInstance> CompressStructural(
    const ModalTree& t, const std::vector<RuleInstance>& sigmas);

// Reorders a checked derivation into normal shape with the same endpoints.
// Throws DerivationError if d does not check under sys, NoNormalForm as
// described above.
NormalShape Normalize(const Derivation& d, const System& sys);

struct BoundReport {
  bool with_j = false;
  std::size_t length = 0;     // |Omega|
  std::size_t width = 0;      // w of the start tree
  std::size_t height = 0;     // h of the start tree
  std::size_t end_nodes = 0;  // n of the end tree

  BigBound replicative;
  BigBound decreasing_atomic;
  BigBound structural;
  // The modal bound depends on the decreasing (and, with J, replicative)
  // block lengths of the normal form it is checked against.
  BigBound Modal(std::size_t decreasing_len, std::size_t replicative_len) const;
  std::string ModalFormula() const;

  // Human-readable descriptions of every violated bound; empty when `shape`
  // complies.
  std::vector<std::string> Violations(const NormalShape& shape) const;
};

BoundReport TheoremBounds(const Derivation& d, const System& sys);

}  // namespace mtree

#endif  // MTREE_NORMALIZE_H_
