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

#ifndef MTREE_CALCULUS_H_
#define MTREE_CALCULUS_H_

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtree/formula.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

// K+ base rules plus a subset of {four, m, J}.
class System {
 public:
  System() = default;  // K+.
  System(bool four, bool m, bool j);

  static System KPlus() { return System(); }
  static System K4Plus() { return System(true, false, false); }
  static System RC() { return System(true, true, true); }
  // "k", "k+", "kplus", "k4", "k4+", "rc", or "k+" followed by any of
  // "+4", "+m", "+j" (case-insensitive). Throws std::invalid_argument.
  static System Parse(std::string_view text);

  bool four() const { return kinds_.contains(RuleKind::kFour); }
  bool m() const { return kinds_.contains(RuleKind::kM); }
  bool j() const { return kinds_.contains(RuleKind::kJ); }
  KindSet kinds() const { return kinds_; }
  bool allows(RuleKind k) const { return kinds_.contains(k); }
  bool SubsystemOf(const System& other) const {
    return kinds_.SubsetOf(other.kinds_);
  }
  std::string Name() const;

  friend bool operator==(const System&, const System&) = default;

 private:
  KindSet kinds_ = {RuleKind::kRhoPlus, RuleKind::kRhoMinus, RuleKind::kSigma,
                    RuleKind::kPiPlus, RuleKind::kPiMinus};
};

struct Derivation {
  ModalTree start;
  std::vector<RuleInstance> steps;
};

class DerivationError : public std::runtime_error {
 public:
  enum class Reason { kNotApplicable, kNotInSystem };
  DerivationError(std::size_t step, Reason reason, const std::string& detail);
  // 1-based index of the offending step.
  std::size_t step() const { return step_; }
  Reason reason() const { return reason_; }

 private:
  std::size_t step_;
  Reason reason_;
};

// Replays d.steps from d.start. When trace is non-null it receives the start
// tree followed by the tree after each step. Throws DerivationError.
ModalTree Check(const Derivation& d, const System& sys,
                std::vector<ModalTree>* trace = nullptr);

// Sequent-calculus proof tree. Rule names:
//   axioms: id, top, and_l1, and_l2, four, m, j
//   rules:  cut (2 premises), and_r (2 premises), dist (1 premise)
struct SequentProof {
  std::string rule;
  Sequent conclusion;
  std::vector<SequentProof> premises;
};

class MalformedProof : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rewriting steps from T(lhs) to T(rhs) for one axiom instance. Throws
// MalformedProof when the sequent does not have the axiom's shape.
using AxiomTemplate = std::function<std::vector<RuleInstance>(const Sequent&)>;

// Templates for every axiom admitted by sys, keyed by rule name.
std::map<std::string, AxiomTemplate> AxiomDerivations(const System& sys);

// Derivation from T(lhs) to T(rhs) of the root conclusion.
// Throws MalformedProof.
Derivation TranslateSequentProof(const SequentProof& proof, const System& sys);

// Witness constructions for sums of trees. Each returns steps over the
// first named tree.
//   t ->* t + t
std::vector<RuleInstance> DuplicateToSum(const ModalTree& t);
//   a + b ->* a   and   a + b ->* b
std::vector<RuleInstance> ProjectLeft(const ModalTree& a, const ModalTree& b);
std::vector<RuleInstance> ProjectRight(const ModalTree& a, const ModalTree& b);
//   a + b ->* b + a
std::vector<RuleInstance> SwapSummands(const ModalTree& a, const ModalTree& b);
//   <D1 D2; G> ->* <D2 D1; G> at the root
std::vector<RuleInstance> PermuteAtoms(std::size_t n1, std::size_t n2);
//   steps valid on a are valid on a + b, ending at (a') + b
//   (the left summand keeps its index range, so steps carry over unchanged)
//   t ->* s and t ->* s'  give  t ->* s + s'
std::vector<RuleInstance> PairDerivations(const ModalTree& t,
                                          const std::vector<RuleInstance>& to_s,
                                          const std::vector<RuleInstance>& to_s2);

}  // namespace mtree

#endif  // MTREE_CALCULUS_H_
