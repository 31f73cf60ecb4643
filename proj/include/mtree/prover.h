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

#ifndef MTREE_PROVER_H_
#define MTREE_PROVER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtree/calculus.h"
#include "mtree/formula.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

// Satisfaction of f at the root of t read as a Kripke model.
bool Models(const ModalTree& t, const Formula& f);

// Decides phi |- psi in K+.
bool EntailsKPlus(const Formula& phi, const Formula& psi);

struct SearchBudget {
  std::size_t max_steps = 12;
  std::size_t max_nodes = 32;
  std::size_t max_states = 200000;
  unsigned threads = 1;

  // Throws std::invalid_argument unless every field is >= 1.
  void Validate() const;
};

enum class Verdict { kProved, kRefuted, kUnknown };

std::string_view VerdictName(Verdict v);

struct ProofResult {
  Verdict verdict = Verdict::kUnknown;
  std::optional<Derivation> derivation;  // set iff kProved
  std::string diagnostics;
  std::size_t states = 0;
};

// Atomic and structural steps turning `from` into `to`, if they exist.
// Exact: the two trees must agree up to atom lists and child order, with
// every target atom available at the matching source node.
std::optional<std::vector<RuleInstance>> CompletionSteps(const ModalTree& from,
                                                         const ModalTree& to);

// Search from `start` to `target` without the K+ oracle. m-steps only use
// labels from `beta_labels`. Unless `strict_normal`, an atom deletion that
// empties the intermediate node of a four step is also tried among the
// decreasing steps.
ProofResult SearchTrees(const ModalTree& start, const ModalTree& target,
                        const System& sys, const SearchBudget& budget,
                        const std::vector<Label>& beta_labels,
                        bool strict_normal = false);

ProofResult Prove(const Formula& phi, const Formula& psi, const System& sys,
                  const SearchBudget& budget = {});

enum class Equivalence { kEquivalent, kNotEquivalent, kUnknown };

Equivalence Equiv(const Formula& phi, const Formula& psi, const System& sys,
                  const SearchBudget& budget = {});

}  // namespace mtree

#endif  // MTREE_PROVER_H_
