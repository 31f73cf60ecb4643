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

#ifndef MTREE_RULES_H_
#define MTREE_RULES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtree/formula.h"
#include "mtree/tree.h"

namespace mtree {

// Declaration order is the canonical kind order used for enumeration.
enum class RuleKind : std::uint8_t {
  kRhoPlus,
  kRhoMinus,
  kSigma,
  kPiPlus,
  kPiMinus,
  kFour,
  kM,
  kJ,
};
inline constexpr int kNumRuleKinds = 8;

// Declaration order is the block order of a normal rewriting sequence.
enum class KindClass : std::uint8_t {
  kReplicative,
  kModal,
  kDecreasing,
  kAtomic,
  kStructural,
};

KindClass ClassOf(RuleKind kind);
std::string_view KindName(RuleKind kind);
std::string_view ClassName(KindClass c);
// Accepts the canonical names and the aliases 4, j, rho+, rho-, pi+, pi-.
std::optional<RuleKind> KindFromName(std::string_view name);

class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr KindSet(std::initializer_list<RuleKind> kinds) {
    for (RuleKind k : kinds) bits_ |= Bit(k);
  }
  static constexpr KindSet All() {
    KindSet s;
    s.bits_ = 0xff;
    return s;
  }
  constexpr bool contains(RuleKind k) const { return (bits_ & Bit(k)) != 0; }
  constexpr KindSet& insert(RuleKind k) {
    bits_ |= Bit(k);
    return *this;
  }
  constexpr bool operator==(const KindSet& o) const = default;
  constexpr bool SubsetOf(const KindSet& o) const {
    return (bits_ & ~o.bits_) == 0;
  }

 private:
  static constexpr std::uint8_t Bit(RuleKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

// One rewrite step. Arguments by kind:
//   rho_plus, rho_minus: i (atom index)
//   sigma, J:            i, j (child indices, i != j)
//   pi_plus, pi_minus, four: i (child index)
//   m:                   i (child index), beta (new label)
// Indices are 1-based; unused arguments are zero.
struct RuleInstance {
  RuleKind kind = RuleKind::kRhoPlus;
  Position pos;
  std::size_t i = 0;
  std::size_t j = 0;
  Label beta = 0;

  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
  friend bool operator<(const RuleInstance& a, const RuleInstance& b);
};

RuleInstance RhoPlus(Position pos, std::size_t i);
RuleInstance RhoMinus(Position pos, std::size_t i);
RuleInstance Sigma(Position pos, std::size_t i, std::size_t j);
RuleInstance PiPlus(Position pos, std::size_t i);
RuleInstance PiMinus(Position pos, std::size_t i);
RuleInstance Four(Position pos, std::size_t i);
RuleInstance M(Position pos, std::size_t i, Label beta);
RuleInstance J(Position pos, std::size_t i, std::size_t j);

// `J@1.2(i=1,j=3)`, `m@e(i=2,b=0)`.
std::string ToString(const RuleInstance& r);
std::string ToString(const std::vector<RuleInstance>& rs);
// Throws std::invalid_argument on malformed text.
RuleInstance ParseRule(std::string_view text);

class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// nullopt when applicable, otherwise the violated side condition.
std::optional<std::string> WhyNotApplicable(const ModalTree& t,
                                            const RuleInstance& r);
bool Applicable(const ModalTree& t, const RuleInstance& r);

// Throws NotApplicable.
ModalTree Apply(const ModalTree& t, const RuleInstance& r);
void ApplyInPlace(ModalTree* t, const RuleInstance& r);
ModalTree ApplyAll(const ModalTree& t, const std::vector<RuleInstance>& rs);

RuleInstance Lift(const RuleInstance& r, const Position& prefix);
std::vector<RuleInstance> Lift(const std::vector<RuleInstance>& rs,
                               const Position& prefix);

// Transpositions at node `pos` that rearrange children currently ordered as
// `current` (opaque ids) into `target`, a permutation of `current`. Uses
// selection order: for each slot left to right, swap in the wanted child.
// At most |current| - 1 steps.
std::vector<RuleInstance> SortingSigmas(const Position& pos,
                                        std::vector<std::size_t> current,
                                        const std::vector<std::size_t>& target);

// All applicable instances of the allowed kinds ordered by position, then
// kind, then arguments. For m, beta ranges over 0..alpha-1.
std::vector<RuleInstance> EnumerateApplicable(const ModalTree& t,
                                              KindSet allowed);

}  // namespace mtree

#endif  // MTREE_RULES_H_
