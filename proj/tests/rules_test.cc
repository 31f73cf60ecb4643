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

#include "mtree/rules.h"

#include <gtest/gtest.h>

#include "mtree/embed.h"
#include "mtree/prover.h"
#include "support.h"

namespace mtree {
namespace {

ModalTree L(std::vector<std::string> atoms = {}) { return Leaf(std::move(atoms)); }
ModalTree N(std::vector<std::string> atoms, std::vector<Edge> kids) {
  return ModalTree{std::move(atoms), std::move(kids)};
}

TEST(Kinds, Classes) {
  EXPECT_EQ(ClassOf(RuleKind::kRhoPlus), KindClass::kAtomic);
  EXPECT_EQ(ClassOf(RuleKind::kRhoMinus), KindClass::kAtomic);
  EXPECT_EQ(ClassOf(RuleKind::kSigma), KindClass::kStructural);
  EXPECT_EQ(ClassOf(RuleKind::kPiPlus), KindClass::kReplicative);
  EXPECT_EQ(ClassOf(RuleKind::kPiMinus), KindClass::kDecreasing);
  EXPECT_EQ(ClassOf(RuleKind::kFour), KindClass::kDecreasing);
  EXPECT_EQ(ClassOf(RuleKind::kM), KindClass::kModal);
  EXPECT_EQ(ClassOf(RuleKind::kJ), KindClass::kModal);
}

TEST(Kinds, NamesRoundTrip) {
  for (int k = 0; k < kNumRuleKinds; ++k) {
    const auto kind = static_cast<RuleKind>(k);
    EXPECT_EQ(KindFromName(KindName(kind)), kind);
  }
  EXPECT_EQ(KindFromName("4"), RuleKind::kFour);
  EXPECT_EQ(KindFromName("j"), RuleKind::kJ);
  EXPECT_FALSE(KindFromName("tau").has_value());
}

TEST(RuleText, RoundTrip) {
  for (const RuleInstance& r :
       {RhoPlus({}, 1), RhoMinus({2, 1}, 3), Sigma({1}, 1, 2), PiPlus({}, 2),
        PiMinus({3}, 1), Four({}, 1), M({1, 1}, 1, 0), J({}, 1, 2)}) {
    EXPECT_EQ(ParseRule(ToString(r)), r) << ToString(r);
  }
  EXPECT_EQ(ToString(Four({3, 1, 1}, 2)), "four@3.1.1(i=2)");
  EXPECT_EQ(ParseRule("j@e(i=1,j=2)"), J({}, 1, 2));
  EXPECT_EQ(ParseRule("m@1(i=1,beta=0)"), M({1}, 1, 0));
  EXPECT_THROW(ParseRule("four@(i=1"), std::invalid_argument);
  EXPECT_THROW(ParseRule("warp@e(i=1)"), std::invalid_argument);
}

TEST(Applicable, Examples) {
  EXPECT_TRUE(Applicable(N({}, {{2, N({}, {{2, L()}})}}), Four({}, 1)));
  EXPECT_FALSE(Applicable(N({}, {{2, N({"p"}, {{2, L()}})}}), Four({}, 1)));
  const ModalTree t = N({}, {{0, L({"a"})}, {1, L({"b"})}});
  EXPECT_FALSE(Applicable(t, J({}, 1, 2)));
  EXPECT_TRUE(Applicable(t, J({}, 2, 1)));
}

TEST(Applicable, NamesTheFailedCondition) {
  const ModalTree t = N({}, {{0, L({"a"})}, {1, L({"b"})}});
  EXPECT_NE(WhyNotApplicable(t, J({}, 1, 2))->find("label"), std::string::npos);
  EXPECT_NE(WhyNotApplicable(t, PiPlus({}, 3))->find("index"), std::string::npos);
  EXPECT_NE(WhyNotApplicable(t, RhoMinus({}, 1))->find("index"),
            std::string::npos);
  EXPECT_NE(WhyNotApplicable(N({}, {{2, N({"p"}, {{2, L()}})}}), Four({}, 1))
                ->find("4-shape"),
            std::string::npos);
  EXPECT_NE(WhyNotApplicable(t, M({}, 1, 0))->find("label"), std::string::npos);
  EXPECT_TRUE(WhyNotApplicable(t, PiMinus({5}, 1)).has_value());
  EXPECT_THROW(Apply(t, J({}, 1, 2)), NotApplicable);
}

TEST(Apply, Examples) {
  const ModalTree s = N({"s"}, {{4, L()}});
  EXPECT_EQ(Apply(N({}, {{2, N({}, {{2, s}})}}), Four({}, 1)), N({}, {{2, s}}));
  const ModalTree inner = N({"d"}, {{0, L({"g"})}});
  EXPECT_EQ(Apply(N({}, {{3, inner}, {1, s}}), J({}, 1, 2)),
            N({}, {{3, N({"d"}, {{0, L({"g"})}, {1, s}})}}));
  EXPECT_EQ(Apply(L({"p"}), RhoPlus({}, 1)), L({"p", "p"}));
}

TEST(Apply, JReadsBothIndicesAgainstTheOriginalList) {
  const ModalTree a = L({"a"}), b = L({"b"}), c = L({"c"});
  const ModalTree t = N({}, {{2, a}, {1, b}, {0, c}});
  // i < j
  EXPECT_EQ(Apply(t, J({}, 1, 3)), N({}, {{2, N({"a"}, {{0, c}})}, {1, b}}));
  // j < i
  EXPECT_EQ(Apply(t, J({}, 2, 3)), N({}, {{2, a}, {1, N({"b"}, {{0, c}})}}));
  EXPECT_EQ(Apply(N({}, {{0, c}, {2, a}}), J({}, 2, 1)),
            N({}, {{2, N({"a"}, {{0, c}})}}));
  for (const ModalTree& u : {t, N({}, {{0, c}, {2, a}})}) {
    for (const RuleInstance& r : EnumerateApplicable(u, {RuleKind::kJ})) {
      EXPECT_EQ(NodeCount(Apply(u, r)), NodeCount(u));
    }
  }
}

TEST(Apply, PiPlusPrepends) {
  const ModalTree t = N({}, {{0, L({"a"})}, {1, L({"b"})}});
  EXPECT_EQ(Apply(t, PiPlus({}, 2)),
            N({}, {{1, L({"b"})}, {0, L({"a"})}, {1, L({"b"})}}));
}

TEST(Lift, Examples) {
  EXPECT_EQ(Lift(Four({1}, 2), {3, 1}), Four({3, 1, 1}, 2));
  EXPECT_EQ(Lift(Sigma({}, 1, 2), {2}), Sigma({2}, 1, 2));
}

TEST(Enumerate, Examples) {
  EXPECT_TRUE(EnumerateApplicable(L(), KindSet::All()).empty());
  EXPECT_EQ(EnumerateApplicable(L({"p"}), KindSet::All()),
            (std::vector<RuleInstance>{RhoPlus({}, 1), RhoMinus({}, 1)}));
  EXPECT_EQ(EnumerateApplicable(N({}, {{1, L()}, {0, L()}}),
                                {RuleKind::kM, RuleKind::kJ}),
            (std::vector<RuleInstance>{M({}, 1, 0), J({}, 1, 2)}));
}

TEST(SortingSigmas, SelectionOrder) {
  const auto s = SortingSigmas({}, {1, 2, 3, 4, 5, 7}, {1, 3, 4, 5, 2, 7});
  EXPECT_EQ(s, (std::vector<RuleInstance>{Sigma({}, 2, 3), Sigma({}, 3, 4),
                                           Sigma({}, 4, 5)}));
  EXPECT_TRUE(SortingSigmas({}, {1, 2}, {1, 2}).empty());
}

class RuleProperty : public ::testing::Test {
 protected:
  testing::Rng rng{41};
  ModalTree Random() { return testing::RandomTree(rng, {3, 3, 2, 3, 2}); }
  // A random tree together with a random applicable instance.
  std::pair<ModalTree, RuleInstance> RandomStep() {
    for (;;) {
      const ModalTree t = Random();
      const auto all = EnumerateApplicable(t, KindSet::All());
      if (all.empty()) continue;
      return {t, all[testing::Uniform(rng, 0, all.size() - 1)]};
    }
  }
};

TEST_F(RuleProperty, EnumeratedInstancesAreExactlyTheApplicableOnes) {
  for (int n = 0; n < 300; ++n) {
    const ModalTree t = Random();
    const auto all = EnumerateApplicable(t, KindSet::All());
    for (const RuleInstance& r : all) ASSERT_TRUE(Applicable(t, r)) << ToString(r);
    // Exhaustive over a superset of argument ranges.
    std::size_t count = 0;
    for (const Position& k : Positions(t)) {
      const ModalTree& node = Subtree(t, k);
      const std::size_t na = node.atoms.size(), nc = node.children.size();
      for (int kind = 0; kind < kNumRuleKinds; ++kind) {
        for (std::size_t i = 0; i <= std::max(na, nc) + 1; ++i) {
          for (std::size_t j = 0; j <= nc + 1; ++j) {
            for (Label b = 0; b < 4; ++b) {
              RuleInstance r{static_cast<RuleKind>(kind), k, i, 0, 0};
              if (r.kind == RuleKind::kSigma || r.kind == RuleKind::kJ) {
                r.j = j;
              } else if (j > 0) {
                continue;
              }
              if (r.kind == RuleKind::kM) {
                r.beta = b;
              } else if (b > 0) {
                continue;
              }
              if (Applicable(t, r)) ++count;
            }
          }
        }
      }
    }
    ASSERT_EQ(count, all.size()) << DebugString(t);
  }
}

TEST_F(RuleProperty, MetricLaws) {
  for (int n = 0; n < 5000; ++n) {
    const auto [t, r] = RandomStep();
    const ModalTree s = Apply(t, r);
    const std::size_t n0 = NodeCount(t), n1 = NodeCount(s);
    const std::size_t h0 = Height(t), h1 = Height(s);
    const std::size_t w0 = Width(t), w1 = Width(s);
    switch (r.kind) {
      case RuleKind::kPiPlus:
        ASSERT_LE(n1, 2 * n0 - 1);
        ASSERT_EQ(h1, h0);
        ASSERT_LE(w1, w0 + 1);
        break;
      case RuleKind::kJ:
        ASSERT_EQ(n1, n0);
        ASSERT_LE(h1, h0 + 1);
        ASSERT_LE(w1, w0 + 1);
        break;
      default:
        ASSERT_LE(n1, n0) << ToString(r);
        ASSERT_LE(h1, h0) << ToString(r);
        ASSERT_LE(w1, w0) << ToString(r);
    }
  }
}

TEST_F(RuleProperty, DeterministicAndSigmaInvolution) {
  for (int n = 0; n < 2000; ++n) {
    const auto [t, r] = RandomStep();
    ASSERT_EQ(Apply(t, r), Apply(t, r));
    if (r.kind == RuleKind::kSigma) ASSERT_EQ(Apply(Apply(t, r), r), t);
  }
}

TEST_F(RuleProperty, DeepRewriting) {
  for (int n = 0; n < 3000; ++n) {
    const auto [s, r] = RandomStep();
    const ModalTree t = Random();
    const auto ps = Positions(t);
    const Position k = ps[testing::Uniform(rng, 0, ps.size() - 1)];
    const ModalTree big = Replace(t, k, s);
    ASSERT_EQ(Apply(big, Lift(r, k)), Replace(t, k, Apply(s, r)));
  }
}

TEST_F(RuleProperty, KPlusStepsAreSound) {
  const KindSet kplus = {RuleKind::kRhoPlus, RuleKind::kRhoMinus,
                         RuleKind::kSigma, RuleKind::kPiPlus,
                         RuleKind::kPiMinus};
  for (int n = 0; n < 3000; ++n) {
    const ModalTree t = Random();
    const auto all = EnumerateApplicable(t, kplus);
    if (all.empty()) continue;
    const ModalTree s = Apply(t, all[testing::Uniform(rng, 0, all.size() - 1)]);
    ASSERT_TRUE(Models(t, ToFormula(s)));
  }
}

}  // namespace
}  // namespace mtree
