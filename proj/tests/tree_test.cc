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

#include <gtest/gtest.h>

#include <cmath>

#include "support.h"

namespace mtree {
namespace {

ModalTree L(std::vector<std::string> atoms = {}) { return Leaf(std::move(atoms)); }
ModalTree N(std::vector<std::string> atoms, std::vector<Edge> kids) {
  return ModalTree{std::move(atoms), std::move(kids)};
}

TEST(Metrics, Width) {
  EXPECT_EQ(Width(L({"p"})), 1u);
  EXPECT_EQ(Width(N({}, {{0, L()}, {1, L()}})), 2u);
  EXPECT_EQ(Width(N({}, {{0, N({}, {{0, L()}, {0, L()}, {0, L()}})}})), 3u);
}

TEST(Metrics, Height) {
  EXPECT_EQ(Height(L({"p"})), 0u);
  EXPECT_EQ(Height(N({}, {{0, L()}})), 1u);
  EXPECT_EQ(Height(N({}, {{0, L()}, {1, N({}, {{2, L()}})}})), 2u);
}

TEST(Metrics, NodeCount) {
  EXPECT_EQ(NodeCount(L()), 1u);
  EXPECT_EQ(NodeCount(N({}, {{0, L()}, {1, L()}})), 3u);
  EXPECT_EQ(NodeCount(N({}, {{0, N({}, {{0, N({}, {{0, L()}})}})}})), 4u);
}

TEST(Sum, Examples) {
  const ModalTree a = L({"x"}), b = N({"y"}, {{4, L()}});
  EXPECT_EQ(Sum(L({"p"}), L({"q"})), L({"p", "q"}));
  EXPECT_EQ(Sum(N({}, {{0, a}}), N({}, {{1, b}})), N({}, {{0, a}, {1, b}}));
  EXPECT_EQ(Sum(L(), L()), L());
  EXPECT_EQ(BigSum({}), L());
  EXPECT_EQ(BigSum({b}), b);
  EXPECT_EQ(BigSum({L({"p"}), L({"q"})}), L({"p", "q"}));
}

TEST(Positions, Examples) {
  EXPECT_EQ(Positions(L()), std::vector<Position>{{}});
  EXPECT_EQ(Positions(N({}, {{0, L()}})), (std::vector<Position>{{}, {1}}));
  EXPECT_EQ(Positions(N({}, {{0, L()}, {0, N({}, {{1, L()}})}})),
            (std::vector<Position>{{}, {1}, {2}, {2, 1}}));
}

TEST(Positions, TextForm) {
  EXPECT_EQ(PositionToString({}), "e");
  EXPECT_EQ(PositionToString({}, ""), "");
  EXPECT_EQ(PositionToString({3, 1, 2}), "3.1.2");
  EXPECT_EQ(ParsePosition("e"), Position{});
  EXPECT_EQ(ParsePosition(""), Position{});
  EXPECT_EQ(ParsePosition("2.10"), (Position{2, 10}));
  EXPECT_THROW(ParsePosition("0"), std::invalid_argument);
  EXPECT_THROW(ParsePosition("1..2"), std::invalid_argument);
  EXPECT_THROW(ParsePosition("a"), std::invalid_argument);
}

TEST(Subtree, Examples) {
  const ModalTree a = L({"a"}), b = L({"b"});
  const ModalTree t = N({}, {{0, a}, {1, b}});
  EXPECT_EQ(Subtree(t, {}), t);
  EXPECT_EQ(Subtree(N({}, {{0, L({"p"})}}), {1}), L({"p"}));
  EXPECT_EQ(Subtree(t, {2}), b);
  EXPECT_THROW(Subtree(t, {3}), InvalidPosition);
  EXPECT_THROW(Subtree(t, {1, 1}), InvalidPosition);
}

TEST(Replace, Examples) {
  const ModalTree a = L({"a"}), b = L({"b"}), c = L({"c"});
  const ModalTree t = N({}, {{0, a}, {1, b}});
  EXPECT_EQ(Replace(t, {}, c), c);
  EXPECT_EQ(Replace(t, {1}, c), N({}, {{0, c}, {1, b}}));
  EXPECT_EQ(Replace(t, {2}, Subtree(t, {2})), t);
  EXPECT_THROW(Replace(t, {4}, c), InvalidPosition);
}

TEST(Debug, Rendering) {
  EXPECT_EQ(DebugString(N({"p"}, {{0, L()}})), "<[p];[(0,<[];[]>)]>");
}

class TreeProperty : public ::testing::Test {
 protected:
  testing::Rng rng{21};
  ModalTree Random() { return testing::RandomTree(rng, {4, 3, 3, 3, 2}); }
  Position RandomPosition(const ModalTree& t) {
    const auto all = Positions(t);
    return all[testing::Uniform(rng, 0, all.size() - 1)];
  }
};

TEST_F(TreeProperty, ReplacementAlgebra) {
  for (int n = 0; n < 3000; ++n) {
    const ModalTree t = Random();
    const Position k = RandomPosition(t);
    const ModalTree s = Random(), s2 = Random();
    const ModalTree sub = Subtree(t, k);
    const Position r = RandomPosition(sub);
    ASSERT_EQ(Subtree(sub, r), Subtree(t, Concat(k, r)));
    ASSERT_EQ(Replace(t, k, sub), t);
    ASSERT_EQ(Subtree(Replace(t, k, s), k), s);
    ASSERT_EQ(Replace(Replace(t, k, s2), k, s), Replace(t, k, s));
    const Position r2 = RandomPosition(s2);
    ASSERT_EQ(Replace(Replace(t, k, s2), Concat(k, r2), s),
              Replace(t, k, Replace(s2, r2, s)));
  }
}

TEST_F(TreeProperty, NodeCountBound) {
  for (int n = 0; n < 3000; ++n) {
    const ModalTree t = Random();
    const std::size_t h = Height(t);
    if (h == 0) {
      ASSERT_EQ(NodeCount(t), 1u);
    } else {
      ASSERT_LE(static_cast<double>(NodeCount(t)),
                std::pow(static_cast<double>(Width(t) + 1), h));
    }
  }
}

TEST_F(TreeProperty, SumNodeCount) {
  for (int n = 0; n < 2000; ++n) {
    const ModalTree a = Random(), b = Random();
    ASSERT_EQ(NodeCount(Sum(a, b)), NodeCount(a) + NodeCount(b) - 1);
  }
}

TEST_F(TreeProperty, PositionsArePreorderAndValid) {
  for (int n = 0; n < 1000; ++n) {
    const ModalTree t = Random();
    const auto all = Positions(t);
    ASSERT_EQ(all.size(), NodeCount(t));
    for (std::size_t k = 1; k < all.size(); ++k) ASSERT_LT(all[k - 1], all[k]);
    for (const Position& k : all) ASSERT_TRUE(HasPosition(t, k));
  }
}

TEST_F(TreeProperty, HashAgreesWithEquality) {
  for (int n = 0; n < 1000; ++n) {
    const ModalTree t = Random();
    ModalTree u = t;
    ASSERT_EQ(HashTree(t), HashTree(u));
  }
}

}  // namespace
}  // namespace mtree
