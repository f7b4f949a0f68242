// Copyright 2026 The idspower Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "idspower/optimize.hpp"

#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace idspower {
namespace {

using testing::R;
using testing::Rs;

const std::vector<Rational> kTreeShapley = Rs({R(5, 8), R(1, 4), R(1, 8), 0});
const std::vector<Rational> kUnitCosts = Rs({1, 1, 1, 1});

TEST(OptimizeTest, BudgetTwoPicksFirstTwoLibraries) {
  for (auto method : {SelectionMethod::kDp, SelectionMethod::kExhaustive,
                      SelectionMethod::kGreedy}) {
    const SelectionResult r =
        OptimizeDefaultConfig(kTreeShapley, kUnitCosts, 2, method);
    EXPECT_EQ(r.chosen, Configuration::FromIndices({0, 1}));
    EXPECT_EQ(r.objective, R(7, 8));
    EXPECT_EQ(r.budget_used, 2);
    EXPECT_EQ(r.method, method);
  }
}

TEST(OptimizeTest, ZeroBudget) {
  const SelectionResult r = OptimizeDefaultConfig(kTreeShapley, kUnitCosts, 0);
  EXPECT_TRUE(r.chosen.empty());
  EXPECT_EQ(r.objective, 0);
}

TEST(OptimizeTest, ZeroIndexLibraryLeftOut) {
  const SelectionResult r = OptimizeDefaultConfig(kTreeShapley, kUnitCosts, 4);
  EXPECT_EQ(r.chosen, Configuration::FromIndices({0, 1, 2}));
  EXPECT_EQ(r.objective, 1);
  EXPECT_EQ(r.budget_used, 3);
}

TEST(OptimizeTest, LexicographicTieBreak) {
  // {l1, l4} and {l2, l3} both reach 1/2 at cost 2; l1 < l2 decides.
  const auto values = Rs({R(1, 4), R(1, 4), R(1, 4), R(1, 4)});
  const SelectionResult r = OptimizeDefaultConfig(values, kUnitCosts, 2);
  EXPECT_EQ(r.chosen, Configuration::FromIndices({0, 1}));
  // Equal value, cheaper set wins.
  const SelectionResult c =
      OptimizeDefaultConfig(Rs({R(1, 2), R(1, 2)}), Rs({3, 2}), 3);
  EXPECT_EQ(c.chosen, Configuration::FromIndices({1}));
}

TEST(OptimizeTest, DecimalCosts) {
  const SelectionResult r = OptimizeDefaultConfig(
      Rs({R(1, 2), R(1, 3), R(1, 6)}), Rs({R(5, 2), R(3, 2), R(1, 10)}), 4);
  EXPECT_EQ(r.chosen, Configuration::FromIndices({0, 1}));
  EXPECT_EQ(r.budget_used, 4);
}

TEST(OptimizeTest, Errors) {
  EXPECT_THROW(OptimizeDefaultConfig(Rs({1}), Rs({-1}), 1), SelectionError);
  EXPECT_THROW(OptimizeDefaultConfig(Rs({1}), Rs({1}), -1), SelectionError);
  EXPECT_THROW(OptimizeDefaultConfig(Rs({1}), Rs({R(1, 3)}), 1),
               SelectionError);
  EXPECT_THROW(OptimizeDefaultConfig(Rs({1, 1}), Rs({1}), 1),
               std::invalid_argument);
  EXPECT_THROW(
      OptimizeDefaultConfig(Rs({1, 1}), Rs({R(1, 1000000), 2}), 2),
      SelectionError);  // 2e6 columns
  EXPECT_EQ(OptimizeDefaultConfig(Rs({1}), Rs({R(1, 3)}), 1,
                                  SelectionMethod::kGreedy)
                .chosen,
            Configuration::FromIndices({0}));
}

TEST(ExhaustiveOracleTest, Examples) {
  EXPECT_TRUE(ExhaustiveOracle(Rs({1, 2}), Rs({5, 6}), 4).chosen.empty());
  EXPECT_EQ(ExhaustiveOracle(Rs({R(1, 2)}), Rs({1}), 1).chosen,
            Configuration::FromIndices({0}));
  std::vector<Rational> big(21, Rational(1));
  EXPECT_THROW(ExhaustiveOracle(big, big, 3), SelectionError);
}

// DP agrees with the exhaustive oracle on objective and chosen set; the
// objective is monotone in the budget; zero-value positive-cost items are
// never chosen; the chosen set is always feasible.
TEST(OptimizePropertyTest, DpMatchesExhaustive) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 14;
    std::vector<Rational> values;
    std::vector<Rational> costs;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(R(static_cast<std::int64_t>(rng() % 6), 1 + rng() % 5));
      costs.push_back(R(1 + static_cast<std::int64_t>(rng() % 10)));
    }
    const Rational budget = R(static_cast<std::int64_t>(rng() % 41));
    const SelectionResult dp = KnapsackDp(values, costs, budget);
    const SelectionResult ex = ExhaustiveOracle(values, costs, budget);
    EXPECT_EQ(dp.objective, ex.objective);
    EXPECT_EQ(dp.chosen, ex.chosen);
    EXPECT_LE(dp.budget_used, budget);
    Rational sum = 0;
    for (auto i : dp.chosen.Members()) {
      sum += values[i];
      EXPECT_GT(values[i], 0);
    }
    EXPECT_EQ(sum, dp.objective);
    EXPECT_GE(KnapsackDp(values, costs, budget + 3).objective, dp.objective);
  }
}

}  // namespace
}  // namespace idspower
