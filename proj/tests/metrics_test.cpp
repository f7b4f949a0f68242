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


#include "idspower/metrics.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace idspower {
namespace {

using testing::R;

AttackSet SetOf(const Scenario& s, std::initializer_list<const char*> ids) {
  AttackSet out(s.num_attacks());
  for (const char* id : ids) out.set(s.AttackIndex(id));
  return out;
}

TEST(ValueTest, Examples) {
  const Scenario s = testing::SingleSequence();
  EXPECT_EQ(Value(SetOf(s, {"a1", "a2", "a3"}), s.value_function), 3);
  EXPECT_EQ(Value(AttackSet(s.num_attacks()), s.value_function), 0);

  ScenarioSpec spec = testing::SingleSequenceSpec();
  spec.value_weights = {{"a1", 2}, {"a2", R(1, 2)}};
  const Scenario w = BuildScenario(spec);
  EXPECT_EQ(Value(SetOf(w, {"a1", "a2"}), w.value_function), R(5, 2));
}

TEST(EffectivenessTest, Examples) {
  const Scenario s = testing::SingleSequence();
  const auto& seq = s.sequences[0];
  EXPECT_EQ(Effectiveness(seq, s.libraries[0], s.value_function), R(2, 5));

  const Scenario tree = testing::AttackTree();
  // l4 = {a6} does not meet S1.
  EXPECT_EQ(Effectiveness(tree.sequences[0], tree.libraries[3],
                          tree.value_function),
            0);
  // l1 = {a1, a2} contains the two-attack prefix.
  AttackSequence prefix{"p", {tree.AttackIndex("a1"), tree.AttackIndex("a2")},
                        0};
  EXPECT_EQ(Effectiveness(prefix, tree.libraries[0], tree.value_function), 1);
  EXPECT_THROW(Effectiveness(AttackSequence{"e", {}, 0}, tree.libraries[0],
                             tree.value_function),
               MetricError);
}

TEST(DetectabilityTest, Examples) {
  const Scenario s = testing::SingleSequence();
  EXPECT_EQ(Detectability(s.sequences[0], s.AllLibraries(), s), R(4, 5));
  EXPECT_EQ(Detectability(s.sequences[0], Configuration(), s), 0);
  const Scenario tree = testing::AttackTree();
  EXPECT_EQ(Detectability(tree.sequences[2],
                          tree.MakeConfiguration({"l1", "l2"}), tree),
            1);
}

TEST(WeightedDetectabilityTest, Examples) {
  const Scenario s = testing::SingleSequence();
  EXPECT_EQ(WeightedDetectability(s.sequences[0], s.AllLibraries(), s),
            Detectability(s.sequences[0], s.AllLibraries(), s));

  ScenarioSpec zero = testing::SingleSequenceSpec();
  for (auto& lib : zero.libraries) {
    for (const auto& a : lib.scope) lib.tp[a] = 0;
  }
  const Scenario z = BuildScenario(zero);
  EXPECT_EQ(WeightedDetectability(z.sequences[0], z.AllLibraries(), z), 0);

  ScenarioSpec half = testing::SingleSequenceSpec();
  half.libraries[0].tp = {{"a1", R(1, 2)}, {"a2", R(1, 2)}};
  const Scenario h = BuildScenario(half);
  EXPECT_EQ(WeightedDetectability(h.sequences[0], h.AllLibraries(), h),
            R(3, 5));
}

TEST(EfficiencyTest, Examples) {
  const Scenario s = testing::SingleSequence();
  EXPECT_EQ(Efficiency(s.sequences[0], s.AllLibraries(), s), 1);

  const Scenario tree = testing::AttackTree();
  // l4 covers only a6, which S1 does not contain.
  EXPECT_EQ(Efficiency(tree.sequences[0], tree.MakeConfiguration({"l4"}), tree),
            0);
  EXPECT_EQ(Efficiency(tree.sequences[1], tree.AllLibraries(), tree),
            R(3, 7));
  EXPECT_THROW(Efficiency(tree.sequences[1], Configuration(), tree),
               MetricError);
  EXPECT_THROW(WeightedEfficiency(tree.sequences[1], Configuration(), tree),
               MetricError);
}

TEST(TradeoffCheckTest, Examples) {
  const Scenario tree = testing::AttackTree();
  // {l1, l2} covers exactly S3.
  const MetricReport exact =
      TradeoffCheck(tree.sequences[2], tree.MakeConfiguration({"l1", "l2"}),
                    tree);
  EXPECT_EQ(exact.eta, 1);
  EXPECT_EQ(exact.zeta, 1);
  EXPECT_EQ(*exact.tradeoff_sum, 2);
  EXPECT_TRUE(exact.lower_bound_holds);

  const Scenario s = testing::SingleSequence();
  const MetricReport fig1 = TradeoffCheck(s.sequences[0], s.AllLibraries(), s);
  EXPECT_EQ(*fig1.tradeoff_sum, R(9, 4));
  EXPECT_TRUE(fig1.lower_bound_holds);

  // eta = zeta = 1/2: S = {a1, a5}, config {l1} covers {a1, a2}.
  AttackSequence half{"h", {s.AttackIndex("a1"), s.AttackIndex("a5")}, 0};
  const MetricReport hr =
      TradeoffCheck(half, s.MakeConfiguration({"l1"}), s);
  EXPECT_EQ(hr.eta, R(1, 2));
  EXPECT_EQ(hr.zeta, R(1, 2));
  EXPECT_EQ(*hr.tradeoff_sum, 4);
  EXPECT_TRUE(hr.lower_bound_holds);

  const MetricReport empty = TradeoffCheck(s.sequences[0], Configuration(), s);
  EXPECT_FALSE(empty.tradeoff_sum.has_value());
  EXPECT_FALSE(empty.zeta_defined);
  EXPECT_TRUE(empty.lower_bound_holds);
  EXPECT_TRUE(std::isinf(empty.tradeoff_sum_value()));
}

// Range, ordering, tradeoff bound, monotonicity, decomposition and scale
// invariance on random scenarios.
TEST(MetricsPropertyTest, RandomScenarios) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const ScenarioSpec spec = testing::RandomScenarioSpec(rng);
    const Scenario s = BuildScenario(spec);
    ScenarioSpec scaled_spec = spec;
    for (const auto& a : spec.attacks) {
      auto it = spec.value_weights.find(a.id);
      scaled_spec.value_weights[a.id] =
          (it == spec.value_weights.end() ? Rational(1) : it->second) * R(7, 3);
    }
    const Scenario scaled = BuildScenario(scaled_spec);

    const std::uint64_t all = s.AllLibraries().bits();
    const Configuration f1(rng() & all);
    const Configuration f2(f1.bits() | (rng() & all));
    for (const auto& seq : s.sequences) {
      const MetricReport m = TradeoffCheck(seq, f1, s);
      for (const Rational* v : {&m.eta, &m.eta_weighted, &m.zeta,
                                &m.zeta_weighted}) {
        EXPECT_GE(*v, 0);
        EXPECT_LE(*v, 1);
      }
      EXPECT_LE(m.eta_weighted, m.eta);
      EXPECT_LE(m.zeta_weighted, m.zeta);
      EXPECT_TRUE(m.lower_bound_holds);
      if (m.tradeoff_sum) {
        EXPECT_GE(*m.tradeoff_sum, 1);
      }

      EXPECT_LE(m.eta, Detectability(seq, f2, s));

      Rational sum = 0;
      for (auto l : f1.Members()) {
        sum += Effectiveness(seq, s.libraries[l], s.value_function);
      }
      EXPECT_EQ(sum, m.eta);

      const MetricReport ms = TradeoffCheck(seq, f1, scaled);
      EXPECT_EQ(ms.eta, m.eta);
      EXPECT_EQ(ms.zeta, m.zeta);
    }
  }
}

}  // namespace
}  // namespace idspower
