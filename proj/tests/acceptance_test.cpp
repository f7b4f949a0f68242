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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "idspower/idspower.hpp"
#include "test_support.hpp"

namespace idspower {
namespace {

using testing::R;
using testing::Rs;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string Row(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += FormatRational(v[i]);
  }
  return out + ")";
}

// --- 1 ---------------------------------------------------------------------

Outcome BanzhafTable() {
  Outcome o;
  const auto start = Clock::now();
  const Scenario s = testing::AttackTree();
  const std::vector<std::vector<Rational>> expected = {
      Rs({R(3, 5), R(1, 5), R(1, 5), 0}), Rs({1, 0, 0, 0}),
      Rs({R(1, 2), R(1, 2), 0, 0}), Rs({R(1, 3), R(1, 3), R(1, 3), 0})};
  for (std::size_t j = 0; j < s.sequences.size(); ++j) {
    const IndexVector v = Banzhaf(BuildGame(s.sequences[j], s));
    if (v.values != expected[j]) {
      o.Fail(s.sequences[j].id + " = " + Row(v.values));
    }
  }
  const double t = Seconds(start);
  if (t >= 1.0) o.Fail("runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "S1-S4 exact, " + std::to_string(t) + " s";
  return o;
}

// --- 2 ---------------------------------------------------------------------

Outcome ShapleyTable() {
  Outcome o;
  const Scenario s = testing::AttackTree();
  const std::vector<std::vector<Rational>> expected = {
      Rs({R(2, 3), R(1, 6), R(1, 6), 0}), Rs({1, 0, 0, 0}),
      Rs({R(1, 2), R(1, 2), 0, 0}), Rs({R(1, 3), R(1, 3), R(1, 3), 0})};
  for (std::size_t j = 0; j < s.sequences.size(); ++j) {
    const SequenceGame g = BuildGame(s.sequences[j], s);
    const IndexVector v = ShapleyExact(g);
    if (v.values != expected[j]) {
      o.Fail(s.sequences[j].id + " = " + Row(v.values));
    }
    if (v.values != testing::OracleShapley(g.weights(), g.omega())) {
      o.Fail(s.sequences[j].id + " disagrees with the oracle");
    }
    if (v.Sum() != 1) o.Fail(s.sequences[j].id + " does not sum to 1");
  }
  if (o.pass) o.detail = "S2-S4 exact, S1 = (2/3,1/6,1/6,0) per oracle, sums 1";
  return o;
}

// --- 3 ---------------------------------------------------------------------

Outcome BudgetTwoSelection() {
  Outcome o;
  const Scenario s = testing::AttackTree();
  RankOptions options;
  const RankResult ranked = RankLibraries(s, options);
  std::vector<Rational> costs;
  for (const auto& lib : s.libraries) costs.push_back(lib.cost);
  const SelectionResult sel =
      OptimizeDefaultConfig(ranked.aggregate.values, costs, 2);
  const auto ids = LibraryIds(sel.chosen, s);
  if (ids != std::vector<std::string>{"l1", "l2"}) {
    std::string got;
    for (const auto& id : ids) got += id + " ";
    o.Fail("chose " + got);
  } else {
    o.detail = "{l1,l2}";
  }
  return o;
}

// --- 4 ---------------------------------------------------------------------

Outcome OracleEquivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240401);
  int scenarios = 0;
  int games = 0;
  for (; scenarios < 250; ++scenarios) {
    const Scenario s = BuildScenario(testing::RandomScenarioSpec(rng));
    std::vector<MleGame> mles;
    std::vector<IndexVector> shapleys;
    std::vector<Rational> p;
    for (const auto& seq : s.sequences) {
      for (bool weighted : {false, true}) {
        const SequenceGame g = BuildGame(seq, s, weighted);
        const MleGame mle(g);
        const IndexVector sh = ShapleyExact(g);
        const IndexVector bc = Banzhaf(g);
        ++games;
        if (sh.values != ShapleyDp(g).values ||
            sh.values != ShapleyViaMle(mle).values) {
          o.Fail("Shapley mismatch in scenario " + std::to_string(scenarios));
        }
        if (bc.values != BanzhafDp(g).values ||
            bc.values != BcViaMle(mle).normalized.values) {
          o.Fail("Banzhaf mismatch in scenario " + std::to_string(scenarios));
        }
        if (!weighted) {
          mles.push_back(mle);
          shapleys.push_back(sh);
          p.push_back(seq.weight);
        }
      }
    }
    if (IndicesOfAggregateMle(mles, p).shapley.values !=
        AggregateIndices(shapleys, p).values) {
      o.Fail("aggregate mismatch in scenario " + std::to_string(scenarios));
    }
  }
  const double t = Seconds(start);
  if (t >= 60.0) o.Fail("runtime " + std::to_string(t) + " s");
  if (o.pass) {
    o.detail = std::to_string(scenarios) + " scenarios, " +
               std::to_string(games) + " games, " + std::to_string(t) + " s";
  }
  return o;
}

// --- 5 ---------------------------------------------------------------------

Outcome Axioms() {
  Outcome o;
  std::mt19937_64 rng(777);
  int cases = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++cases;
    if (!ok) o.Fail(what + " violated (case " + std::to_string(cases) + ")");
  };
  for (int trial = 0; trial < 300; ++trial) {
    const Scenario s = BuildScenario(testing::RandomScenarioSpec(rng));
    const std::size_t n = s.num_libraries();
    for (const auto& seq : s.sequences) {
      const SequenceGame g = BuildGame(seq, s);
      const IndexVector sh = ShapleyExact(g);
      const IndexVector bc = Banzhaf(g);
      const Rational grand = g.GrandCoalitionWins() ? 1 : 0;
      check(sh.Sum() == grand, "efficiency");
      check(bc.degenerate ? bc.Sum() == 0 : bc.Sum() == 1,
            "Banzhaf normalization");
      for (std::size_t i = 0; i < n; ++i) {
        if (IsDummy(i, g)) {
          check(sh.values[i] == 0 && bc.values[i] == 0, "dummy-zero");
        }
        for (std::size_t k = i + 1; k < n; ++k) {
          if (g.weights()[i] == g.weights()[k]) {
            check(sh.values[i] == sh.values[k] &&
                      bc.values[i] == bc.values[k],
                  "symmetry");
          }
        }
      }
      // Vertex interpolation on a handful of corners.
      const MleGame mle(g);
      for (int v = 0; v < 4; ++v) {
        const std::uint64_t mask =
            rng() & ((n == 64 ? 0 : (std::uint64_t{1} << n)) - 1);
        std::vector<Rational> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U;
        check(MleEvaluate(mle, x) == (g.Wins(Configuration(mask)) ? 1 : 0),
              "vertex interpolation");
      }
      // Tradeoff lower bound on random configurations.
      for (int c = 0; c < 3; ++c) {
        const Configuration config(rng() &
                                   ((std::uint64_t{1} << n) - 1));
        check(TradeoffCheck(seq, config, s).lower_bound_holds,
              "tradeoff lower bound");
      }
    }
  }
  if (cases < 500) o.Fail("only " + std::to_string(cases) + " cases");
  if (o.pass) o.detail = std::to_string(cases) + " cases, 0 violations";
  return o;
}

// --- 6 ---------------------------------------------------------------------

// A single sequence whose libraries detect 0-3 of its attacks each, under
// the cardinality value function.
SequenceGame CardinalityGame(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> counts(0, 3);
  std::vector<int> c(n);
  int total = 0;
  for (auto& x : c) total += (x = counts(rng));
  if (total == 0) c[0] = total = 1;
  std::vector<Rational> w;
  for (int x : c) w.push_back(R(x, total));
  return SequenceGame(std::move(w), R(3, 5));
}

double EnsembleError(std::size_t n, std::uint64_t seed, int games) {
  std::mt19937_64 rng(seed);
  double sum = 0;
  for (int k = 0; k < games; ++k) {
    const SequenceGame g = CardinalityGame(rng, n);
    const IndexVector approx = ApproxIndex(g, IndexKind::kBanzhaf);
    const IndexVector exact = BanzhafDp(g);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      err += std::fabs(ToDouble(approx.values[i]) - ToDouble(exact.values[i]));
    }
    sum += err / n;
  }
  return sum / games;
}

Outcome NormalApproximation() {
  Outcome o;
  const auto start = Clock::now();
  const double mae25 = EnsembleError(25, 6001, 20);
  const double mae15 = EnsembleError(15, 6002, 20);
  const double mae40 = EnsembleError(40, 6002, 20);
  const double t = Seconds(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "MAE(N=25) %.4f, MAE(N=15) %.4f, MAE(N=40) %.4f, %.2f s",
                mae25, mae15, mae40, t);
  o.detail = buf;
  if (mae25 > 0.05) o.Fail(std::string("MAE above 0.05: ") + buf);
  if (mae40 > mae15) o.Fail(std::string("no improvement with N: ") + buf);
  if (t >= 60.0) o.Fail(std::string("too slow: ") + buf);
  return o;
}

// --- 7 ---------------------------------------------------------------------

Outcome Knapsack() {
  Outcome o;
  std::mt19937_64 rng(4242);
  int instances = 0;
  for (; instances < 300; ++instances) {
    const std::size_t n = 1 + rng() % 16;
    std::vector<Rational> values;
    std::vector<Rational> costs;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(R(static_cast<std::int64_t>(rng() % 11),
                         static_cast<std::int64_t>(1 + rng() % 8)));
      costs.push_back(R(static_cast<std::int64_t>(rng() % 21), 2));
    }
    const Rational budget = R(static_cast<std::int64_t>(rng() % 61), 2);
    const SelectionResult dp = KnapsackDp(values, costs, budget);
    const SelectionResult ex = ExhaustiveOracle(values, costs, budget);
    if (dp.objective != ex.objective || dp.chosen != ex.chosen) {
      o.Fail("instance " + std::to_string(instances) + ": dp " +
             FormatRational(dp.objective) + " vs exhaustive " +
             FormatRational(ex.objective));
    }
  }
  if (o.pass) o.detail = std::to_string(instances) + " instances equal";
  return o;
}

}  // namespace
}  // namespace idspower

int main() {
  using idspower::Outcome;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1 banzhaf table", idspower::BanzhafTable},
      {"2 shapley table", idspower::ShapleyTable},
      {"3 budget-2 selection", idspower::BudgetTwoSelection},
      {"4 oracle equivalence", idspower::OracleEquivalence},
      {"5 axioms", idspower::Axioms},
      {"6 normal approximation", idspower::NormalApproximation},
      {"7 knapsack dp = exhaustive", idspower::Knapsack},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
