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

// Budgeted choice of the default library set: the 0/1 knapsack
//
//   maximize sum_i z_i value_i  subject to  sum_i z_i cost_i <= budget.
//
// Ties between optimal sets are broken by smaller total cost, then by the
// lexicographically smallest member list in declaration order. The DP and
// the exhaustive oracle apply the same rule, so they agree on the chosen set
// and not only on the objective.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "idspower/model.hpp"

namespace idspower {

enum class SelectionMethod { kDp, kExhaustive, kGreedy };

inline const char* SelectionMethodName(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::kDp:
      return "dp";
    case SelectionMethod::kExhaustive:
      return "exhaustive";
    case SelectionMethod::kGreedy:
      return "greedy";
  }
  return "?";
}

struct SelectionResult {
  Configuration chosen;
  Rational objective{0};
  Rational budget_used{0};
  SelectionMethod method = SelectionMethod::kDp;
};

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kMaxDpColumns = 1'000'000;
inline constexpr unsigned kMaxCostDecimals = 9;
inline constexpr std::size_t kExhaustiveLimit = 20;

namespace detail {

inline void CheckSelectionInput(const std::vector<Rational>& values,
                                const std::vector<Rational>& costs,
                                const Rational& budget) {
  if (values.size() != costs.size()) {
    throw std::invalid_argument("values and costs differ in length");
  }
  if (values.size() > kMaxLibraries) {
    throw std::invalid_argument("too many items");
  }
  if (budget < 0) throw SelectionError("budget must be >= 0");
  for (const auto& c : costs) {
    if (c < 0) throw SelectionError("negative cost " + FormatRational(c));
  }
}

// Strict "a is preferred over b" under the documented tie-breaking rule.
inline bool Preferred(const Rational& obj_a, const Rational& cost_a,
                      Configuration a, const Rational& obj_b,
                      const Rational& cost_b, Configuration b) {
  if (obj_a != obj_b) return obj_a > obj_b;
  if (cost_a != cost_b) return cost_a < cost_b;
  const auto ma = a.Members();
  const auto mb = b.Members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(),
                                      mb.end());
}

}  // namespace detail

/// Brute force over all subsets; the reference for the DP.
inline SelectionResult ExhaustiveOracle(const std::vector<Rational>& values,
                                        const std::vector<Rational>& costs,
                                        const Rational& budget) {
  detail::CheckSelectionInput(values, costs, budget);
  const std::size_t n = values.size();
  if (n > kExhaustiveLimit) {
    throw SelectionError("exhaustive search is limited to " +
                         std::to_string(kExhaustiveLimit) + " libraries");
  }
  SelectionResult best;
  best.method = SelectionMethod::kExhaustive;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    Configuration c(m);
    Rational obj = 0;
    Rational cost = 0;
    for (std::size_t i : c.Members()) {
      obj += values[i];
      cost += costs[i];
    }
    if (cost > budget) continue;
    if (detail::Preferred(obj, cost, c, best.objective, best.budget_used,
                          best.chosen)) {
      best.chosen = c;
      best.objective = obj;
      best.budget_used = cost;
    }
  }
  return best;
}

/// Exact 0/1 knapsack by dynamic programming over integer-scaled costs.
inline SelectionResult KnapsackDp(const std::vector<Rational>& values,
                                  const std::vector<Rational>& costs,
                                  const Rational& budget) {
  detail::CheckSelectionInput(values, costs, budget);
  const std::size_t n = values.size();

  // Smallest power of ten that makes every cost integral.
  BigInt scale = 1;
  for (unsigned k = 0;; ++k) {
    bool integral = std::all_of(costs.begin(), costs.end(), [&](const auto& c) {
      return Denominator(c * scale) == 1;
    });
    if (integral) break;
    if (k == kMaxCostDecimals) {
      throw SelectionError(
          "costs need more than " + std::to_string(kMaxCostDecimals) +
          " decimal places for the DP; use the greedy or exhaustive method");
    }
    scale *= 10;
  }
  // Costs above the column cap can never fit; clamp them to cap + 1.
  const BigInt too_big = BigInt(kMaxDpColumns) + 1;
  std::vector<std::int64_t> weight(n);
  BigInt total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt w = Numerator(costs[i] * scale);
    total += w;
    weight[i] = (w > too_big ? too_big : w).convert_to<std::int64_t>();
  }
  BigInt cap = Floor(budget * scale);
  if (cap > total) cap = total;
  if (cap > kMaxDpColumns) {
    throw SelectionError("knapsack needs " + cap.str() +
                         " DP columns, above the cap of " +
                         std::to_string(kMaxDpColumns) +
                         "; use the greedy method");
  }
  const auto columns = static_cast<std::size_t>(cap.convert_to<std::int64_t>());

  struct Cell {
    Rational objective{0};
    std::int64_t cost = 0;
    bool empty = true;
  };
  // row[c]: best set drawn from items i.. (suffix) with scaled cost <= c.
  std::vector<Cell> row(columns + 1);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(columns + 1));
  for (std::size_t i = n; i-- > 0;) {
    std::vector<Cell> next(columns + 1);
    for (std::size_t c = 0; c <= columns; ++c) {
      const Cell& skip = row[c];
      next[c] = skip;
      if (weight[i] > static_cast<std::int64_t>(c)) continue;
      const Cell& rest = row[c - static_cast<std::size_t>(weight[i])];
      Rational obj = rest.objective + values[i];
      std::int64_t cost = rest.cost + weight[i];
      bool better = obj != skip.objective ? obj > skip.objective
                    : cost != skip.cost   ? cost < skip.cost
                                          : !skip.empty;
      if (better) {
        next[c] = Cell{std::move(obj), cost, false};
        take[i][c] = true;
      }
    }
    row = std::move(next);
  }

  SelectionResult out;
  out.method = SelectionMethod::kDp;
  std::size_t c = columns;
  for (std::size_t i = 0; i < n; ++i) {
    if (take[i][c]) {
      out.chosen.Insert(i);
      out.objective += values[i];
      out.budget_used += costs[i];
      c -= static_cast<std::size_t>(weight[i]);
    }
  }
  return out;
}

/// Value-per-cost greedy. Not optimal in general; for instances the DP
/// cannot scale.
inline SelectionResult GreedySelection(const std::vector<Rational>& values,
                                       const std::vector<Rational>& costs,
                                       const Rational& budget) {
  detail::CheckSelectionInput(values, costs, budget);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  // Zero-cost items first, then by decreasing value/cost ratio.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    if ((costs[a] == 0) != (costs[b] == 0)) return costs[a] == 0;
    if (costs[a] == 0) return values[a] > values[b];
    return values[a] * costs[b] > values[b] * costs[a];
  });
  SelectionResult out;
  out.method = SelectionMethod::kGreedy;
  for (std::size_t i : order) {
    if (values[i] <= 0) continue;
    if (out.budget_used + costs[i] > budget) continue;
    out.chosen.Insert(i);
    out.objective += values[i];
    out.budget_used += costs[i];
  }
  return out;
}

inline SelectionResult OptimizeDefaultConfig(
    const std::vector<Rational>& values, const std::vector<Rational>& costs,
    const Rational& budget, SelectionMethod method = SelectionMethod::kDp) {
  switch (method) {
    case SelectionMethod::kExhaustive:
      return ExhaustiveOracle(values, costs, budget);
    case SelectionMethod::kGreedy:
      return GreedySelection(values, costs, budget);
    case SelectionMethod::kDp:
      break;
  }
  return KnapsackDp(values, costs, budget);
}

}  // namespace idspower
