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

// Scenario-level ranking: builds one game per attack sequence, computes the
// requested index with the requested method and aggregates by sequence
// weight.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idspower/coopgame.hpp"
#include "idspower/mle.hpp"
#include "idspower/model.hpp"

namespace idspower {

enum class RankMethod { kEnumerate, kDp, kAuto, kNormalApprox };

struct RankOptions {
  IndexKind kind = IndexKind::kShapley;
  RankMethod method = RankMethod::kAuto;
  bool weighted = false;
  std::optional<Rational> omega;  // overrides the scenario's omega
  GameOptions game;
  ApproxParams approx;
  /// Normal approximation on one game whose weights are summed over all
  /// sequences, instead of per-sequence approximation plus aggregation.
  bool summed_weights = false;
};

/// Computes one game's index. `warnings` receives fallback notices.
inline IndexVector ComputeIndex(const SequenceGame& game, IndexKind kind,
                                RankMethod method, const GameOptions& options,
                                const ApproxParams& approx,
                                std::vector<std::string>* warnings = nullptr) {
  auto exact_enumerate = [&] {
    return kind == IndexKind::kShapley ? ShapleyExact(game, options)
                                       : Banzhaf(game, options);
  };
  auto exact_dp = [&] {
    return kind == IndexKind::kShapley ? ShapleyDp(game, options)
                                       : BanzhafDp(game, options);
  };
  switch (method) {
    case RankMethod::kEnumerate:
      return exact_enumerate();
    case RankMethod::kNormalApprox:
      return ApproxIndex(game, kind, approx);
    case RankMethod::kDp:
    case RankMethod::kAuto:
      break;
  }
  try {
    return exact_dp();
  } catch (const DpUnavailableError& e) {
    const bool enumerable = game.size() <= options.enumeration_limit;
    if (warnings && (method == RankMethod::kDp || !enumerable)) {
      warnings->push_back(
          "sequence '" + game.label() + "': DP unavailable (" + e.what() +
          "); falling back to " +
          (enumerable ? "enumeration" : "the normal approximation"));
    }
    if (enumerable) return exact_enumerate();
    return ApproxIndex(game, kind, approx);
  }
}

/// Dummy flag per library, by the cheapest exact method available. When no
/// exact method applies only zero-weight libraries are reported as dummies.
inline std::vector<bool> DummyFlags(const SequenceGame& game,
                                    const GameOptions& options) {
  std::vector<bool> out(game.size(), false);
  try {
    const SwingTable t = detail::SwingsByDp(game, options);
    for (std::size_t i = 0; i < game.size(); ++i) out[i] = t.Total(i) == 0;
    return out;
  } catch (const DpUnavailableError&) {
  }
  if (game.size() <= options.enumeration_limit) {
    const SwingTable t = detail::SwingsByEnumeration(game, options);
    for (std::size_t i = 0; i < game.size(); ++i) out[i] = t.Total(i) == 0;
    return out;
  }
  for (std::size_t i = 0; i < game.size(); ++i) {
    out[i] = game.weights()[i] == 0;
  }
  return out;
}

struct SequenceIndices {
  std::string sequence_id;
  Rational weight;
  SequenceGame game;
  IndexVector indices;
  std::vector<bool> dummy;
};

struct RankResult {
  std::vector<SequenceIndices> per_sequence;
  IndexVector aggregate;
  std::vector<bool> aggregate_dummy;
  std::vector<std::string> warnings;
};

inline RankResult RankLibraries(const Scenario& scenario,
                                const RankOptions& options) {
  const Rational omega = options.omega.value_or(scenario.omega);
  if (omega <= 0 || omega > 1) {
    throw std::invalid_argument("omega must lie in (0, 1]");
  }
  const std::size_t n = scenario.num_libraries();
  RankResult out;
  out.aggregate_dummy.assign(n, true);

  std::vector<SequenceGame> games;
  for (const auto& seq : scenario.sequences) {
    games.push_back(BuildGame(seq, scenario, options.weighted, omega));
  }

  if (options.summed_weights) {
    if (options.method != RankMethod::kNormalApprox) {
      throw std::invalid_argument(
          "summed weights are only available with the normal approximation");
    }
    if (games.empty()) {
      out.aggregate.kind = options.kind;
      out.aggregate.values.assign(n, Rational(0));
      out.aggregate.degenerate = true;
      return out;
    }
    const SequenceGame summed = SummedWeightGame(games);
    out.aggregate = ApproxIndex(summed, options.kind, options.approx);
    for (std::size_t i = 0; i < n; ++i) {
      out.aggregate_dummy[i] = summed.weights()[i] == 0;
    }
    return out;
  }

  std::vector<IndexVector> vectors;
  std::vector<Rational> weights;
  for (std::size_t j = 0; j < games.size(); ++j) {
    const auto& seq = scenario.sequences[j];
    SequenceIndices entry{seq.id, seq.weight, games[j],
                          ComputeIndex(games[j], options.kind, options.method,
                                       options.game, options.approx,
                                       &out.warnings),
                          DummyFlags(games[j], options.game)};
    if (entry.indices.degenerate) {
      out.warnings.push_back("sequence '" + seq.id +
                             "' cannot be detected at omega " +
                             FormatRational(omega) +
                             " even with every library loaded");
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.aggregate_dummy[i] = out.aggregate_dummy[i] && entry.dummy[i];
    }
    vectors.push_back(entry.indices);
    weights.push_back(seq.weight);
    out.per_sequence.push_back(std::move(entry));
  }
  if (vectors.empty()) {
    out.aggregate.kind = options.kind;
    out.aggregate.values.assign(n, Rational(0));
    out.aggregate.swing_counts.assign(n, 0);
    out.aggregate.degenerate = true;
  } else {
    out.aggregate = AggregateIndices(vectors, weights);
  }
  return out;
}

}  // namespace idspower
