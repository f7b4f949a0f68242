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

// Multilinear extension (MLE) of a sequence game,
//
//   h(x) = sum_R prod_{i in R} x_i prod_{i not in R} (1 - x_i) f(R),
//
// and the power indices read off it: the Shapley value integrates dh/dx_i
// along the diagonal x = (t, ..., t) and the raw Banzhaf-Coleman power is
// dh/dx_i at (1/2, ..., 1/2).
//
// The exact path expands h in the monomial basis, h(x) = sum_T a_T prod_{i in
// T} x_i, where a_T are the Moebius coefficients of f. On the diagonal
// dh/dx_i = sum_{T ∋ i} a_T t^{|T|-1}, so both indices reduce to exact sums
// over the coefficients and never touch the swing counts used by the
// enumeration and DP paths.
//
// For large games the normal approximation replaces the weight of the other
// libraries by a Gaussian and evaluates dh/dx_i as a window probability.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "idspower/coopgame.hpp"

namespace idspower {

enum class MleMode { kExactSum, kNormalApprox };

/// A sequence game viewed through its multilinear extension.
class MleGame {
 public:
  explicit MleGame(SequenceGame game, MleMode mode = MleMode::kExactSum,
                   GameOptions options = {})
      : game_(std::move(game)), mode_(mode), options_(options) {
    if (mode_ == MleMode::kExactSum &&
        game_.size() > options_.enumeration_limit) {
      throw EnumerationLimitError(game_.size(), options_.enumeration_limit);
    }
  }

  const SequenceGame& game() const { return game_; }
  MleMode mode() const { return mode_; }
  const GameOptions& options() const { return options_; }

  void RequireExact() const {
    if (mode_ != MleMode::kExactSum) {
      throw std::logic_error("operation requires exact-sum MLE mode");
    }
  }

 private:
  SequenceGame game_;
  MleMode mode_;
  GameOptions options_;
};

/// h(x) by the defining sum over all coalitions. T may be double or Rational.
template <typename T>
T MleEvaluate(const MleGame& g, std::span<const T> x) {
  g.RequireExact();
  const std::size_t n = g.game().size();
  if (x.size() != n) {
    throw std::invalid_argument("MLE point has " + std::to_string(x.size()) +
                                " coordinates, game has " + std::to_string(n));
  }
  for (const T& xi : x) {
    if (xi < 0 || xi > 1) {
      throw std::invalid_argument("MLE coordinates must lie in [0, 1]");
    }
  }
  const std::vector<bool> wins = detail::WinningTable(g.game());
  T total = 0;
  for (std::uint64_t m = 0; m < wins.size(); ++m) {
    if (!wins[m]) continue;
    T term = 1;
    for (std::size_t i = 0; i < n; ++i) {
      term *= ((m >> i) & 1U) ? x[i] : T(1) - x[i];
    }
    total += term;
  }
  return total;
}

template <typename T>
T MleEvaluate(const MleGame& g, const std::vector<T>& x) {
  return MleEvaluate(g, std::span<const T>(x));
}

/// Moebius coefficients a_T of f, indexed by mask: f(R) = sum_{T ⊆ R} a_T.
inline std::vector<std::int64_t> MoebiusCoefficients(const MleGame& g) {
  g.RequireExact();
  const std::vector<bool> wins = detail::WinningTable(g.game());
  std::vector<std::int64_t> a(wins.size());
  for (std::size_t m = 0; m < wins.size(); ++m) a[m] = wins[m] ? 1 : 0;
  for (std::size_t i = 0; i < g.game().size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t m = 0; m < a.size(); ++m) {
      if (m & bit) a[m] -= a[m ^ bit];
    }
  }
  return a;
}

namespace detail {

// dh/dx_i on the diagonal as coefficients of t^{k-1}: sums[i][k] = sum of
// a_T over T ∋ i with |T| = k.
template <typename Coef>
std::vector<std::vector<Coef>> DiagonalDerivative(
    const std::vector<Coef>& coefficients, std::size_t n) {
  std::vector<std::vector<Coef>> sums(n, std::vector<Coef>(n + 1, Coef(0)));
  for (std::uint64_t m = 1; m < coefficients.size(); ++m) {
    if (coefficients[m] == 0) continue;
    const auto k = static_cast<std::size_t>(std::popcount(m));
    for (std::uint64_t b = m; b != 0; b &= b - 1) {
      sums[static_cast<std::size_t>(std::countr_zero(b))][k] +=
          coefficients[m];
    }
  }
  return sums;
}

template <typename Coef>
IndexVector ShapleyFromCoefficients(const std::vector<Coef>& coefficients,
                                    std::size_t n) {
  IndexVector out;
  out.kind = IndexKind::kShapley;
  const auto sums = DiagonalDerivative(coefficients, n);
  Rational grand = 0;
  for (const auto& c : coefficients) grand += Rational(c);
  out.degenerate = grand == 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational phi = 0;
    // integral_0^1 t^{k-1} dt = 1/k
    for (std::size_t k = 1; k <= n; ++k) {
      if (sums[i][k] != 0) phi += Rational(sums[i][k]) / Rational(k);
    }
    out.values.push_back(phi);
  }
  return out;
}

template <typename Coef>
std::vector<Rational> RawBanzhafFromCoefficients(
    const std::vector<Coef>& coefficients, std::size_t n) {
  const auto sums = DiagonalDerivative(coefficients, n);
  std::vector<Rational> raw;
  for (std::size_t i = 0; i < n; ++i) {
    Rational d = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sums[i][k] != 0) {
        d += Rational(sums[i][k]) /
             Rational(BigInt(1) << static_cast<unsigned>(k - 1));
      }
    }
    raw.push_back(d);
  }
  return raw;
}

}  // namespace detail

inline IndexVector ShapleyViaMle(const MleGame& g) {
  const std::size_t n = g.game().size();
  const auto coefficients = MoebiusCoefficients(g);
  IndexVector out = detail::ShapleyFromCoefficients(coefficients, n);
  for (const Rational& r :
       detail::RawBanzhafFromCoefficients(coefficients, n)) {
    out.swing_counts.push_back(
        Numerator(r * (BigInt(1) << static_cast<unsigned>(n - 1)))
            .convert_to<std::uint64_t>());
  }
  return out;
}

struct MleBanzhaf {
  /// dh/dx_i at (1/2, ..., 1/2), i.e. theta_i / 2^{N-1}.
  std::vector<Rational> raw;
  IndexVector normalized;
};

inline MleBanzhaf BcViaMle(const MleGame& g) {
  const std::size_t n = g.game().size();
  MleBanzhaf out;
  out.raw = detail::RawBanzhafFromCoefficients(MoebiusCoefficients(g), n);
  IndexVector& v = out.normalized;
  v.kind = IndexKind::kBanzhaf;
  Rational total = 0;
  for (const auto& r : out.raw) total += r;
  v.degenerate = total == 0;
  for (const auto& r : out.raw) {
    v.values.push_back(v.degenerate ? Rational(0) : r / total);
    v.swing_counts.push_back(
        n == 0 ? 0
               : Numerator(r * (BigInt(1) << static_cast<unsigned>(n - 1)))
                     .convert_to<std::uint64_t>());
  }
  return out;
}

namespace detail {

inline std::size_t CommonSize(const std::vector<MleGame>& games,
                              const std::vector<Rational>& p) {
  if (games.size() != p.size()) {
    throw std::invalid_argument("one weight per game is required");
  }
  if (games.empty()) throw std::invalid_argument("no games to aggregate");
  const std::size_t n = games.front().game().size();
  for (const auto& g : games) {
    if (g.game().size() != n) {
      throw std::invalid_argument("games differ in library count");
    }
  }
  return n;
}

}  // namespace detail

/// h̄(x) = sum_j p_j h_j(x).
template <typename T>
T AggregateMle(const std::vector<MleGame>& games,
               const std::vector<Rational>& p, std::span<const T> x) {
  detail::CommonSize(games, p);
  T total = 0;
  for (std::size_t j = 0; j < games.size(); ++j) {
    T weight;
    if constexpr (std::is_same_v<T, Rational>) {
      weight = p[j];
    } else {
      weight = static_cast<T>(ToDouble(p[j]));
    }
    total += weight * MleEvaluate(games[j], x);
  }
  return total;
}

template <typename T>
T AggregateMle(const std::vector<MleGame>& games,
               const std::vector<Rational>& p, const std::vector<T>& x) {
  return AggregateMle(games, p, std::span<const T>(x));
}

/// Shapley values and raw Banzhaf powers of the aggregate extension h̄,
/// computed from its own (rational) Moebius coefficients.
struct AggregateMleIndices {
  IndexVector shapley;
  std::vector<Rational> raw_banzhaf;
};

inline AggregateMleIndices IndicesOfAggregateMle(
    const std::vector<MleGame>& games, const std::vector<Rational>& p) {
  const std::size_t n = detail::CommonSize(games, p);
  std::vector<Rational> coefficients(std::size_t{1} << n, Rational(0));
  for (std::size_t j = 0; j < games.size(); ++j) {
    const auto a = MoebiusCoefficients(games[j]);
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (a[m] != 0) coefficients[m] += p[j] * a[m];
    }
  }
  return {detail::ShapleyFromCoefficients(coefficients, n),
          detail::RawBanzhafFromCoefficients(coefficients, n)};
}

enum class VarianceMode {
  kLinear,   // t(1-t) * sum_j w_j
  kSquared,  // t(1-t) * sum_j w_j^2, the exact variance of a Bernoulli sum
};

enum class WindowMode {
  kLiteral,  // P(q - cc <= Y <= q + w_i - cc)
  kSwing,    // P(q - w_i - cc <= Y <= q - cc), the swing event proper
};

struct ApproxParams {
  /// Composite Simpson subintervals on [0, 1]; odd counts are rounded up.
  int quadrature_nodes = 64;
  /// In integer weight units; defaults to half the weight granularity.
  std::optional<double> continuity_correction;
  VarianceMode variance = VarianceMode::kLinear;
  WindowMode window = WindowMode::kLiteral;
};

namespace detail {

inline double StandardNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

struct ApproxGame {
  std::vector<double> weights;  // in units of the weight granularity
  double quota = 0;
};

inline ApproxGame ToApproxGame(const SequenceGame& game) {
  ApproxGame out;
  if (const auto& form = game.integer_form()) {
    for (auto w : form->weights) out.weights.push_back(static_cast<double>(w));
    out.quota = static_cast<double>(form->quota);
    return out;
  }
  // No exact integer form: measure weights in units of the smallest positive
  // weight instead.
  Rational smallest = 0;
  for (const auto& w : game.weights()) {
    if (w > 0 && (smallest == 0 || w < smallest)) smallest = w;
  }
  if (smallest == 0) smallest = 1;
  for (const auto& w : game.weights()) out.weights.push_back(ToDouble(w / smallest));
  out.quota = ToDouble(game.omega() / smallest);
  return out;
}

// Approximate dh/dx_i at (t, ..., t).
inline double ApproxPivotProbability(const ApproxGame& g, std::size_t i,
                                     double t, const ApproxParams& params,
                                     double cc) {
  const double wi = g.weights[i];
  if (wi <= 0) return 0.0;
  double rest = 0;
  double rest_var = 0;
  for (std::size_t j = 0; j < g.weights.size(); ++j) {
    if (j == i) continue;
    rest += g.weights[j];
    rest_var += params.variance == VarianceMode::kLinear
                    ? g.weights[j]
                    : g.weights[j] * g.weights[j];
  }
  const double lo = params.window == WindowMode::kLiteral ? g.quota - cc
                                                          : g.quota - wi - cc;
  const double hi = lo + wi;
  const double mean = t * rest;
  const double var = t * (1.0 - t) * rest_var;
  if (var <= 0) return (lo <= mean && mean <= hi) ? 1.0 : 0.0;
  const double sd = std::sqrt(var);
  return StandardNormalCdf((hi - mean) / sd) -
         StandardNormalCdf((lo - mean) / sd);
}

}  // namespace detail

/// Normal approximation of the Shapley value or the normalized
/// Banzhaf-Coleman index. Results carry approximate = true.
inline IndexVector ApproxIndex(const SequenceGame& game, IndexKind kind,
                               const ApproxParams& params = {}) {
  if (params.quadrature_nodes < 2) {
    throw std::invalid_argument("quadrature_nodes must be >= 2");
  }
  const std::size_t n = game.size();
  IndexVector out;
  out.kind = kind;
  out.approximate = true;
  out.degenerate = !game.GrandCoalitionWins();
  if (out.degenerate) {
    out.values.assign(n, Rational(0));
    return out;
  }
  const detail::ApproxGame g = detail::ToApproxGame(game);
  const double cc = params.continuity_correction.value_or(0.5);

  std::vector<double> values(n, 0.0);
  if (kind == IndexKind::kBanzhaf) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = detail::ApproxPivotProbability(g, i, 0.5, params, cc);
      total += values[i];
    }
    for (auto& v : values) v = total > 0 ? v / total : 0.0;
  } else {
    int intervals = params.quadrature_nodes;
    if (intervals % 2 != 0) ++intervals;
    const double step = 1.0 / intervals;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (int k = 0; k <= intervals; ++k) {
        const double coef = (k == 0 || k == intervals) ? 1.0
                            : (k % 2 == 1)             ? 4.0
                                                       : 2.0;
        acc += coef *
               detail::ApproxPivotProbability(g, i, k * step, params, cc);
      }
      values[i] = acc * step / 3.0;
    }
  }
  for (double v : values) out.values.push_back(FromDouble(v));
  return out;
}

/// One game whose library weights are the per-library effectiveness summed
/// over all sequences, with the common omega. Used for the summed-weight
/// approximation mode.
inline SequenceGame SummedWeightGame(const std::vector<SequenceGame>& games) {
  if (games.empty()) throw std::invalid_argument("no games to sum");
  std::vector<Rational> weights(games.front().size(), Rational(0));
  for (const auto& g : games) {
    if (g.size() != weights.size()) {
      throw std::invalid_argument("games differ in library count");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] += g.weights()[i];
    }
  }
  return SequenceGame(std::move(weights), games.front().omega(), "summed");
}

}  // namespace idspower
