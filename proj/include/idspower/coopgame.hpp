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

// The simple game that a single attack sequence induces on the libraries.
//
// Library k carries the weight w_k = v(S ∩ P_k) / v(S) (or its
// true-positive-weighted variant) and a coalition wins iff its total weight
// reaches omega, boundary included. That is a weighted voting game, so power
// indices can be computed either by enumerating all 2^N coalitions or by a
// subset-sum dynamic program over integer-scaled weights. Both routes count
// swings grouped by coalition size; Shapley and Banzhaf-Coleman values are
// then assembled from those counts exactly.

#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "idspower/metrics.hpp"
#include "idspower/model.hpp"

namespace idspower {

inline constexpr std::size_t kDefaultEnumerationLimit = 24;
inline constexpr std::int64_t kDefaultDpColumnLimit = 100000;

struct GameOptions {
  /// Largest library count for which 2^N coalitions are enumerated.
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
  /// Largest integer quota the subset-sum DP accepts.
  std::int64_t dp_column_limit = kDefaultDpColumnLimit;
};

/// Enumeration was requested for a game larger than the configured limit.
class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(std::size_t n, std::size_t limit)
      : std::runtime_error(
            "game has " + std::to_string(n) +
            " libraries, above the enumeration limit of " +
            std::to_string(limit) +
            "; use the dynamic-programming or normal-approximation method") {}
};

/// The game's weights have no integer form small enough for the DP.
class DpUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer weights and quota equivalent to the rational game: a coalition
/// wins iff the sum of its integer weights is at least `quota`.
struct IntegerForm {
  std::vector<std::int64_t> weights;
  std::int64_t quota = 1;
  /// Rational value of one integer unit (the weight granularity).
  Rational unit{1};
};

class SequenceGame {
 public:
  SequenceGame(std::vector<Rational> weights, Rational omega,
               std::string label = {})
      : weights_(std::move(weights)),
        omega_(std::move(omega)),
        label_(std::move(label)) {
    if (weights_.size() > kMaxLibraries) {
      throw std::invalid_argument("too many libraries for a game");
    }
    for (const auto& w : weights_) {
      if (w < 0) throw std::invalid_argument("game weights must be >= 0");
    }
    if (omega_ <= 0 || omega_ > 1) {
      throw std::invalid_argument("omega must lie in (0, 1]");
    }
    integer_form_ = ComputeIntegerForm(weights_, omega_);
  }

  std::size_t size() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& omega() const { return omega_; }
  const std::string& label() const { return label_; }
  const std::optional<IntegerForm>& integer_form() const {
    return integer_form_;
  }

  Rational WeightOf(Configuration c) const {
    Rational total = 0;
    for (std::size_t k : c.Members()) total += weights_.at(k);
    return total;
  }

  /// Characteristic function f(c) in {0, 1}.
  bool Wins(Configuration c) const {
    if (integer_form_) {
      std::int64_t total = 0;
      for (std::size_t k : c.Members()) total += integer_form_->weights.at(k);
      return total >= integer_form_->quota;
    }
    return WeightOf(c) >= omega_;
  }

  bool GrandCoalitionWins() const { return Wins(Configuration::All(size())); }

 private:
  static std::optional<IntegerForm> ComputeIntegerForm(
      const std::vector<Rational>& weights, const Rational& omega) {
    BigInt common = Denominator(omega);
    for (const auto& w : weights) common = Lcm(common, Denominator(w));
    std::vector<BigInt> scaled;
    scaled.reserve(weights.size());
    BigInt g = 0;
    for (const auto& w : weights) {
      scaled.push_back(Numerator(w * common));
      if (scaled.back() > 0) g = Gcd(g, scaled.back());
    }
    BigInt quota = Numerator(omega * common);
    Rational unit = Rational(1) / Rational(common);
    if (g > 1) {
      for (auto& s : scaled) s /= g;
      quota = Ceil(Rational(quota, g));
      unit *= Rational(g);
    }
    const BigInt cap = BigInt(1) << 62;
    BigInt total = 0;
    IntegerForm form;
    for (const auto& s : scaled) {
      total += s;
      if (total >= cap) return std::nullopt;
      form.weights.push_back(s.convert_to<std::int64_t>());
    }
    if (quota >= cap) return std::nullopt;
    form.quota = quota.convert_to<std::int64_t>();
    form.unit = unit;
    return form;
  }

  std::vector<Rational> weights_;
  Rational omega_;
  std::string label_;
  std::optional<IntegerForm> integer_form_;
};

/// Builds the game of one sequence. With `weighted` set, each covered attack
/// is discounted by the covering library's true-positive rate.
inline SequenceGame BuildGame(const AttackSequence& seq,
                              const Scenario& scenario, bool weighted,
                              const Rational& omega) {
  const ValueFunction& vf = scenario.value_function;
  const Rational denom = detail::SequenceValue(seq, vf);
  std::vector<Rational> weights;
  weights.reserve(scenario.num_libraries());
  for (const Library& lib : scenario.libraries) {
    weights.push_back(weighted ? detail::TpWeightedOverlap(seq, lib, vf) / denom
                               : Effectiveness(seq, lib, vf));
  }
  return SequenceGame(std::move(weights), omega, seq.id);
}

inline SequenceGame BuildGame(const AttackSequence& seq,
                              const Scenario& scenario, bool weighted = false) {
  return BuildGame(seq, scenario, weighted, scenario.omega);
}

inline bool IsEffective(Configuration config, const SequenceGame& game) {
  return game.Wins(config);
}

enum class IndexKind { kShapley, kBanzhaf };

inline const char* IndexKindName(IndexKind kind) {
  return kind == IndexKind::kShapley ? "shapley" : "banzhaf";
}

struct IndexVector {
  IndexKind kind = IndexKind::kShapley;
  std::vector<Rational> values;
  /// Swing counts per library; for aggregates, summed over sequences.
  std::vector<std::uint64_t> swing_counts;
  /// No winning coalition exists (all values are zero).
  bool degenerate = false;
  /// Produced by the normal approximation rather than an exact method.
  bool approximate = false;

  Rational Sum() const {
    return std::accumulate(values.begin(), values.end(), Rational(0));
  }
};

/// Swing counts split by the size of the coalition *without* the pivotal
/// library: by_size[i][s] counts coalitions R, i ∉ R, |R| = s, such that R
/// loses and R ∪ {i} wins.
struct SwingTable {
  std::vector<std::vector<std::uint64_t>> by_size;

  std::uint64_t Total(std::size_t i) const {
    return std::accumulate(by_size[i].begin(), by_size[i].end(),
                           std::uint64_t{0});
  }
};

namespace detail {

inline void CheckEnumerable(const SequenceGame& game,
                            const GameOptions& options) {
  if (game.size() > options.enumeration_limit) {
    throw EnumerationLimitError(game.size(), options.enumeration_limit);
  }
}

/// f over all 2^N coalitions, indexed by mask.
inline std::vector<bool> WinningTable(const SequenceGame& game) {
  const std::size_t n = game.size();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<bool> wins(count);
  if (const auto& form = game.integer_form()) {
    // Meet in the middle: the sum of a mask is lo[mask & low] + hi[mask >> h].
    const std::size_t h = n / 2;
    auto subset_sums = [&](std::size_t first, std::size_t len) {
      std::vector<std::int64_t> sums(std::size_t{1} << len, 0);
      for (std::uint64_t m = 1; m < sums.size(); ++m) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(m));
        sums[m] = sums[m & (m - 1)] + form->weights[first + bit];
      }
      return sums;
    };
    const auto lo = subset_sums(0, h);
    const auto hi = subset_sums(h, n - h);
    const std::uint64_t low_mask = (std::uint64_t{1} << h) - 1;
    for (std::uint64_t m = 0; m < count; ++m) {
      wins[m] = lo[m & low_mask] + hi[m >> h] >= form->quota;
    }
  } else {
    for (std::uint64_t m = 0; m < count; ++m) {
      wins[m] = game.WeightOf(Configuration(m)) >= game.omega();
    }
  }
  return wins;
}

inline SwingTable SwingsByEnumeration(const SequenceGame& game,
                                      const GameOptions& options) {
  CheckEnumerable(game, options);
  const std::size_t n = game.size();
  const std::vector<bool> wins = WinningTable(game);
  SwingTable table;
  table.by_size.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::uint64_t m = 0; m < wins.size(); ++m) {
    if (!wins[m]) continue;
    const std::size_t r = static_cast<std::size_t>(std::popcount(m));
    for (std::uint64_t b = m; b != 0; b &= b - 1) {
      const std::uint64_t bit = b & (~b + 1);
      if (!wins[m ^ bit]) {
        ++table.by_size[static_cast<std::size_t>(std::countr_zero(bit))][r - 1];
      }
    }
  }
  return table;
}

inline const IntegerForm& RequireDpForm(const SequenceGame& game,
                                        const GameOptions& options) {
  const auto& form = game.integer_form();
  if (!form) {
    throw DpUnavailableError(
        "game weights have no 64-bit integer form over a common denominator");
  }
  if (form->quota > options.dp_column_limit) {
    throw DpUnavailableError("integer quota " + std::to_string(form->quota) +
                             " exceeds the DP column limit of " +
                             std::to_string(options.dp_column_limit));
  }
  return *form;
}

/// Swing counts from the subset-sum generating function. counts[s][x] is the
/// number of coalitions of size s and integer weight x < quota; the counts
/// without library i follow from the full table by polynomial division by
/// (1 + y z^{w_i}).
inline SwingTable SwingsByDp(const SequenceGame& game,
                             const GameOptions& options) {
  const IntegerForm& form = RequireDpForm(game, options);
  const std::size_t n = game.size();
  const auto q = static_cast<std::size_t>(form.quota);

  std::vector<std::vector<std::uint64_t>> all(
      n + 1, std::vector<std::uint64_t>(q, 0));
  all[0][0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const auto w = static_cast<std::size_t>(form.weights[k]);
    if (w >= q) continue;  // such a library alone reaches the quota
    for (std::size_t s = k + 1; s >= 1; --s) {
      for (std::size_t x = q - 1; x + 1 > w; --x) {
        all[s][x] += all[s - 1][x - w];
        if (x == 0) break;
      }
    }
  }
  // Libraries whose weight reaches the quota were skipped above; the table
  // only ever needs sums below the quota, and any coalition containing one of
  // them is at or above it, so their contribution to sums < q is nil.

  SwingTable table;
  table.by_size.assign(n, std::vector<std::uint64_t>(n, 0));
  std::vector<std::vector<std::uint64_t>> without(
      n, std::vector<std::uint64_t>(q, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(form.weights[i]);
    if (w == 0) continue;
    // all = without * (1 + y z^w) restricted to sums < q.
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t x = 0; x < q; ++x) {
        std::uint64_t v = all[s][x];
        if (w < q && s >= 1 && x >= w) v -= without[s - 1][x - w];
        without[s][x] = v;
      }
    }
    const std::size_t lo = w >= q ? 0 : q - w;
    for (std::size_t s = 0; s < n; ++s) {
      std::uint64_t c = 0;
      for (std::size_t x = lo; x < q; ++x) c += without[s][x];
      table.by_size[i][s] = c;
    }
  }
  return table;
}

}  // namespace detail

/// Shapley values from size-grouped swing counts:
/// phi_i = sum_s count[i][s] * s! (N-1-s)! / N!.
inline IndexVector ShapleyFromSwings(const SwingTable& table,
                                     bool grand_wins) {
  const std::size_t n = table.by_size.size();
  IndexVector out;
  out.kind = IndexKind::kShapley;
  out.degenerate = !grand_wins;
  const BigInt n_fact = Factorial(static_cast<unsigned>(n));
  for (std::size_t i = 0; i < n; ++i) {
    BigInt numer = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (table.by_size[i][s] == 0) continue;
      numer += BigInt(table.by_size[i][s]) *
               Factorial(static_cast<unsigned>(s)) *
               Factorial(static_cast<unsigned>(n - 1 - s));
    }
    out.values.emplace_back(numer, n_fact);
    out.swing_counts.push_back(table.Total(i));
  }
  return out;
}

/// Normalized Banzhaf-Coleman index theta_i / sum_j theta_j.
inline IndexVector BanzhafFromSwings(const SwingTable& table) {
  const std::size_t n = table.by_size.size();
  IndexVector out;
  out.kind = IndexKind::kBanzhaf;
  BigInt total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.swing_counts.push_back(table.Total(i));
    total += out.swing_counts.back();
  }
  out.degenerate = total == 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.values.push_back(out.degenerate
                             ? Rational(0)
                             : Rational(BigInt(out.swing_counts[i]), total));
  }
  return out;
}

struct SwingResult {
  std::uint64_t count = 0;
  /// Winning coalitions containing the library that lose without it, in
  /// increasing mask order. Filled only on request.
  std::vector<Configuration> witnesses;
};

inline SwingResult Swings(std::size_t library, const SequenceGame& game,
                          bool with_witnesses = false,
                          const GameOptions& options = {}) {
  if (library >= game.size()) throw std::out_of_range("library index");
  detail::CheckEnumerable(game, options);
  const std::vector<bool> wins = detail::WinningTable(game);
  const std::uint64_t bit = std::uint64_t{1} << library;
  SwingResult out;
  for (std::uint64_t m = 0; m < wins.size(); ++m) {
    if ((m & bit) && wins[m] && !wins[m ^ bit]) {
      ++out.count;
      if (with_witnesses) out.witnesses.emplace_back(m);
    }
  }
  return out;
}

inline IndexVector ShapleyExact(const SequenceGame& game,
                                const GameOptions& options = {}) {
  return ShapleyFromSwings(detail::SwingsByEnumeration(game, options),
                           game.GrandCoalitionWins());
}

inline IndexVector Banzhaf(const SequenceGame& game,
                           const GameOptions& options = {}) {
  return BanzhafFromSwings(detail::SwingsByEnumeration(game, options));
}

inline IndexVector ShapleyDp(const SequenceGame& game,
                             const GameOptions& options = {}) {
  return ShapleyFromSwings(detail::SwingsByDp(game, options),
                           game.GrandCoalitionWins());
}

inline IndexVector BanzhafDp(const SequenceGame& game,
                             const GameOptions& options = {}) {
  return BanzhafFromSwings(detail::SwingsByDp(game, options));
}

/// A library is a dummy iff it has no swing, i.e. f(F) = f(F \ {l}) for all F.
inline bool IsDummy(std::size_t library, const SequenceGame& game,
                    const GameOptions& options = {}) {
  if (library >= game.size()) throw std::out_of_range("library index");
  if (game.weights()[library] == 0) return true;
  try {
    return detail::SwingsByDp(game, options).Total(library) == 0;
  } catch (const DpUnavailableError&) {
    return Swings(library, game, false, options).count == 0;
  }
}

/// p-weighted combination of per-sequence indices. Degenerate inputs carry
/// all-zero values and so contribute nothing.
inline IndexVector AggregateIndices(const std::vector<IndexVector>& per_sequence,
                                    const std::vector<Rational>& weights) {
  if (per_sequence.size() != weights.size()) {
    throw std::invalid_argument("one weight per index vector is required");
  }
  IndexVector out;
  if (per_sequence.empty()) {
    out.degenerate = true;
    return out;
  }
  out.kind = per_sequence.front().kind;
  const std::size_t n = per_sequence.front().values.size();
  out.values.assign(n, Rational(0));
  out.swing_counts.assign(n, 0);
  out.degenerate = true;
  for (std::size_t j = 0; j < per_sequence.size(); ++j) {
    const IndexVector& v = per_sequence[j];
    if (v.kind != out.kind) {
      throw std::invalid_argument("cannot aggregate Shapley and Banzhaf values");
    }
    if (v.values.size() != n) {
      throw std::invalid_argument("index vectors differ in length");
    }
    if (weights[j] < 0) throw std::invalid_argument("negative weight");
    for (std::size_t i = 0; i < n; ++i) {
      out.values[i] += weights[j] * v.values[i];
      if (i < v.swing_counts.size()) out.swing_counts[i] += v.swing_counts[i];
    }
    out.degenerate = out.degenerate && v.degenerate;
    out.approximate = out.approximate || v.approximate;
  }
  return out;
}

}  // namespace idspower
