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

// Detectability and efficiency of a configuration against one attack
// sequence, plain and true-positive weighted. All values are exact.

#pragma once

#include <cassert>
#include <limits>
#include <optional>
#include <stdexcept>

#include "idspower/model.hpp"

namespace idspower {

/// A metric whose denominator is zero.
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational Value(const AttackSet& attacks, const ValueFunction& vf) {
  return vf.Value(attacks);
}

namespace detail {

inline Rational SequenceValue(const AttackSequence& seq,
                              const ValueFunction& vf) {
  Rational v = vf.Value(seq.AsSet(vf.size()));
  if (v <= 0) {
    throw MetricError("undefined effectiveness: sequence '" + seq.id +
                      "' has zero value");
  }
  return v;
}

// v_alpha(seq ∩ P_lib): each covered attack counts vf(a) * tp(a, lib).
inline Rational TpWeightedOverlap(const AttackSequence& seq,
                                  const Library& lib,
                                  const ValueFunction& vf) {
  Rational total = 0;
  for (std::size_t a : seq.attacks) {
    if (lib.Covers(a)) total += vf.Weight(a) * lib.TruePositive(a);
  }
  return total;
}

}  // namespace detail

/// Share of the sequence's value that a single library covers.
inline Rational Effectiveness(const AttackSequence& seq, const Library& lib,
                              const ValueFunction& vf) {
  const Rational denom = detail::SequenceValue(seq, vf);
  AttackSet overlap = seq.AsSet(vf.size());
  overlap &= lib.scope;
  return vf.Value(overlap) / denom;
}

inline Rational Detectability(const AttackSequence& seq, Configuration config,
                              const Scenario& scenario,
                              const ValueFunction& vf) {
  const Rational denom = detail::SequenceValue(seq, vf);
  AttackSet covered = seq.AsSet(vf.size());
  covered &= Coverage(config, scenario);
  Rational eta = vf.Value(covered) / denom;
#ifndef NDEBUG
  if (scenario.scopes_disjoint) {
    Rational by_library = 0;
    for (std::size_t l : config.Members()) {
      by_library += Effectiveness(seq, scenario.libraries[l], vf);
    }
    assert(by_library == eta);
  }
#endif
  return eta;
}

inline Rational Detectability(const AttackSequence& seq, Configuration config,
                              const Scenario& scenario) {
  return Detectability(seq, config, scenario, scenario.value_function);
}

/// Detectability with each covered attack discounted by the covering
/// library's true-positive rate.
inline Rational WeightedDetectability(const AttackSequence& seq,
                                      Configuration config,
                                      const Scenario& scenario,
                                      const ValueFunction& vf) {
  scenario.CheckConfiguration(config);
  const Rational denom = detail::SequenceValue(seq, vf);
  Rational numer = 0;
  for (std::size_t l : config.Members()) {
    numer += detail::TpWeightedOverlap(seq, scenario.libraries[l], vf);
  }
  return numer / denom;
}

inline Rational WeightedDetectability(const AttackSequence& seq,
                                      Configuration config,
                                      const Scenario& scenario) {
  return WeightedDetectability(seq, config, scenario, scenario.value_function);
}

namespace detail {

inline Rational CoverageValue(Configuration config, const Scenario& scenario,
                              const ValueFunction& vf) {
  Rational v = vf.Value(Coverage(config, scenario));
  if (v <= 0) {
    throw MetricError("efficiency undefined for empty coverage");
  }
  return v;
}

}  // namespace detail

/// Share of the configuration's coverage that is relevant to the sequence.
inline Rational Efficiency(const AttackSequence& seq, Configuration config,
                           const Scenario& scenario, const ValueFunction& vf) {
  const Rational denom = detail::CoverageValue(config, scenario, vf);
  AttackSet useful = seq.AsSet(vf.size());
  useful &= Coverage(config, scenario);
  return vf.Value(useful) / denom;
}

inline Rational Efficiency(const AttackSequence& seq, Configuration config,
                           const Scenario& scenario) {
  return Efficiency(seq, config, scenario, scenario.value_function);
}

inline Rational WeightedEfficiency(const AttackSequence& seq,
                                   Configuration config,
                                   const Scenario& scenario,
                                   const ValueFunction& vf) {
  const Rational denom = detail::CoverageValue(config, scenario, vf);
  Rational numer = 0;
  for (std::size_t l : config.Members()) {
    numer += detail::TpWeightedOverlap(seq, scenario.libraries[l], vf);
  }
  return numer / denom;
}

inline Rational WeightedEfficiency(const AttackSequence& seq,
                                   Configuration config,
                                   const Scenario& scenario) {
  return WeightedEfficiency(seq, config, scenario, scenario.value_function);
}

struct MetricReport {
  Rational eta;
  Rational eta_weighted;
  Rational zeta;           // 0 when the coverage is empty
  Rational zeta_weighted;  // 0 when the coverage is empty
  bool zeta_defined = true;
  /// 1/eta + 1/zeta; nullopt stands for +infinity (a metric is zero).
  std::optional<Rational> tradeoff_sum;
  /// The lower bound 1/eta + 1/zeta >= 1. Holds vacuously at infinity.
  bool lower_bound_holds = true;

  double tradeoff_sum_value() const {
    return tradeoff_sum ? ToDouble(*tradeoff_sum)
                        : std::numeric_limits<double>::infinity();
  }
};

inline MetricReport TradeoffCheck(const AttackSequence& seq,
                                  Configuration config,
                                  const Scenario& scenario,
                                  const ValueFunction& vf) {
  MetricReport r;
  r.eta = Detectability(seq, config, scenario, vf);
  r.eta_weighted = WeightedDetectability(seq, config, scenario, vf);
  if (vf.Value(Coverage(config, scenario)) > 0) {
    r.zeta = Efficiency(seq, config, scenario, vf);
    r.zeta_weighted = WeightedEfficiency(seq, config, scenario, vf);
  } else {
    r.zeta_defined = false;
  }
  if (r.eta > 0 && r.zeta > 0) {
    r.tradeoff_sum = 1 / r.eta + 1 / r.zeta;
    r.lower_bound_holds = *r.tradeoff_sum >= 1;
  }
  return r;
}

inline MetricReport TradeoffCheck(const AttackSequence& seq,
                                  Configuration config,
                                  const Scenario& scenario) {
  return TradeoffCheck(seq, config, scenario, scenario.value_function);
}

}  // namespace idspower
