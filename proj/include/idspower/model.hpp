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

// Domain model: attacks, detection libraries, attack sequences, library
// configurations and the validated Scenario that ties them together.
//
// A Scenario is built once from a ScenarioSpec (the id-based description that
// the JSON loader produces) and is immutable afterwards. Attacks, libraries
// and sequences are referred to by their declaration index; the string ids are
// kept for reporting only.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "idspower/rational.hpp"

namespace idspower {

/// Coalitions are 64-bit masks, so a scenario may declare at most this many
/// libraries.
inline constexpr std::size_t kMaxLibraries = 63;

/// Raised when a scenario violates one or more invariants. `problems()` lists
/// every violation found, not only the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(Join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string Join(const std::vector<std::string>& problems) {
    std::string out = "scenario validation failed";
    for (const auto& p : problems) out += "\n  - " + p;
    return out;
  }

  std::vector<std::string> problems_;
};

using AttackSet = boost::dynamic_bitset<>;

/// A set of libraries, stored as a bitmask over declaration order.
class Configuration {
 public:
  constexpr Configuration() = default;
  constexpr explicit Configuration(std::uint64_t bits) : bits_(bits) {}

  static Configuration FromIndices(std::initializer_list<std::size_t> members) {
    Configuration c;
    for (std::size_t m : members) c.Insert(m);
    return c;
  }

  static constexpr Configuration All(std::size_t n) {
    return Configuration(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool Contains(std::size_t i) const {
    return i < 64 && ((bits_ >> i) & 1U) != 0;
  }
  void Insert(std::size_t i) {
    if (i >= kMaxLibraries) throw std::out_of_range("library index too large");
    bits_ |= std::uint64_t{1} << i;
  }
  void Erase(std::size_t i) {
    if (i < 64) bits_ &= ~(std::uint64_t{1} << i);
  }
  constexpr Configuration With(std::size_t i) const {
    return Configuration(bits_ | (std::uint64_t{1} << i));
  }
  constexpr Configuration Without(std::size_t i) const {
    return Configuration(bits_ & ~(std::uint64_t{1} << i));
  }
  constexpr bool IsSubsetOf(Configuration other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr Configuration Union(Configuration other) const {
    return Configuration(bits_ | other.bits_);
  }

  /// Member indices in increasing (declaration) order.
  std::vector<std::size_t> Members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr bool operator==(Configuration, Configuration) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct Attack {
  std::string id;
  Rational damage{0};
};

struct Library {
  std::string id;
  Rational cost{0};
  AttackSet scope;
  /// True-positive rate per attack index; zero for attacks outside scope.
  std::vector<Rational> tp;

  bool Covers(std::size_t attack) const {
    return attack < scope.size() && scope.test(attack);
  }
  Rational TruePositive(std::size_t attack) const {
    return Covers(attack) ? tp[attack] : Rational(0);
  }
  Rational FalseNegative(std::size_t attack) const {
    return 1 - TruePositive(attack);
  }
};

struct AttackSequence {
  std::string id;
  std::vector<std::size_t> attacks;  // declaration order preserved
  Rational weight{0};

  AttackSet AsSet(std::size_t num_attacks) const {
    AttackSet s(num_attacks);
    for (std::size_t a : attacks) s.set(a);
    return s;
  }
};

/// Additive value function v(A) = sum of per-attack weights.
class ValueFunction {
 public:
  ValueFunction() = default;
  explicit ValueFunction(std::vector<Rational> weights)
      : weights_(std::move(weights)) {
    for (const auto& w : weights_) {
      if (w <= 0) throw std::invalid_argument("value weights must be > 0");
    }
  }
  static ValueFunction Cardinality(std::size_t num_attacks) {
    return ValueFunction(std::vector<Rational>(num_attacks, Rational(1)));
  }

  const Rational& Weight(std::size_t attack) const {
    if (attack >= weights_.size()) {
      throw std::out_of_range("unknown attack index");
    }
    return weights_[attack];
  }
  std::size_t size() const { return weights_.size(); }

  Rational Value(const AttackSet& attacks) const {
    if (attacks.size() > weights_.size()) {
      throw std::out_of_range("attack set larger than value function domain");
    }
    Rational total = 0;
    for (auto a = attacks.find_first(); a != AttackSet::npos;
         a = attacks.find_next(a)) {
      total += weights_[a];
    }
    return total;
  }

 private:
  std::vector<Rational> weights_;
};

/// Id-based, unvalidated description of a scenario.
struct ScenarioSpec {
  struct AttackEntry {
    std::string id;
    Rational damage{0};
  };
  struct LibraryEntry {
    std::string id;
    Rational cost{0};
    std::vector<std::string> scope;
    std::map<std::string, Rational> tp;  // missing in-scope entries mean 1
  };
  struct SequenceEntry {
    std::string id;
    std::vector<std::string> attacks;
    Rational weight{0};
  };

  std::vector<AttackEntry> attacks;
  std::vector<LibraryEntry> libraries;
  std::vector<SequenceEntry> sequences;
  Rational omega{0};
  Rational budget{0};
  std::map<std::string, Rational> value_weights;
};

struct BuildOptions {
  /// Downgrades overlapping scopes from an error to a warning.
  bool allow_overlapping_scopes = false;
};

struct Scenario {
  std::vector<Attack> attacks;
  std::vector<Library> libraries;
  std::vector<AttackSequence> sequences;
  Rational omega{0};
  Rational budget{0};
  ValueFunction value_function;
  std::vector<std::string> warnings;
  bool scopes_disjoint = true;

  std::size_t num_attacks() const { return attacks.size(); }
  std::size_t num_libraries() const { return libraries.size(); }

  std::size_t AttackIndex(std::string_view id) const {
    return IndexOf(attacks, id, "attack");
  }
  std::size_t LibraryIndex(std::string_view id) const {
    return IndexOf(libraries, id, "library");
  }
  std::size_t SequenceIndex(std::string_view id) const {
    return IndexOf(sequences, id, "sequence");
  }

  Configuration MakeConfiguration(const std::vector<std::string>& ids) const {
    Configuration c;
    for (const auto& id : ids) c.Insert(LibraryIndex(id));
    return c;
  }
  Configuration AllLibraries() const {
    return Configuration::All(libraries.size());
  }

  void CheckConfiguration(Configuration config) const {
    if (!config.IsSubsetOf(AllLibraries())) {
      throw std::out_of_range("configuration references an unknown library");
    }
  }

 private:
  template <typename T>
  static std::size_t IndexOf(const std::vector<T>& items, std::string_view id,
                             const char* what) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].id == id) return i;
    }
    throw std::out_of_range(std::string("unknown ") + what + " id '" +
                            std::string(id) + "'");
  }
};

/// Validates `spec` and builds the immutable Scenario. Throws ValidationError
/// listing every violated invariant.
inline Scenario BuildScenario(const ScenarioSpec& spec,
                              const BuildOptions& options = {}) {
  std::vector<std::string> problems;
  Scenario out;

  std::map<std::string, std::size_t> attack_index;
  for (const auto& a : spec.attacks) {
    if (a.id.empty()) problems.push_back("attack with empty id");
    if (!attack_index.emplace(a.id, out.attacks.size()).second) {
      problems.push_back("duplicate attack id '" + a.id + "'");
    }
    if (a.damage < 0) {
      problems.push_back("attack '" + a.id + "': damage must be >= 0");
    }
    out.attacks.push_back({a.id, a.damage});
  }
  const std::size_t m = out.attacks.size();

  if (spec.libraries.size() > kMaxLibraries) {
    problems.push_back("at most " + std::to_string(kMaxLibraries) +
                       " libraries are supported, got " +
                       std::to_string(spec.libraries.size()));
  }
  std::set<std::string> library_ids;
  std::vector<std::string> owner(m);
  for (const auto& l : spec.libraries) {
    const std::string ctx = "library '" + l.id + "'";
    if (l.id.empty()) problems.push_back("library with empty id");
    if (!library_ids.insert(l.id).second) {
      problems.push_back("duplicate library id '" + l.id + "'");
    }
    if (l.cost < 0) problems.push_back(ctx + ": cost must be >= 0");
    Library lib{l.id, l.cost, AttackSet(m), std::vector<Rational>(m, 0)};
    for (const auto& aid : l.scope) {
      auto it = attack_index.find(aid);
      if (it == attack_index.end()) {
        problems.push_back(ctx + ": scope references unknown attack '" + aid +
                           "'");
        continue;
      }
      std::size_t a = it->second;
      if (lib.scope.test(a)) {
        problems.push_back(ctx + ": attack '" + aid +
                           "' listed twice in scope");
        continue;
      }
      lib.scope.set(a);
      lib.tp[a] = 1;
      if (!owner[a].empty()) {
        out.scopes_disjoint = false;
        std::string msg = "overlapping scopes: attack '" + aid +
                          "' is claimed by '" + owner[a] + "' and '" + l.id +
                          "'";
        if (options.allow_overlapping_scopes) {
          out.warnings.push_back(msg);
        } else {
          problems.push_back(msg);
        }
      } else {
        owner[a] = l.id;
      }
    }
    for (const auto& [aid, rate] : l.tp) {
      auto it = attack_index.find(aid);
      if (it == attack_index.end()) {
        problems.push_back(ctx + ": tp references unknown attack '" + aid +
                           "'");
        continue;
      }
      if (!lib.scope.test(it->second)) {
        problems.push_back(ctx + ": tp given for attack '" + aid +
                           "' outside its scope");
        continue;
      }
      if (rate < 0 || rate > 1) {
        problems.push_back(ctx + ": tp for attack '" + aid +
                           "' must lie in [0, 1], got " +
                           FormatRational(rate));
        continue;
      }
      lib.tp[it->second] = rate;
    }
    out.libraries.push_back(std::move(lib));
  }

  std::set<std::string> sequence_ids;
  Rational weight_sum = 0;
  for (const auto& s : spec.sequences) {
    const std::string ctx = "sequence '" + s.id + "'";
    if (!sequence_ids.insert(s.id).second) {
      problems.push_back("duplicate sequence id '" + s.id + "'");
    }
    if (s.attacks.empty()) problems.push_back(ctx + ": no attacks");
    if (s.weight < 0) problems.push_back(ctx + ": weight must be >= 0");
    weight_sum += s.weight;
    AttackSequence seq{s.id, {}, s.weight};
    std::set<std::size_t> seen;
    for (const auto& aid : s.attacks) {
      auto it = attack_index.find(aid);
      if (it == attack_index.end()) {
        problems.push_back(ctx + ": unknown attack '" + aid + "'");
        continue;
      }
      if (!seen.insert(it->second).second) {
        problems.push_back(ctx + ": attack '" + aid + "' appears twice");
        continue;
      }
      seq.attacks.push_back(it->second);
    }
    out.sequences.push_back(std::move(seq));
  }
  if (!spec.sequences.empty()) {
    if (weight_sum <= 0) {
      problems.push_back("sequence weights must have a positive sum");
    } else if (weight_sum != 1) {
      out.warnings.push_back("sequence weights summed to " +
                             FormatRational(weight_sum) +
                             "; normalized to 1");
      for (auto& seq : out.sequences) seq.weight /= weight_sum;
    }
  }

  if (spec.omega <= 0 || spec.omega > 1) {
    problems.push_back("omega must lie in (0, 1], got " +
                       FormatRational(spec.omega));
  } else if (spec.omega <= Rational(1, 2)) {
    out.warnings.push_back(
        "omega <= 1/2: the detection game may fail superadditivity");
  }
  out.omega = spec.omega;
  if (spec.budget < 0) {
    problems.push_back("budget must be >= 0, got " +
                       FormatRational(spec.budget));
  }
  out.budget = spec.budget;

  std::vector<Rational> value_weights(m, Rational(1));
  for (const auto& [aid, w] : spec.value_weights) {
    auto it = attack_index.find(aid);
    if (it == attack_index.end()) {
      problems.push_back("value_weights references unknown attack '" + aid +
                         "'");
      continue;
    }
    if (w <= 0) {
      problems.push_back("value weight for attack '" + aid +
                         "' must be > 0");
      continue;
    }
    value_weights[it->second] = w;
  }

  if (!problems.empty()) throw ValidationError(std::move(problems));
  out.value_function = ValueFunction(std::move(value_weights));
  return out;
}

/// Union of the member libraries' scopes.
inline AttackSet Coverage(Configuration config, const Scenario& scenario) {
  scenario.CheckConfiguration(config);
  AttackSet covered(scenario.num_attacks());
  for (std::size_t l : config.Members()) {
    covered |= scenario.libraries[l].scope;
  }
  return covered;
}

struct SequenceSplit {
  std::vector<std::size_t> detectable;
  std::vector<std::size_t> undetectable;
};

/// Partitions a sequence into the attacks the configuration covers and the
/// remainder, both in sequence order.
inline SequenceSplit SplitSequence(const AttackSequence& seq,
                                   Configuration config,
                                   const Scenario& scenario) {
  const AttackSet covered = Coverage(config, scenario);
  SequenceSplit split;
  for (std::size_t a : seq.attacks) {
    (covered.test(a) ? split.detectable : split.undetectable).push_back(a);
  }
  return split;
}

inline Rational ConfigCost(Configuration config, const Scenario& scenario) {
  scenario.CheckConfiguration(config);
  Rational total = 0;
  for (std::size_t l : config.Members()) total += scenario.libraries[l].cost;
  return total;
}

/// Total damage of the attacks in a sequence; order does not matter.
inline Rational SequenceDamage(const AttackSequence& seq,
                               const Scenario& scenario) {
  Rational total = 0;
  for (std::size_t a : seq.attacks) total += scenario.attacks.at(a).damage;
  return total;
}

inline std::vector<std::string> AttackIds(const std::vector<std::size_t>& idx,
                                          const Scenario& scenario) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (std::size_t a : idx) out.push_back(scenario.attacks.at(a).id);
  return out;
}

inline std::vector<std::string> AttackIds(const AttackSet& set,
                                          const Scenario& scenario) {
  std::vector<std::string> out;
  for (auto a = set.find_first(); a != AttackSet::npos; a = set.find_next(a)) {
    out.push_back(scenario.attacks.at(a).id);
  }
  return out;
}

inline std::vector<std::string> LibraryIds(Configuration config,
                                           const Scenario& scenario) {
  std::vector<std::string> out;
  for (std::size_t l : config.Members()) {
    out.push_back(scenario.libraries.at(l).id);
  }
  return out;
}

}  // namespace idspower
