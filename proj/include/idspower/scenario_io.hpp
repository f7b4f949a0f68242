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

// JSON scenario documents.
//
//   {
//     "attacks":   [{"id": "a1", "damage": 1}, ...],
//     "libraries": [{"id": "l1", "cost": 1, "scope": ["a1", "a2"],
//                    "tp": {"a1": 0.9}}, ...],
//     "sequences": [{"id": "S1", "attacks": ["a1", "a2"], "weight": 0.5}, ...],
//     "omega": "3/5",
//     "budget": 2,
//     "value_weights": {"a1": 2}
//   }
//
// Numbers may be JSON numbers or strings holding a fraction ("3/5"); both are
// read exactly.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "idspower/model.hpp"

namespace idspower {

/// Malformed document. `line()` and `column()` are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

using Json = nlohmann::json;

inline Rational JsonToRational(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) {
      return Rational(j.get<std::int64_t>());
    }
    if (j.is_number_unsigned()) {
      return Rational(BigInt(j.get<std::uint64_t>()));
    }
    if (j.is_number_float()) {
      // The shortest round-trip text of the double is what the author wrote
      // for every reasonable input ("0.6" stays 3/5).
      return ParseRational(j.dump());
    }
    if (j.is_string()) return ParseRational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
  throw ParseError(path + ": expected a number or a fraction string", 0, 0);
}

inline std::string JsonToId(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string id", 0, 0);
  return j.get<std::string>();
}

inline const Json& Require(const Json& obj, const char* key,
                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + ": missing key '" + key + "'", 0, 0);
  }
  return *it;
}

inline const Json& RequireArray(const Json& obj, const char* key,
                                const std::string& path) {
  const Json& v = Require(obj, key, path);
  if (!v.is_array()) {
    throw ParseError(path + "." + key + ": expected an array", 0, 0);
  }
  return v;
}

inline std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                                      std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Parses a scenario document into its unvalidated id-based form.
inline ScenarioSpec ParseScenarioSpec(std::string_view document) {
  using detail::Json;
  Json root;
  try {
    root = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] =
        detail::LineColumn(document, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!root.is_object()) {
    throw ParseError("document root must be an object", 1, 1);
  }

  ScenarioSpec spec;
  const Json& attacks = detail::RequireArray(root, "attacks", "$");
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    const std::string path = "attacks[" + std::to_string(i) + "]";
    const Json& a = attacks[i];
    if (!a.is_object()) throw ParseError(path + ": expected an object", 0, 0);
    ScenarioSpec::AttackEntry entry;
    entry.id = detail::JsonToId(detail::Require(a, "id", path), path + ".id");
    if (auto it = a.find("damage"); it != a.end()) {
      entry.damage = detail::JsonToRational(*it, path + ".damage");
    }
    spec.attacks.push_back(std::move(entry));
  }

  const Json& libraries = detail::RequireArray(root, "libraries", "$");
  for (std::size_t i = 0; i < libraries.size(); ++i) {
    const std::string path = "libraries[" + std::to_string(i) + "]";
    const Json& l = libraries[i];
    if (!l.is_object()) throw ParseError(path + ": expected an object", 0, 0);
    ScenarioSpec::LibraryEntry entry;
    entry.id = detail::JsonToId(detail::Require(l, "id", path), path + ".id");
    entry.cost =
        detail::JsonToRational(detail::Require(l, "cost", path), path + ".cost");
    const Json& scope = detail::RequireArray(l, "scope", path);
    for (std::size_t k = 0; k < scope.size(); ++k) {
      entry.scope.push_back(detail::JsonToId(
          scope[k], path + ".scope[" + std::to_string(k) + "]"));
    }
    if (auto it = l.find("tp"); it != l.end()) {
      if (!it->is_object()) {
        throw ParseError(path + ".tp: expected an object", 0, 0);
      }
      for (const auto& [aid, rate] : it->items()) {
        entry.tp[aid] = detail::JsonToRational(rate, path + ".tp." + aid);
      }
    }
    spec.libraries.push_back(std::move(entry));
  }

  const Json& sequences = detail::RequireArray(root, "sequences", "$");
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const std::string path = "sequences[" + std::to_string(i) + "]";
    const Json& s = sequences[i];
    if (!s.is_object()) throw ParseError(path + ": expected an object", 0, 0);
    ScenarioSpec::SequenceEntry entry;
    entry.id = detail::JsonToId(detail::Require(s, "id", path), path + ".id");
    const Json& seq_attacks = detail::RequireArray(s, "attacks", path);
    for (std::size_t k = 0; k < seq_attacks.size(); ++k) {
      entry.attacks.push_back(detail::JsonToId(
          seq_attacks[k], path + ".attacks[" + std::to_string(k) + "]"));
    }
    entry.weight = detail::JsonToRational(detail::Require(s, "weight", path),
                                          path + ".weight");
    spec.sequences.push_back(std::move(entry));
  }

  spec.omega = detail::JsonToRational(detail::Require(root, "omega", "$"),
                                      "omega");
  spec.budget = detail::JsonToRational(detail::Require(root, "budget", "$"),
                                       "budget");
  if (auto it = root.find("value_weights"); it != root.end()) {
    if (!it->is_object()) {
      throw ParseError("value_weights: expected an object", 0, 0);
    }
    for (const auto& [aid, w] : it->items()) {
      spec.value_weights[aid] =
          detail::JsonToRational(w, "value_weights." + aid);
    }
  }
  return spec;
}

/// Parses and validates a scenario document.
inline Scenario LoadScenario(std::string_view document,
                             const BuildOptions& options = {}) {
  return BuildScenario(ParseScenarioSpec(document), options);
}

inline std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Scenario LoadScenarioFile(const std::string& path,
                                 const BuildOptions& options = {}) {
  const std::string text = ReadTextFile(path);
  try {
    return LoadScenario(text, options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

/// The attack-tree example (four libraries, eight attacks, four sequences)
/// used throughout the tests and by `idspower reproduce-paper`. Mirrors
/// data/attack_tree.json.
inline constexpr std::string_view kAttackTreeScenario = R"({
  "attacks": [
    {"id": "a1", "damage": 1}, {"id": "a2", "damage": 1},
    {"id": "a3", "damage": 1}, {"id": "a4", "damage": 1},
    {"id": "a5", "damage": 1}, {"id": "a6", "damage": 1},
    {"id": "a7", "damage": 1}, {"id": "a8", "damage": 1}
  ],
  "libraries": [
    {"id": "l1", "cost": 1, "scope": ["a1", "a2"]},
    {"id": "l2", "cost": 1, "scope": ["a3", "a7"]},
    {"id": "l3", "cost": 1, "scope": ["a4", "a8"]},
    {"id": "l4", "cost": 1, "scope": ["a6"]}
  ],
  "sequences": [
    {"id": "S1", "attacks": ["a1", "a2", "a3", "a4", "a5"], "weight": "1/4"},
    {"id": "S2", "attacks": ["a1", "a2", "a6"], "weight": "1/4"},
    {"id": "S3", "attacks": ["a1", "a2", "a3", "a7"], "weight": "1/4"},
    {"id": "S4", "attacks": ["a1", "a2", "a3", "a4", "a8"], "weight": "1/4"}
  ],
  "omega": "3/5",
  "budget": 2
}
)";

}  // namespace idspower
