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

// The idspower command line: validate, metrics, rank, optimize and
// reproduce-paper. Exit codes: 0 success, 1 runtime error, 2 invalid
// scenario.

#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "idspower/idspower.hpp"

namespace idspower::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr const char* kEnumLimitEnv = "IDSPOWER_ENUM_LIMIT";

struct CommonFlags {
  bool csv = false;
  std::string out_path;
  std::optional<int> decimals;
  bool stamp = false;
  bool allow_overlap = false;
  std::optional<std::size_t> enum_limit;
};

struct RankFlags {
  std::string index = "shapley";
  std::string omega;
  bool weighted = false;
  std::string method = "auto";
  bool per_sequence = false;
  int quad_nodes = 64;
  std::optional<double> cc;
  std::string variance = "linear";
  std::string window = "literal";
  bool aggregate_weights = false;
};

/// Reference values for the bundled attack-tree example: the published
/// Banzhaf-Coleman table and the published Shapley table as printed.
inline std::vector<std::vector<Rational>> ReferenceBanzhafTable() {
  auto r = [](int n, int d) { return Rational(n, d); };
  return {{r(3, 5), r(1, 5), r(1, 5), 0},
          {1, 0, 0, 0},
          {r(1, 2), r(1, 2), 0, 0},
          {r(1, 3), r(1, 3), r(1, 3), 0}};
}

inline std::vector<std::vector<Rational>> ReferenceShapleyTableAsPrinted() {
  auto r = [](int n, int d) { return Rational(n, d); };
  return {{r(1, 3), r(1, 6), r(1, 3), 0},
          {1, 0, 0, 0},
          {r(1, 2), r(1, 2), 0, 0},
          {r(1, 3), r(1, 3), r(1, 3), 0}};
}

namespace detail {

inline GameOptions MakeGameOptions(const CommonFlags& flags) {
  GameOptions options;
  if (const char* env = std::getenv(kEnumLimitEnv); env && *env) {
    try {
      options.enumeration_limit = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw std::runtime_error(std::string(kEnumLimitEnv) +
                               " must be a non-negative integer");
    }
  }
  if (flags.enum_limit) options.enumeration_limit = *flags.enum_limit;
  return options;
}

inline IndexKind ParseIndexKind(const std::string& s) {
  return s == "banzhaf" ? IndexKind::kBanzhaf : IndexKind::kShapley;
}

inline RankMethod ParseRankMethod(const std::string& s) {
  if (s == "enumerate") return RankMethod::kEnumerate;
  if (s == "dp") return RankMethod::kDp;
  if (s == "normal-approx") return RankMethod::kNormalApprox;
  return RankMethod::kAuto;
}

inline std::string Braced(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += ids[i];
  }
  return out + "}";
}

inline std::string StampLine() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("generated: ") + buf;
}

inline void Emit(Report report, const CommonFlags& flags, std::ostream& out) {
  report.summary.insert(report.summary.begin(),
                        std::string("idspower ") + kVersion);
  if (flags.stamp) report.summary.insert(report.summary.begin() + 1, StampLine());
  out << (flags.csv ? RenderCsv(report) : RenderText(report));
  if (!flags.out_path.empty()) {
    std::ofstream file(flags.out_path, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot write '" + flags.out_path + "'");
    }
    file << RenderCsv(report);
  }
}

inline std::vector<std::string> SummaryLines(const Scenario& s) {
  return {"scenario: " + std::to_string(s.num_libraries()) + " libraries, " +
              std::to_string(s.num_attacks()) + " attacks, " +
              std::to_string(s.sequences.size()) + " sequences",
          "omega: " + FormatRational(s.omega) +
              ", budget: " + FormatRational(s.budget)};
}

inline RankOptions MakeRankOptions(const RankFlags& flags,
                                   const GameOptions& game) {
  RankOptions options;
  options.kind = ParseIndexKind(flags.index);
  options.method = ParseRankMethod(flags.method);
  options.weighted = flags.weighted;
  if (!flags.omega.empty()) options.omega = ParseRational(flags.omega);
  options.game = game;
  options.approx.quadrature_nodes = flags.quad_nodes;
  options.approx.continuity_correction = flags.cc;
  options.approx.variance = flags.variance == "squared"
                                ? VarianceMode::kSquared
                                : VarianceMode::kLinear;
  options.approx.window =
      flags.window == "swing" ? WindowMode::kSwing : WindowMode::kLiteral;
  options.summed_weights = flags.aggregate_weights;
  return options;
}

inline std::string Dummy(bool d) { return d ? "yes" : "no"; }

inline Table IndexTable(const std::string& title, const Scenario& scenario,
                        const IndexVector& v, const std::vector<bool>& dummy,
                        const NumberFormat& fmt,
                        const std::vector<Rational>* game_weights = nullptr) {
  Table t;
  t.title = title;
  t.header = {"library"};
  if (game_weights) t.header.push_back("weight");
  t.header.insert(t.header.end(),
                  {IndexKindName(v.kind), "swings", "dummy"});
  if (v.approximate) t.header.push_back("approx");
  for (std::size_t i = 0; i < scenario.num_libraries(); ++i) {
    std::vector<std::string> row{scenario.libraries[i].id};
    if (game_weights) row.push_back(fmt((*game_weights)[i]));
    row.push_back(fmt(v.values[i], v.approximate));
    row.push_back(i < v.swing_counts.size() && !v.approximate
                      ? std::to_string(v.swing_counts[i])
                      : "-");
    row.push_back(Dummy(i < dummy.size() && dummy[i]));
    if (v.approximate) row.push_back("approx");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Scenario Load(const std::string& path, const CommonFlags& flags) {
  BuildOptions options;
  options.allow_overlapping_scopes = flags.allow_overlap;
  return LoadScenarioFile(path, options);
}

}  // namespace detail

inline Report ValidateCommand(const Scenario& s) {
  Report r;
  r.summary = detail::SummaryLines(s);
  r.summary.push_back(std::string("scopes: ") +
                      (s.scopes_disjoint ? "disjoint" : "overlapping"));
  r.summary.push_back("status: valid");
  r.warnings = s.warnings;
  return r;
}

inline Report MetricsCommand(const Scenario& s,
                             const std::vector<std::string>& config_ids,
                             const NumberFormat& fmt) {
  const Configuration config = config_ids.empty()
                                   ? s.AllLibraries()
                                   : s.MakeConfiguration(config_ids);
  Report r;
  r.summary = detail::SummaryLines(s);
  r.summary.push_back("configuration: " +
                      detail::Braced(LibraryIds(config, s)) +
                      ", cost: " + fmt(ConfigCost(config, s)));
  r.summary.push_back("coverage: " +
                      detail::Braced(AttackIds(Coverage(config, s), s)));
  Table t;
  t.title = "metrics";
  t.header = {"sequence", "detected",  "undetected", "eta",
              "eta_alpha", "zeta",     "zeta_alpha", "inv_eta+inv_zeta",
              "lower_bound"};
  for (const auto& seq : s.sequences) {
    const SequenceSplit split = SplitSequence(seq, config, s);
    const MetricReport m = TradeoffCheck(seq, config, s);
    t.rows.push_back(
        {seq.id, detail::Braced(AttackIds(split.detectable, s)),
         detail::Braced(AttackIds(split.undetectable, s)), fmt(m.eta),
         fmt(m.eta_weighted), m.zeta_defined ? fmt(m.zeta) : "undefined",
         m.zeta_defined ? fmt(m.zeta_weighted) : "undefined",
         m.tradeoff_sum ? fmt(*m.tradeoff_sum) : "inf",
         m.lower_bound_holds ? "ok" : "violated"});
  }
  r.tables.push_back(std::move(t));
  r.warnings = s.warnings;
  return r;
}

inline Report RankCommand(const Scenario& s, const RankOptions& options,
                          bool per_sequence, const NumberFormat& fmt) {
  const RankResult result = RankLibraries(s, options);
  Report r;
  r.summary = detail::SummaryLines(s);
  r.summary.push_back(
      std::string("index: ") + IndexKindName(options.kind) +
      (options.weighted ? " (tp-weighted)" : "") +
      ", omega: " + FormatRational(options.omega.value_or(s.omega)));
  if (per_sequence) {
    for (const auto& entry : result.per_sequence) {
      r.tables.push_back(detail::IndexTable(
          "sequence " + entry.sequence_id + " (weight " + fmt(entry.weight) +
              ")",
          s, entry.indices, entry.dummy, fmt, &entry.game.weights()));
    }
  }
  r.tables.push_back(detail::IndexTable(
      options.summed_weights ? "aggregate (summed weights)" : "aggregate", s,
      result.aggregate, result.aggregate_dummy, fmt));
  r.warnings = s.warnings;
  r.warnings.insert(r.warnings.end(), result.warnings.begin(),
                    result.warnings.end());
  return r;
}

inline Report OptimizeCommand(const Scenario& s, const RankOptions& options,
                              const Rational& budget, SelectionMethod method,
                              const NumberFormat& fmt) {
  const RankResult ranked = RankLibraries(s, options);
  std::vector<Rational> costs;
  for (const auto& lib : s.libraries) costs.push_back(lib.cost);
  const SelectionResult sel =
      OptimizeDefaultConfig(ranked.aggregate.values, costs, budget, method);

  Report r;
  r.summary = detail::SummaryLines(s);
  r.summary.push_back("chosen: " + detail::Braced(LibraryIds(sel.chosen, s)));
  r.summary.push_back(std::string("objective (") +
                      IndexKindName(options.kind) +
                      "): " + fmt(sel.objective, ranked.aggregate.approximate));
  r.summary.push_back("budget: " + fmt(budget) + ", used: " +
                      fmt(sel.budget_used) +
                      ", residual: " + fmt(budget - sel.budget_used));
  r.summary.push_back(std::string("method: ") +
                      SelectionMethodName(sel.method));
  r.tables.push_back(detail::IndexTable("aggregate index", s, ranked.aggregate,
                                        ranked.aggregate_dummy, fmt));
  const Rational omega = options.omega.value_or(s.omega);
  Table t;
  t.title = "chosen configuration per sequence";
  t.header = {"sequence", "eta", "eta_alpha", "effective"};
  for (const auto& seq : s.sequences) {
    const Rational eta = Detectability(seq, sel.chosen, s);
    const Rational eta_a = WeightedDetectability(seq, sel.chosen, s);
    const Rational& test = options.weighted ? eta_a : eta;
    t.rows.push_back({seq.id, fmt(eta), fmt(eta_a),
                      test >= omega ? "yes" : "no"});
  }
  r.tables.push_back(std::move(t));
  r.warnings = s.warnings;
  r.warnings.insert(r.warnings.end(), ranked.warnings.begin(),
                    ranked.warnings.end());
  return r;
}

/// Regenerates the attack-tree tables and the budget-2 selection from the
/// bundled scenario and compares them with the reference values. `ok` is
/// false if any row expected to match does not.
inline Report ReproduceCommand(const NumberFormat& fmt, bool* ok) {
  const Scenario s = LoadScenario(kAttackTreeScenario);
  bool all_ok = true;
  Report r;
  r.summary = detail::SummaryLines(s);

  auto row_text = [&](const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += fmt(v[i]);
    }
    return out + ")";
  };

  RankOptions banzhaf_opts;
  banzhaf_opts.kind = IndexKind::kBanzhaf;
  banzhaf_opts.method = RankMethod::kEnumerate;
  const RankResult bc = RankLibraries(s, banzhaf_opts);
  const auto bc_ref = ReferenceBanzhafTable();
  Table bt;
  bt.title = "Banzhaf-Coleman index per sequence";
  bt.header = {"sequence", "computed", "reference", "status"};
  for (std::size_t j = 0; j < bc.per_sequence.size(); ++j) {
    const auto& got = bc.per_sequence[j].indices.values;
    const bool match = got == bc_ref[j];
    all_ok = all_ok && match;
    bt.rows.push_back({bc.per_sequence[j].sequence_id, row_text(got),
                       row_text(bc_ref[j]), match ? "match" : "MISMATCH"});
  }
  r.tables.push_back(std::move(bt));

  RankOptions shapley_opts;
  shapley_opts.kind = IndexKind::kShapley;
  shapley_opts.method = RankMethod::kEnumerate;
  const RankResult sh = RankLibraries(s, shapley_opts);
  const auto sh_ref = ReferenceShapleyTableAsPrinted();
  Table st;
  st.title = "Shapley value per sequence";
  st.header = {"sequence", "computed", "reference", "sum", "status"};
  for (std::size_t j = 0; j < sh.per_sequence.size(); ++j) {
    const auto& v = sh.per_sequence[j].indices;
    const bool match = v.values == sh_ref[j];
    Rational ref_sum = 0;
    for (const auto& x : sh_ref[j]) ref_sum += x;
    std::string status;
    if (match) {
      status = "match";
    } else if (ref_sum != 1 && v.Sum() == 1) {
      status = "recomputed (printed row sums to " + fmt(ref_sum) +
               ", violating efficiency)";
    } else {
      status = "MISMATCH";
      all_ok = false;
    }
    st.rows.push_back({sh.per_sequence[j].sequence_id, row_text(v.values),
                       row_text(sh_ref[j]), fmt(v.Sum()), status});
  }
  r.tables.push_back(std::move(st));

  r.tables.push_back(detail::IndexTable("aggregate Shapley value", s,
                                        sh.aggregate, sh.aggregate_dummy, fmt));

  std::vector<Rational> costs;
  for (const auto& lib : s.libraries) costs.push_back(lib.cost);
  const SelectionResult sel =
      OptimizeDefaultConfig(sh.aggregate.values, costs, s.budget);
  const bool sel_ok = sel.chosen == s.MakeConfiguration({"l1", "l2"});
  all_ok = all_ok && sel_ok;
  r.summary.push_back("selection at budget " + fmt(s.budget) + ": " +
                      detail::Braced(LibraryIds(sel.chosen, s)) +
                      ", objective " + fmt(sel.objective) + " (" +
                      (sel_ok ? "match" : "MISMATCH") + ")");
  r.warnings = s.warnings;
  if (ok) *ok = all_ok;
  return r;
}

/// Entry point shared by the executable and the tests.
inline int Run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Power indices and budgeted default configuration for IDS "
               "detection libraries",
               "idspower"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("idspower ") + kVersion);

  CommonFlags common;
  RankFlags rank;
  std::string scenario_path;
  std::vector<std::string> config_ids;
  std::string budget_text;
  std::string select_method = "dp";

  auto add_common = [&](CLI::App* sub, bool needs_scenario) {
    if (needs_scenario) {
      sub->add_option("scenario", scenario_path, "Scenario JSON file")
          ->required();
      sub->add_flag("--allow-overlap", common.allow_overlap,
                    "Accept overlapping library scopes with a warning");
    }
    sub->add_flag("--csv", common.csv, "Write CSV to standard output");
    sub->add_option("--out", common.out_path, "Also write CSV to this file");
    sub->add_option("--decimal", common.decimals,
                    "Print numbers with K decimals instead of fractions")
        ->check(CLI::Range(0, 30));
    sub->add_flag("--stamp", common.stamp, "Add a generation timestamp");
    sub->add_option("--enum-limit", common.enum_limit,
                    std::string("Enumeration limit (default 24, or ") +
                        kEnumLimitEnv + ")");
  };
  auto add_rank = [&](CLI::App* sub, bool full) {
    sub->add_option("--index", rank.index, "shapley or banzhaf")
        ->check(CLI::IsMember({"shapley", "banzhaf"}));
    sub->add_option("--omega", rank.omega, "Override the scenario omega");
    sub->add_flag("--weighted", rank.weighted,
                  "Use true-positive weighted detectability");
    if (!full) return;
    sub->add_option("--method", rank.method,
                    "enumerate, dp, auto or normal-approx")
        ->check(CLI::IsMember({"enumerate", "dp", "auto", "normal-approx"}));
    sub->add_flag("--per-sequence", rank.per_sequence,
                  "Also print one table per sequence");
    sub->add_option("--quad-nodes", rank.quad_nodes,
                    "Simpson subintervals for the approximate Shapley value")
        ->check(CLI::Range(2, 1 << 20));
    sub->add_option("--cc", rank.cc, "Continuity correction (weight units)");
    sub->add_option("--variance", rank.variance, "linear or squared")
        ->check(CLI::IsMember({"linear", "squared"}));
    sub->add_option("--window", rank.window, "literal or swing")
        ->check(CLI::IsMember({"literal", "swing"}));
    sub->add_flag("--aggregate-weights", rank.aggregate_weights,
                  "Approximate one game with weights summed over sequences");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  add_common(validate, true);

  CLI::App* metrics =
      app.add_subcommand("metrics", "Detectability and efficiency per sequence");
  add_common(metrics, true);
  metrics
      ->add_option("--config", config_ids,
                   "Library ids of the configuration (default: all)")
      ->delimiter(',');

  CLI::App* rank_cmd = app.add_subcommand("rank", "Power index per library");
  add_common(rank_cmd, true);
  add_rank(rank_cmd, true);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Best library set within a budget");
  add_common(optimize, true);
  add_rank(optimize, false);
  optimize->add_option("--budget", budget_text,
                       "Cost budget (default: the scenario budget)");
  optimize->add_option("--method", select_method, "dp, exhaustive or greedy")
      ->check(CLI::IsMember({"dp", "exhaustive", "greedy"}));

  CLI::App* reproduce = app.add_subcommand(
      "reproduce-paper",
      "Recompute the bundled attack-tree tables and budget-2 selection");
  add_common(reproduce, false);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "idspower " << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  const NumberFormat fmt{common.decimals};
  try {
    const GameOptions game_options = detail::MakeGameOptions(common);
    if (*reproduce) {
      bool ok = true;
      detail::Emit(ReproduceCommand(fmt, &ok), common, out);
      return ok ? kExitOk : kExitError;
    }
    const Scenario scenario = detail::Load(scenario_path, common);
    if (*validate) {
      detail::Emit(ValidateCommand(scenario), common, out);
    } else if (*metrics) {
      detail::Emit(MetricsCommand(scenario, config_ids, fmt), common, out);
    } else if (*rank_cmd) {
      detail::Emit(RankCommand(scenario,
                               detail::MakeRankOptions(rank, game_options),
                               rank.per_sequence, fmt),
                   common, out);
    } else if (*optimize) {
      const Rational budget =
          budget_text.empty() ? scenario.budget : ParseRational(budget_text);
      SelectionMethod method = SelectionMethod::kDp;
      if (select_method == "exhaustive") method = SelectionMethod::kExhaustive;
      if (select_method == "greedy") method = SelectionMethod::kGreedy;
      detail::Emit(OptimizeCommand(scenario,
                                   detail::MakeRankOptions(rank, game_options),
                                   budget, method, fmt),
                   common, out);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << scenario_path << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace idspower::cli
