// Copyright 2026 The EntropyLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entropylens/analysis.h"
#include "entropylens/csv.h"
#include "entropylens/error.h"
#include "entropylens/report_io.h"
#include "entropylens/schema_config.h"
#include "entropylens/service.h"
#include "entropylens/strategy.h"
#include "entropylens/transforms.h"

namespace entropylens::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Thrown for flag values that parse but make no sense together.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input;
  std::string schema;
  double epsilon0 = 0.5;
  std::size_t k_max = 4;
  std::vector<std::string> aux;
  std::string trigger = "any_record";
  std::string log_base = "2";
  std::size_t threads = 0;
  bool fold_case = false;
  std::string format = "table";
  std::string output;

  // analyze
  bool fail_on_risk = false;
  // plan
  std::string strategy;
  bool apply = false;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string bundle;
  // whatif
  std::string transform;
  std::string column;
  std::size_t level = 0;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_rows = ServiceOptions{}.max_rows;
  std::size_t max_columns = ServiceOptions{}.max_columns;
  long ttl = ServiceOptions{}.session_ttl.count();
  std::string static_dir;
};

std::string Env(const char* name) { return std::string("ENTROPYLENS_") + name; }

void AddDatasetOptions(CLI::App* app, Flags& flags) {
  app->add_option("--input", flags.input, "CSV file")->envname(Env("INPUT"))->required();
  app->add_option("--schema", flags.schema, "Schema config JSON")
      ->envname(Env("SCHEMA"))
      ->required();
  app->add_flag("--fold-case", flags.fold_case, "Lower-case every cell")
      ->envname(Env("FOLD_CASE"));
}

void AddAnalysisOptions(CLI::App* app, Flags& flags) {
  app->add_option("--epsilon0", flags.epsilon0, "Risk threshold in (0, 1]")
      ->envname(Env("EPSILON0"))
      ->capture_default_str();
  app->add_option("--k-max", flags.k_max, "Largest subset size searched")
      ->envname(Env("K_MAX"))
      ->capture_default_str();
  app->add_option("--aux", flags.aux, "Columns the adversary already knows")
      ->envname(Env("AUX"))
      ->delimiter(',');
  app->add_option("--trigger", flags.trigger, "any_record or fraction_at_least:TAU")
      ->envname(Env("TRIGGER"))
      ->capture_default_str();
  app->add_option("--log-base", flags.log_base, "Logarithm base")
      ->envname(Env("LOG_BASE"))
      ->check(CLI::IsMember({"2", "e"}))
      ->capture_default_str();
  app->add_option("--threads", flags.threads, "Worker threads, 0 for all cores")
      ->envname(Env("THREADS"));
}

void AddOutputOptions(CLI::App* app, Flags& flags) {
  app->add_option("--format", flags.format, "Output format")
      ->envname(Env("FORMAT"))
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app->add_option("--output", flags.output, "Write to this file instead of stdout")
      ->envname(Env("OUTPUT"));
}

AnalysisConfig ConfigFromFlags(const Flags& flags) {
  AnalysisConfig config;
  config.epsilon0 = flags.epsilon0;
  config.k_max = flags.k_max;
  config.aux_columns = flags.aux;
  config.threads = flags.threads;
  config.log_base = *ParseLogBase(flags.log_base);
  if (flags.trigger == "any_record") {
    config.trigger = RiskTrigger::AnyRecord();
  } else if (flags.trigger.rfind("fraction_at_least:", 0) == 0) {
    const std::string tau = flags.trigger.substr(std::string("fraction_at_least:").size());
    try {
      std::size_t used = 0;
      config.trigger = RiskTrigger::FractionAtLeast(std::stod(tau, &used));
      if (used != tau.size()) throw std::invalid_argument(tau);
    } catch (const std::logic_error&) {
      throw UsageError("--trigger: '" + tau + "' is not a number");
    }
  } else {
    throw UsageError("--trigger must be any_record or fraction_at_least:TAU");
  }
  try {
    ValidateConfig(config);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return config;
}

Dataset LoadInput(const Flags& flags) {
  return LoadDatasetFiles(flags.input, flags.schema, LoadOptions{flags.fold_case});
}

void Emit(const Flags& flags, const std::string& text, std::ostream& out) {
  if (flags.output.empty()) {
    out << text;
  } else {
    WriteFile(flags.output, text);
  }
}

std::string JsonText(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string ProfileLine(const char* label, const RiskProfile& profile) {
  std::ostringstream line;
  line << label << "min ε " << RoundForReport(profile.min_epsilon) << ", at risk "
       << RoundForReport(profile.at_risk_fraction) << ", minimal risky";
  if (profile.minimal_risky.empty()) line << " none";
  for (const auto& names : profile.minimal_risky) {
    line << " {";
    for (std::size_t i = 0; i < names.size(); ++i) line << (i ? ", " : "") << names[i];
    line << "}";
  }
  line << "\n";
  return line.str();
}

int RunAnalyze(const Flags& flags, bool with_link, std::ostream& out) {
  const AnalysisConfig config = ConfigFromFlags(flags);
  Dataset dataset = LoadInput(flags);
  if (with_link) {
    const SchemaConfig schema =
        ParseSchemaConfig(ReadFile(flags.schema), fs::path(flags.schema).parent_path());
    if (!schema.link) {
      throw Error(ErrorCode::kInvalidConfig, "schema config has no \"link\" section");
    }
    dataset = LoadAndAttachLink(dataset, *schema.link, LoadOptions{flags.fold_case});
  }
  const AnalysisBundle bundle = AnalyzeToBundle(dataset, config);
  Emit(flags,
       RenderReport(bundle, flags.format == "json" ? ReportFormat::kJson : ReportFormat::kTable),
       out);
  if (flags.fail_on_risk && !bundle.minimal_risky.empty()) return kExitRisk;
  return kExitOk;
}

void WriteCsvFile(const fs::path& path, const Dataset& dataset, std::vector<std::string>& written) {
  WriteFile(path, DatasetToCsv(dataset));
  written.push_back(path.string());
}

int RunPlan(const Flags& flags, std::ostream& out) {
  const AnalysisConfig config = ConfigFromFlags(flags);
  const Dataset dataset = LoadInput(flags);
  const fs::path dir(flags.out_dir);
  if (flags.apply) fs::create_directories(dir);
  std::vector<std::string> written;
  ordered_json plan;
  std::string text;

  if (flags.strategy == "hide") {
    const HidingPlan hiding = PlanHiding(dataset);
    plan = HidingPlanToJson(hiding);
    if (flags.apply && !hiding.no_op) {
      const HiddenTables tables = ApplyHiding(dataset, hiding, flags.seed);
      WriteCsvFile(dir / "vault.csv", tables.vault, written);
      WriteCsvFile(dir / "working.csv", tables.working, written);
    }
  } else if (flags.strategy == "separate") {
    std::vector<ColumnSubset> minimal_risky;
    if (flags.bundle.empty()) {
      minimal_risky = Analyze(dataset, config).minimal_risky;
    } else {
      const AnalysisBundle bundle = ParseBundle(ReadFile(flags.bundle));
      if (bundle.dataset.digest != dataset.Digest()) {
        throw Error(ErrorCode::kSchemaMismatch, "bundle was computed on a different dataset");
      }
      for (const auto& names : bundle.minimal_risky) minimal_risky.push_back(dataset.SubsetOf(names));
    }
    const SeparationPlan separation =
        PlanSeparation(minimal_risky, dataset.ColumnsOfClass(ColumnClass::kQuasi));
    plan = SeparationPlanToJson(separation, dataset);
    plan["violations"] = VerifySeparation(separation, minimal_risky).size();
    ordered_json profiles = ordered_json::array();
    for (const auto& profile : ProfileSeparation(dataset, separation, config)) {
      profiles.push_back(ProfileToJson(profile));
    }
    plan["table_profiles"] = std::move(profiles);
    if (flags.apply) {
      const SeparatedTables tables = ApplySeparation(dataset, separation, flags.seed);
      WriteCsvFile(dir / "rest.csv", tables.rest, written);
      WriteCsvFile(dir / "link.csv", tables.link, written);
      for (std::size_t g = 0; g < tables.groups.size(); ++g) {
        WriteCsvFile(dir / ("group_" + std::to_string(g + 1) + ".csv"), tables.groups[g], written);
      }
    }
  } else if (flags.strategy == "minimize") {
    const MinimizationPlan minimization = PlanMinimization(dataset, config);
    plan = MinimizationPlanToJson(minimization);
    if (flags.apply) {
      WriteCsvFile(dir / "minimized.csv", ApplyMinimization(dataset, minimization), written);
    }
  } else {
    const AbstractionPlan abstraction =
        RecommendAbstraction(dataset, ResolveAux(dataset, config.aux_columns),
                             EffectivePolicy(config, dataset), config.log_base);
    plan = AbstractionPlanToJson(abstraction);
    if (flags.apply) {
      WriteCsvFile(dir / "abstracted.csv", ApplyAbstraction(dataset, abstraction), written);
    }
  }

  ordered_json doc = ordered_json::object();
  doc["strategy"] = flags.strategy;
  doc["plan"] = plan;
  doc["written"] = written;
  if (flags.format == "json") {
    Emit(flags, JsonText(doc), out);
  } else {
    std::ostringstream table;
    table << "plan " << flags.strategy << "\n";
    for (const auto& [key, value] : plan.items()) {
      table << "  " << key << ": " << value.dump() << "\n";
    }
    for (const auto& path : written) table << "  wrote " << path << "\n";
    Emit(flags, table.str(), out);
  }
  return kExitOk;
}

int RunWhatIf(const Flags& flags, std::ostream& out) {
  const AnalysisConfig config = ConfigFromFlags(flags);
  const Dataset dataset = LoadInput(flags);
  Transform transform;
  if (flags.transform == "generalize") {
    if (flags.column.empty()) throw UsageError("--transform generalize needs --column");
    transform = GeneralizeTransform{flags.column, flags.level};
  } else if (flags.transform == "minimize") {
    transform = MinimizeTransform{};
  } else if (flags.transform == "hide") {
    transform = HideTransform{flags.seed};
  } else if (flags.transform == "separate") {
    transform = SeparateTransform{};
  } else {
    const fs::path schema_path(flags.schema);
    const SchemaConfig schema = ParseSchemaConfig(ReadFile(schema_path), schema_path.parent_path());
    if (!schema.link) {
      throw Error(ErrorCode::kInvalidConfig, "schema config has no \"link\" section");
    }
    transform = LinkTransform{
        LoadDatasetFiles(schema.link->input, schema.link->schema, LoadOptions{flags.fold_case}),
        schema.link->spec};
  }
  const WhatIfResult result = EvaluateWhatIf(dataset, transform, config);
  if (flags.format == "json") {
    Emit(flags, JsonText(WhatIfToJson(result, false)), out);
  } else {
    Emit(flags,
         "whatif " + result.transform + "\n" + ProfileLine("  before: ", result.before) +
             ProfileLine("  after:  ", result.after),
         out);
  }
  return kExitOk;
}

int RunServe(const Flags& flags, std::ostream& out, std::ostream& err) {
  ServiceOptions options;
  options.max_rows = flags.max_rows;
  options.max_columns = flags.max_columns;
  options.session_ttl = std::chrono::seconds(flags.ttl);
  options.static_dir = flags.static_dir;
  options.analysis_threads = flags.threads;
  HttpService service(options);
  out << "listening on http://" << flags.host << ":" << flags.port << "\n" << std::flush;
  if (!service.Listen(flags.host, flags.port)) {
    err << "error: cannot listen on " << flags.host << ":" << flags.port << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-based re-identification risk analyzer", "entropylens"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Flags flags;

  CLI::App* analyze = app.add_subcommand("analyze", "Find risky column combinations");
  AddDatasetOptions(analyze, flags);
  AddAnalysisOptions(analyze, flags);
  AddOutputOptions(analyze, flags);
  analyze->add_flag("--fail-on-risk", flags.fail_on_risk, "Exit 2 when any risky set is found")
      ->envname(Env("FAIL_ON_RISK"));

  CLI::App* link = app.add_subcommand("link", "Attach the configured linked table, then analyze");
  AddDatasetOptions(link, flags);
  AddAnalysisOptions(link, flags);
  AddOutputOptions(link, flags);
  link->add_flag("--fail-on-risk", flags.fail_on_risk, "Exit 2 when any risky set is found")
      ->envname(Env("FAIL_ON_RISK"));

  CLI::App* plan = app.add_subcommand("plan", "Plan one privacy strategy");
  plan->add_option("strategy", flags.strategy, "hide, separate, minimize or abstract")
      ->required()
      ->check(CLI::IsMember({"hide", "separate", "minimize", "abstract"}));
  AddDatasetOptions(plan, flags);
  AddAnalysisOptions(plan, flags);
  AddOutputOptions(plan, flags);
  plan->add_flag("--apply", flags.apply, "Write the transformed tables as CSV");
  plan->add_option("--out-dir", flags.out_dir, "Directory for --apply output")
      ->envname(Env("OUT_DIR"))
      ->capture_default_str();
  plan->add_option("--seed", flags.seed, "Seed for surrogate identifiers")->envname(Env("SEED"));
  plan->add_option("--bundle", flags.bundle, "Take minimal risky sets from this bundle");

  CLI::App* whatif = app.add_subcommand("whatif", "Apply one transform and compare risk");
  AddDatasetOptions(whatif, flags);
  AddAnalysisOptions(whatif, flags);
  AddOutputOptions(whatif, flags);
  whatif->add_option("--transform", flags.transform, "Transform name")
      ->required()
      ->check(CLI::IsMember(TransformNames()));
  whatif->add_option("--column", flags.column, "Column to generalize");
  whatif->add_option("--level", flags.level, "Generalization level");
  whatif->add_option("--seed", flags.seed, "Seed for surrogate identifiers")->envname(Env("SEED"));

  CLI::App* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--host", flags.host, "Bind address")->envname(Env("HOST"))->capture_default_str();
  serve->add_option("--port", flags.port, "Port")->envname(Env("PORT"))->capture_default_str();
  serve->add_option("--max-rows", flags.max_rows, "Upload row cap")
      ->envname(Env("MAX_ROWS"))
      ->capture_default_str();
  serve->add_option("--max-columns", flags.max_columns, "Upload column cap")
      ->envname(Env("MAX_COLUMNS"))
      ->capture_default_str();
  serve->add_option("--ttl", flags.ttl, "Idle session lifetime in seconds")
      ->envname(Env("TTL"))
      ->capture_default_str();
  serve->add_option("--static-dir", flags.static_dir, "Dashboard assets to serve")
      ->envname(Env("STATIC_DIR"));
  serve->add_option("--threads", flags.threads, "Worker threads per analysis")
      ->envname(Env("THREADS"));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return RunAnalyze(flags, false, out);
    if (link->parsed()) return RunAnalyze(flags, true, out);
    if (plan->parsed()) return RunPlan(flags, out);
    if (whatif->parsed()) return RunWhatIf(flags, out);
    return RunServe(flags, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace entropylens::cli
