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

#include "entropylens/report_io.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "entropylens/error.h"

namespace entropylens {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedDocument, message);
}

ordered_json Number(double value) { return RoundForReport(value); }

ordered_json OptionalNumber(const std::optional<double>& value) {
  return value ? Number(*value) : ordered_json(nullptr);
}

ordered_json TriggerToJson(const RiskTrigger& trigger) {
  ordered_json out = ordered_json::object();
  if (trigger.kind == RiskTrigger::Kind::kAnyRecord) {
    out["kind"] = "any_record";
  } else {
    out["kind"] = "fraction_at_least";
    out["tau"] = Number(trigger.tau);
  }
  return out;
}

std::string JoinNames(const NameSet& names, std::string_view separator = ", ") {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += separator;
    out += names[i];
  }
  return out;
}

// Parsing helpers. Every type or key problem becomes MalformedDocument.

const ordered_json& Field(const ordered_json& object, const char* key) {
  if (!object.is_object()) Malformed(std::string("expected an object holding \"") + key + "\"");
  auto it = object.find(key);
  if (it == object.end()) Malformed(std::string("missing \"") + key + "\"");
  return *it;
}

std::string Text(const ordered_json& value, const char* what) {
  if (!value.is_string()) Malformed(std::string(what) + " must be a string");
  return value.get<std::string>();
}

double Real(const ordered_json& value, const char* what) {
  if (!value.is_number()) Malformed(std::string(what) + " must be a number");
  return value.get<double>();
}

std::optional<double> OptionalReal(const ordered_json& value, const char* what) {
  if (value.is_null()) return std::nullopt;
  return Real(value, what);
}

bool Flag(const ordered_json& value, const char* what) {
  if (!value.is_boolean()) Malformed(std::string(what) + " must be a boolean");
  return value.get<bool>();
}

std::size_t Count(const ordered_json& value, const char* what) {
  if (!value.is_number_unsigned()) Malformed(std::string(what) + " must be a non-negative integer");
  return value.get<std::size_t>();
}

const ordered_json& Array(const ordered_json& value, const char* what) {
  if (!value.is_array()) Malformed(std::string(what) + " must be an array");
  return value;
}

NameSet Names(const ordered_json& value, const char* what) {
  NameSet out;
  for (const ordered_json& name : Array(value, what)) out.push_back(Text(name, what));
  return out;
}

std::vector<NameSet> NameSets(const ordered_json& value, const char* what) {
  std::vector<NameSet> out;
  for (const ordered_json& set : Array(value, what)) out.push_back(Names(set, what));
  return out;
}

void CheckVersion(const ordered_json& doc) {
  const std::string version = Text(Field(doc, "version"), "version");
  char* end = nullptr;
  const long major = std::strtol(version.c_str(), &end, 10);
  if (end == version.c_str() || (*end != '\0' && *end != '.')) {
    Malformed("version \"" + version + "\" is not of the form MAJOR.MINOR");
  }
  const long supported = std::strtol(std::string(kBundleVersion).c_str(), nullptr, 10);
  if (major != supported) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "bundle version " + version + " is not readable by version " +
                    std::string(kBundleVersion));
  }
}

AnalysisBundle BundleFromJson(const ordered_json& doc) {
  AnalysisBundle bundle;
  bundle.version = Text(Field(doc, "version"), "version");
  bundle.tool_version = Text(Field(doc, "tool_version"), "tool_version");

  const ordered_json& dataset = Field(doc, "dataset");
  bundle.dataset.digest = Text(Field(dataset, "digest"), "digest");
  bundle.dataset.n_records = Count(Field(dataset, "n_records"), "n_records");
  for (const ordered_json& column : Array(Field(dataset, "columns"), "columns")) {
    ColumnFingerprint fp;
    fp.name = Text(Field(column, "name"), "column name");
    auto column_class = ParseColumnClass(Text(Field(column, "class"), "column class"));
    if (!column_class) Malformed("unknown column class for '" + fp.name + "'");
    fp.column_class = *column_class;
    fp.consented = Flag(Field(column, "consented"), "consented");
    bundle.dataset.columns.push_back(std::move(fp));
  }

  const ordered_json& config = Field(doc, "config");
  bundle.config.epsilon0 = Real(Field(config, "epsilon0"), "epsilon0");
  bundle.config.k_max = Count(Field(config, "k_max"), "k_max");
  bundle.config.aux_columns = Names(Field(config, "aux_columns"), "aux_columns");
  auto base = ParseLogBase(Text(Field(config, "log_base"), "log_base"));
  if (!base) Malformed("log_base must be \"2\" or \"e\"");
  bundle.config.log_base = *base;
  const ordered_json& trigger = Field(config, "risk_trigger");
  const std::string kind = Text(Field(trigger, "kind"), "risk_trigger kind");
  if (kind == "any_record") {
    bundle.config.trigger = RiskTrigger::AnyRecord();
  } else if (kind == "fraction_at_least") {
    bundle.config.trigger = RiskTrigger::FractionAtLeast(Real(Field(trigger, "tau"), "tau"));
  } else {
    Malformed("unknown risk_trigger kind \"" + kind + "\"");
  }

  for (const ordered_json& subset : Array(Field(doc, "subsets"), "subsets")) {
    SubsetEntry entry;
    entry.columns = Names(Field(subset, "columns"), "subset columns");
    entry.min_epsilon = OptionalReal(Field(subset, "min_epsilon"), "min_epsilon");
    entry.mean_epsilon = OptionalReal(Field(subset, "mean_epsilon"), "mean_epsilon");
    entry.at_risk_fraction = OptionalReal(Field(subset, "at_risk_fraction"), "at_risk_fraction");
    entry.risky = Flag(Field(subset, "risky"), "risky");
    entry.by_implication = Flag(Field(subset, "by_implication"), "by_implication");
    bundle.subsets.push_back(std::move(entry));
  }
  bundle.minimal_risky = NameSets(Field(doc, "minimal_risky"), "minimal_risky");
  std::map<NameSet, std::size_t> index_of;
  for (std::size_t i = 0; i < bundle.minimal_risky.size(); ++i) {
    index_of.emplace(bundle.minimal_risky[i], i);
  }

  const ordered_json& per_record = Field(doc, "per_record");
  if (!per_record.is_object()) Malformed("per_record must be an object");
  for (const auto& [key, sets] : per_record.items()) {
    char* end = nullptr;
    const unsigned long id = std::strtoul(key.c_str(), &end, 10);
    if (key.empty() || *end != '\0') Malformed("per_record key \"" + key + "\" is not a record id");
    std::vector<std::size_t> indices;
    for (const NameSet& names : NameSets(sets, "per_record")) {
      auto it = index_of.find(names);
      if (it == index_of.end()) {
        Malformed("per_record set {" + JoinNames(names) + "} is not in minimal_risky");
      }
      indices.push_back(it->second);
    }
    std::sort(indices.begin(), indices.end());
    bundle.per_record[static_cast<RecordId>(id)] = std::move(indices);
  }
  for (const ordered_json& id : Array(Field(doc, "already_identified"), "already_identified")) {
    bundle.already_identified.push_back(static_cast<RecordId>(Count(id, "record id")));
  }
  const ordered_json& plans = Field(doc, "plans");
  if (!plans.is_object()) Malformed("plans must be an object");
  bundle.plans = plans;
  return bundle;
}

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string Pad(std::string text, std::size_t width) {
  // Width in code points, so that "ε" counts once.
  std::size_t points = 0;
  for (unsigned char c : text) points += (c & 0xC0) != 0x80;
  if (points < width) text.append(width - points, ' ');
  return text;
}

void WriteTable(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  auto points = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  };
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], points(row[i]));
  }
  for (const auto& row : rows) {
    std::string line = "  ";
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 < row.size() ? Pad(row[i], widths[i] + 2) : row[i];
    }
    out << line << "\n";
  }
}

std::string NamesInBraces(const NameSet& names) { return "{" + JoinNames(names) + "}"; }

void WriteRecommendations(std::ostream& out, const ordered_json& plans) {
  std::vector<std::vector<std::string>> rows;
  auto names = [](const ordered_json& list) {
    NameSet out;
    for (const auto& n : list) out.push_back(n.get<std::string>());
    return out;
  };
  if (plans.contains("hide")) {
    const auto& hide = plans["hide"];
    rows.push_back({"hide", hide.value("no_op", false)
                                ? "no direct identifiers to hide"
                                : "move " + JoinNames(names(hide["vault_columns"])) +
                                      " to a vault keyed by " +
                                      hide["surrogate_column"].get<std::string>()});
  }
  if (plans.contains("separate")) {
    const auto& separate = plans["separate"];
    std::string text;
    for (const auto& group : separate["groups"]) {
      if (!text.empty()) text += " | ";
      text += NamesInBraces(names(group));
    }
    text = "tables " + (text.empty() ? std::string("(none)") : text);
    if (!separate["unseparable"].empty()) {
      text += "; generalize or hide " + JoinNames(names(separate["unseparable"]));
    }
    rows.push_back({"separate", text});
  }
  if (plans.contains("minimize")) {
    const auto& minimize = plans["minimize"];
    rows.push_back({"minimize", minimize["strip_columns"].empty()
                                    ? "every column is consented"
                                    : "strip " + JoinNames(names(minimize["strip_columns"]))});
  }
  if (plans.contains("abstract")) {
    const auto& abstract = plans["abstract"];
    std::string text;
    for (const auto& [column, level] : abstract["assignments"].items()) {
      if (!text.empty()) text += ", ";
      text += column + " -> level " + std::to_string(level.get<std::size_t>());
    }
    if (text.empty()) text = "no generalization needed";
    text += abstract["target_met"].get<bool>() ? " (target met, min ε " : " (target missed, min ε ";
    text += Fixed(abstract["achieved"].get<double>()) + ")";
    rows.push_back({"abstract", text});
  }
  if (rows.empty()) {
    out << "  (none)\n";
  } else {
    WriteTable(out, rows);
  }
}

std::string RenderTable(const AnalysisBundle& bundle) {
  std::ostringstream out;
  const auto& config = bundle.config;
  out << "EntropyLens " << bundle.tool_version << " risk report\n";
  out << "  dataset  " << bundle.dataset.digest.substr(0, 16) << "  " << bundle.dataset.n_records
      << " records, " << bundle.dataset.columns.size() << " columns\n";
  out << "  config   ε₀ = " << RoundForReport(config.epsilon0) << ", k_max = " << config.k_max
      << ", aux = " << NamesInBraces(config.aux_columns) << ", log base "
      << LogBaseName(config.log_base) << ", trigger ";
  if (config.trigger.kind == RiskTrigger::Kind::kAnyRecord) {
    out << "any record\n";
  } else {
    out << "fraction >= " << RoundForReport(config.trigger.tau) << "\n";
  }

  out << "\nMinimal risky combinations\n";
  if (bundle.minimal_risky.empty()) {
    out << "  no risky combinations at ε₀ = " << RoundForReport(config.epsilon0) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows{{"columns", "min ε", "mean ε", "at risk"}};
    for (const auto& names : bundle.minimal_risky) {
      auto it = std::find_if(bundle.subsets.begin(), bundle.subsets.end(),
                             [&](const SubsetEntry& e) { return e.columns == names; });
      std::vector<std::string> row{NamesInBraces(names), "-", "-", "-"};
      if (it != bundle.subsets.end() && it->min_epsilon) {
        row = {NamesInBraces(names), Fixed(*it->min_epsilon), Fixed(*it->mean_epsilon),
               Fixed(*it->at_risk_fraction)};
      }
      rows.push_back(std::move(row));
    }
    WriteTable(out, rows);
  }

  out << "\nWorst records\n";
  std::vector<std::pair<RecordId, const std::vector<std::size_t>*>> records;
  for (const auto& [id, sets] : bundle.per_record) records.emplace_back(id, &sets);
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.second->size() > b.second->size();
  });
  constexpr std::size_t kWorstRecords = 10;
  if (records.empty()) {
    out << "  no record is singled out by a risky combination\n";
  } else {
    std::vector<std::vector<std::string>> rows{{"record", "risky combinations"}};
    for (std::size_t i = 0; i < records.size() && i < kWorstRecords; ++i) {
      std::string sets;
      for (std::size_t index : *records[i].second) {
        if (!sets.empty()) sets += " ";
        sets += NamesInBraces(bundle.minimal_risky[index]);
      }
      rows.push_back({std::to_string(records[i].first), sets});
    }
    WriteTable(out, rows);
    if (records.size() > kWorstRecords) {
      out << "  ... " << records.size() - kWorstRecords << " more\n";
    }
  }
  if (!bundle.already_identified.empty()) {
    out << "  already identified by aux columns: " << bundle.already_identified.size()
        << " record(s)\n";
  }

  out << "\nRecommendations\n";
  WriteRecommendations(out, bundle.plans);
  return out.str();
}

// Every section except the per_record entries, which are left empty.
ordered_json BundleHead(const AnalysisBundle& bundle) {
  ordered_json doc = ordered_json::object();
  doc["version"] = bundle.version;
  doc["tool_version"] = bundle.tool_version;

  ordered_json dataset = ordered_json::object();
  dataset["digest"] = bundle.dataset.digest;
  dataset["n_records"] = bundle.dataset.n_records;
  dataset["columns"] = ordered_json::array();
  for (const auto& column : bundle.dataset.columns) {
    ordered_json c = ordered_json::object();
    c["name"] = column.name;
    c["class"] = ColumnClassName(column.column_class);
    c["consented"] = column.consented;
    dataset["columns"].push_back(std::move(c));
  }
  doc["dataset"] = std::move(dataset);

  doc["config"] = ConfigToJson(bundle.config);

  doc["subsets"] = ordered_json::array();
  for (const auto& entry : bundle.subsets) {
    ordered_json s = ordered_json::object();
    s["columns"] = entry.columns;
    s["min_epsilon"] = OptionalNumber(entry.min_epsilon);
    s["mean_epsilon"] = OptionalNumber(entry.mean_epsilon);
    s["at_risk_fraction"] = OptionalNumber(entry.at_risk_fraction);
    s["risky"] = entry.risky;
    s["by_implication"] = entry.by_implication;
    doc["subsets"].push_back(std::move(s));
  }
  doc["minimal_risky"] = bundle.minimal_risky;
  doc["per_record"] = ordered_json::object();
  doc["already_identified"] = bundle.already_identified;
  doc["plans"] = bundle.plans;
  return doc;
}

std::string Reindent(const std::string& text, std::size_t spaces) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    out += c;
    if (c == '\n') out.append(spaces, ' ');
  }
  return out;
}

// Same bytes as dump(2) of `head` with per_record filled from `bundle`,
// without materializing the per_record tree.
std::string RenderWithPerRecord(const ordered_json& head, const AnalysisBundle& bundle) {
  std::vector<std::string> set_text;
  for (const auto& names : bundle.minimal_risky) {
    set_text.push_back("      " + Reindent(ordered_json(names).dump(2), 6));
  }
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : head.items()) {
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += ordered_json(key).dump() + ": ";
    if (key != "per_record" || bundle.per_record.empty()) {
      out += Reindent(value.dump(2), 2);
      continue;
    }
    out += "{";
    bool first_record = true;
    for (const auto& [record, indices] : bundle.per_record) {
      out += first_record ? "\n    \"" : ",\n    \"";
      first_record = false;
      out += std::to_string(record) + "\": [";
      for (std::size_t i = 0; i < indices.size(); ++i) {
        out += i ? ",\n" : "\n";
        out += set_text[indices[i]];
      }
      out += indices.empty() ? "]" : "\n    ]";
    }
    out += "\n  }";
  }
  out += first ? "}\n" : "\n}\n";
  return out;
}

}  // namespace

double RoundForReport(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::strtod(buf, nullptr);
}

DatasetFingerprint Fingerprint(const Dataset& dataset) {
  DatasetFingerprint fp;
  fp.digest = dataset.Digest();
  fp.n_records = dataset.num_records();
  for (const auto& meta : dataset.columns()) {
    fp.columns.push_back({meta.name, meta.column_class, meta.consented});
  }
  return fp;
}

AnalysisBundle MakeBundle(const Dataset& dataset, const RiskReport& report) {
  AnalysisBundle bundle;
  bundle.dataset = Fingerprint(dataset);
  bundle.config.epsilon0 = report.policy.epsilon0;
  bundle.config.k_max = report.policy.max_subset_size;
  bundle.config.aux_columns = dataset.NamesOf(report.aux.known_columns);
  bundle.config.trigger = report.policy.trigger;
  bundle.config.log_base = report.log_base;

  for (const auto& result : report.per_subset) {
    SubsetEntry entry;
    entry.columns = SortedNames(dataset, result.subset);
    if (result.summary) {
      entry.min_epsilon = result.summary->min_epsilon;
      entry.mean_epsilon = result.summary->mean_epsilon;
      entry.at_risk_fraction = result.summary->at_risk_fraction;
    }
    entry.risky = result.risky;
    entry.by_implication = result.by_implication;
    bundle.subsets.push_back(std::move(entry));
  }
  std::sort(bundle.subsets.begin(), bundle.subsets.end(),
            [](const SubsetEntry& a, const SubsetEntry& b) { return a.columns < b.columns; });
  std::vector<std::pair<NameSet, ColumnSubset>> minimal;
  for (const auto& subset : report.minimal_risky) {
    minimal.emplace_back(SortedNames(dataset, subset), subset);
  }
  std::sort(minimal.begin(), minimal.end());
  std::map<ColumnSubset, std::size_t> index_of;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    bundle.minimal_risky.push_back(minimal[i].first);
    index_of.emplace(minimal[i].second, i);
  }
  for (const auto& [record, sets] : report.per_record) {
    std::vector<std::size_t>& indices = bundle.per_record[record];
    for (const auto& subset : sets) {
      auto it = index_of.find(subset);
      if (it == index_of.end()) {
        throw Error(ErrorCode::kMalformedDocument,
                    "per-record set {" + JoinNames(SortedNames(dataset, subset)) +
                        "} is not a minimal risky set");
      }
      indices.push_back(it->second);
    }
    std::sort(indices.begin(), indices.end());
  }
  bundle.already_identified = report.already_identified;
  return bundle;
}

AnalysisBundle AnalyzeToBundle(const Dataset& dataset, const AnalysisConfig& config) {
  const RiskReport report = Analyze(dataset, config);
  AnalysisBundle bundle = MakeBundle(dataset, report);
  bundle.plans["hide"] = HidingPlanToJson(PlanHiding(dataset));
  bundle.plans["separate"] = SeparationPlanToJson(
      PlanSeparation(report.minimal_risky, report.quasi_columns), dataset);
  bundle.plans["minimize"] = MinimizationPlanToJson(PlanMinimization(dataset, config));
  return bundle;
}

ordered_json BundleToJson(const AnalysisBundle& bundle) {
  ordered_json doc = BundleHead(bundle);
  auto& per_record = static_cast<ordered_json::object_t::Container&>(
      doc["per_record"].get_ref<ordered_json::object_t&>());
  for (const auto& [record, indices] : bundle.per_record) {
    ordered_json sets = ordered_json::array();
    for (std::size_t index : indices) sets.push_back(bundle.minimal_risky[index]);
    per_record.emplace_back(std::to_string(record), std::move(sets));
  }
  return doc;
}

std::string RenderReport(const AnalysisBundle& bundle, ReportFormat format) {
  if (format == ReportFormat::kTable) return RenderTable(bundle);
  return RenderWithPerRecord(BundleHead(bundle), bundle);
}

AnalysisBundle ParseBundle(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    Malformed(std::string("bundle is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Malformed("bundle must be a JSON object");
  CheckVersion(doc);
  return BundleFromJson(doc);
}

std::string CanonicalRiskSummary(const AnalysisBundle& bundle) {
  ordered_json head = ordered_json::object();
  head["minimal_risky"] = bundle.minimal_risky;
  head["per_record"] = ordered_json::object();
  head["already_identified"] = bundle.already_identified;
  return RenderWithPerRecord(head, bundle);
}

ordered_json ConfigToJson(const AnalysisConfig& config) {
  ordered_json out = ordered_json::object();
  out["epsilon0"] = Number(config.epsilon0);
  out["k_max"] = config.k_max;
  out["aux_columns"] = config.aux_columns;
  out["log_base"] = LogBaseName(config.log_base);
  out["risk_trigger"] = TriggerToJson(config.trigger);
  return out;
}

AnalysisConfig ConfigFromJson(const json& body, AnalysisConfig config) {
  auto invalid = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidConfig, message);
  };
  if (!body.is_object()) invalid("config must be a JSON object");
  for (const auto& [key, value] : body.items()) {
    if (key == "epsilon0") {
      if (!value.is_number()) invalid("epsilon0 must be a number");
      config.epsilon0 = value.get<double>();
    } else if (key == "k_max") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        invalid("k_max must be a positive integer");
      }
      config.k_max = value.get<std::size_t>();
    } else if (key == "aux_columns") {
      if (!value.is_array()) invalid("aux_columns must be an array of names");
      config.aux_columns.clear();
      for (const auto& name : value) {
        if (!name.is_string()) invalid("aux_columns must be an array of names");
        config.aux_columns.push_back(name.get<std::string>());
      }
    } else if (key == "log_base") {
      auto base = value.is_string() ? ParseLogBase(value.get<std::string>()) : std::nullopt;
      if (!base) invalid("log_base must be \"2\" or \"e\"");
      config.log_base = *base;
    } else if (key == "risk_trigger") {
      const std::string kind = value.is_object() && value.contains("kind") &&
                                       value["kind"].is_string()
                                   ? value["kind"].get<std::string>()
                                   : "";
      if (kind == "any_record") {
        config.trigger = RiskTrigger::AnyRecord();
      } else if (kind == "fraction_at_least") {
        if (!value.contains("tau") || !value["tau"].is_number()) {
          invalid("fraction_at_least needs a numeric tau");
        }
        config.trigger = RiskTrigger::FractionAtLeast(value["tau"].get<double>());
      } else {
        invalid("risk_trigger kind must be any_record or fraction_at_least");
      }
    } else {
      invalid("unknown config key \"" + key + "\"");
    }
  }
  ValidateConfig(config);
  return config;
}

ordered_json ProfileToJson(const RiskProfile& profile) {
  ordered_json out = ordered_json::object();
  out["min_epsilon"] = Number(profile.min_epsilon);
  out["at_risk_fraction"] = Number(profile.at_risk_fraction);
  out["minimal_risky"] = profile.minimal_risky;
  return out;
}

ordered_json HidingPlanToJson(const HidingPlan& plan) {
  ordered_json out = ordered_json::object();
  out["vault_columns"] = plan.vault_columns;
  out["surrogate_column"] = plan.surrogate_column;
  out["working_columns"] = plan.working_columns;
  out["no_op"] = plan.no_op;
  return out;
}

ordered_json SeparationPlanToJson(const SeparationPlan& plan, const Dataset& dataset) {
  ordered_json out = ordered_json::object();
  out["groups"] = ordered_json::array();
  for (const auto& group : plan.groups) out["groups"].push_back(SortedNames(dataset, group));
  out["unseparable"] = ordered_json::array();
  for (std::size_t c : plan.unseparable) out["unseparable"].push_back(dataset.column(c).name);
  return out;
}

ordered_json MinimizationPlanToJson(const MinimizationPlan& plan) {
  ordered_json out = ordered_json::object();
  out["strip_columns"] = plan.strip_columns;
  out["retained"] = plan.retained;
  out["before"] = ProfileToJson(plan.before);
  out["after"] = ProfileToJson(plan.after);
  return out;
}

ordered_json AbstractionPlanToJson(const AbstractionPlan& plan) {
  ordered_json out = ordered_json::object();
  out["assignments"] = ordered_json::object();
  for (const auto& [column, level] : plan.assignments) out["assignments"][column] = level;
  out["steps"] = ordered_json::array();
  for (const auto& step : plan.steps) {
    ordered_json s = ordered_json::object();
    s["column"] = step.column;
    s["level"] = step.level;
    s["min_epsilon"] = Number(step.min_epsilon);
    out["steps"].push_back(std::move(s));
  }
  out["achieved"] = Number(plan.achieved);
  out["target_met"] = plan.target_met;
  return out;
}

ordered_json WhatIfToJson(const WhatIfResult& result, bool committed) {
  ordered_json out = ordered_json::object();
  out["transform"] = result.transform;
  out["before"] = ProfileToJson(result.before);
  out["after"] = ProfileToJson(result.after);
  out["committed"] = committed;
  return out;
}

}  // namespace entropylens
