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

#ifndef ENTROPYLENS_REPORT_IO_H_
#define ENTROPYLENS_REPORT_IO_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "entropylens/analysis.h"
#include "entropylens/dataset.h"
#include "entropylens/risky_comb.h"
#include "entropylens/strategy.h"
#include "entropylens/transforms.h"

namespace entropylens {

inline constexpr std::string_view kBundleVersion = "1.0";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct ColumnFingerprint {
  std::string name;
  ColumnClass column_class = ColumnClass::kQuasi;
  bool consented = true;

  friend bool operator==(const ColumnFingerprint&, const ColumnFingerprint&) = default;
};

struct DatasetFingerprint {
  std::string digest;
  std::size_t n_records = 0;
  std::vector<ColumnFingerprint> columns;  // schema order

  friend bool operator==(const DatasetFingerprint&, const DatasetFingerprint&) = default;
};

struct SubsetEntry {
  std::vector<std::string> columns;  // sorted by name
  // Absent for subsets that are risky by implication.
  std::optional<double> min_epsilon;
  std::optional<double> mean_epsilon;
  std::optional<double> at_risk_fraction;
  bool risky = false;
  bool by_implication = false;

  friend bool operator==(const SubsetEntry&, const SubsetEntry&) = default;
};

using NameSet = std::vector<std::string>;

// Serializable form of one analysis: everything is held by column name so a
// bundle can be parsed back without the dataset.
struct AnalysisBundle {
  std::string version{kBundleVersion};
  std::string tool_version{kToolVersion};
  DatasetFingerprint dataset;
  // Echo of the effective config; `threads` is not serialized.
  AnalysisConfig config;
  std::vector<SubsetEntry> subsets;  // sorted by column names
  std::vector<NameSet> minimal_risky;
  // Indices into minimal_risky, ascending.
  std::map<RecordId, std::vector<std::size_t>> per_record;
  std::vector<RecordId> already_identified;
  // Strategy plans keyed by strategy name, in insertion order.
  nlohmann::ordered_json plans = nlohmann::ordered_json::object();

  friend bool operator==(const AnalysisBundle&, const AnalysisBundle&) = default;
};

enum class ReportFormat { kJson, kTable };

DatasetFingerprint Fingerprint(const Dataset& dataset);

// Bundle for a report computed on `dataset`; the config echo is taken from
// the report's effective policy.
AnalysisBundle MakeBundle(const Dataset& dataset, const RiskReport& report);

// Analysis plus the cheap strategy recommendations (hide, separate,
// minimize) that every analysis carries. Shared by the CLI and the service.
AnalysisBundle AnalyzeToBundle(const Dataset& dataset, const AnalysisConfig& config);

// JSON output ends with a newline. Floats carry 12 significant digits.
std::string RenderReport(const AnalysisBundle& bundle, ReportFormat format);

// Throws MalformedDocument or SchemaVersionMismatch.
AnalysisBundle ParseBundle(std::string_view text);

nlohmann::ordered_json BundleToJson(const AnalysisBundle& bundle);

// Minimal risky sets, per-record sets and already-identified records: the
// part of a bundle that must not depend on how the search was run.
std::string CanonicalRiskSummary(const AnalysisBundle& bundle);

// 12 significant digits.
double RoundForReport(double value);

// Config echo as it appears in bundles.
nlohmann::ordered_json ConfigToJson(const AnalysisConfig& config);
// Overrides the fields present in `body`, then validates. Throws
// InvalidConfig or InvalidEpsilon0.
AnalysisConfig ConfigFromJson(const nlohmann::json& body, AnalysisConfig config = {});

// Plan and profile serializers.
nlohmann::ordered_json ProfileToJson(const RiskProfile& profile);
nlohmann::ordered_json HidingPlanToJson(const HidingPlan& plan);
nlohmann::ordered_json SeparationPlanToJson(const SeparationPlan& plan, const Dataset& dataset);
nlohmann::ordered_json MinimizationPlanToJson(const MinimizationPlan& plan);
nlohmann::ordered_json AbstractionPlanToJson(const AbstractionPlan& plan);
nlohmann::ordered_json WhatIfToJson(const WhatIfResult& result, bool committed);

}  // namespace entropylens

#endif  // ENTROPYLENS_REPORT_IO_H_
