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

#include "entropylens/analysis.h"

#include <algorithm>
#include <functional>

#include "entropylens/error.h"
#include "entropylens/partition.h"

namespace entropylens {
namespace {

// Visits the partition of every quasi subset of exactly `size` columns
// (together with the aux columns), refining prefix partitions on the way.
void ForEachSubsetPartition(const PartitionIndex& baseline, const AuxModel& aux,
                            const ColumnSubset& quasi, std::size_t size,
                            const std::function<void(const PartitionIndex&)>& visit) {
  const auto columns = quasi.members();
  std::function<void(const PartitionIndex&, std::size_t, std::size_t)> descend =
      [&](const PartitionIndex& prefix, std::size_t start, std::size_t depth) {
        if (depth == size) {
          visit(prefix);
          return;
        }
        for (std::size_t i = start; i + (size - depth) <= columns.size(); ++i) {
          if (aux.known_columns.contains(columns[i])) {
            descend(prefix, i + 1, depth + 1);
          } else {
            descend(RefinePartition(prefix, columns[i]), i + 1, depth + 1);
          }
        }
      };
  descend(baseline, 0, 0);
}

struct Extremes {
  double min_epsilon = 1.0;
  std::size_t at_risk = 0;
};

Extremes ScanMaximalSubsets(const Dataset& dataset, const AuxModel& aux, std::size_t k_max,
                            double epsilon0, LogBase base) {
  const ColumnSubset quasi = dataset.ColumnsOfClass(ColumnClass::kQuasi);
  const PartitionIndex baseline = BuildPartition(dataset, aux.known_columns);
  const std::size_t n = dataset.num_records();
  std::vector<char> assessable(n, 0);
  for (RecordId r = 0; r < n; ++r) assessable[r] = baseline.block_size_of(r) > 1;
  if (std::none_of(assessable.begin(), assessable.end(), [](char a) { return a != 0; })) {
    return {0.0, 0};
  }
  Extremes out;
  if (quasi.empty() || k_max == 0) return out;
  std::vector<char> at_risk(n, 0);
  ForEachSubsetPartition(baseline, aux, quasi, std::min(k_max, quasi.size()),
                         [&](const PartitionIndex& partition) {
                           for (RecordId r = 0; r < n; ++r) {
                             if (!assessable[r]) continue;
                             const IppValue ipp = IppFromBlockSizes(
                                 partition.block_size_of(r), baseline.block_size_of(r), base);
                             out.min_epsilon = std::min(out.min_epsilon, ipp.epsilon);
                             if (ipp.epsilon <= epsilon0) at_risk[r] = 1;
                           }
                         });
  out.at_risk = static_cast<std::size_t>(std::count(at_risk.begin(), at_risk.end(), 1));
  return out;
}

AuxModel ResolveAuxLenient(const Dataset& dataset, const std::vector<std::string>& names) {
  std::vector<std::size_t> members;
  for (const auto& name : names) {
    if (auto c = dataset.FindColumn(name)) members.push_back(*c);
  }
  return {ColumnSubset(std::move(members))};
}

}  // namespace

void ValidateConfig(const AnalysisConfig& config) {
  ValidateEpsilon0(config.epsilon0);
  if (config.k_max < 1) throw Error(ErrorCode::kInvalidConfig, "k_max must be at least 1");
  if (config.trigger.kind == RiskTrigger::Kind::kFractionAtLeast &&
      !(config.trigger.tau > 0.0 && config.trigger.tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "trigger fraction must be in (0, 1]");
  }
}

RiskPolicy EffectivePolicy(const AnalysisConfig& config, const Dataset& dataset) {
  const std::size_t quasi = dataset.ColumnsOfClass(ColumnClass::kQuasi).size();
  RiskPolicy policy;
  policy.epsilon0 = config.epsilon0;
  policy.max_subset_size = std::max<std::size_t>(1, std::min(config.k_max, quasi));
  policy.trigger = config.trigger;
  return policy;
}

AuxModel ResolveAux(const Dataset& dataset, const std::vector<std::string>& names) {
  return {dataset.SubsetOf(names)};
}

RiskReport Analyze(const Dataset& dataset, const AnalysisConfig& config) {
  ValidateConfig(config);
  AnalysisOptions options;
  options.threads = config.threads;
  return FindRiskyCombinations(dataset, ResolveAux(dataset, config.aux_columns),
                               EffectivePolicy(config, dataset), config.log_base, options);
}

double MinimumEpsilon(const Dataset& dataset, const AuxModel& aux, std::size_t k_max,
                      LogBase base) {
  return ScanMaximalSubsets(dataset, aux, k_max, 1.0, base).min_epsilon;
}

RiskProfile ProfileRisk(const Dataset& dataset, const AnalysisConfig& config) {
  ValidateConfig(config);
  const AuxModel aux = ResolveAuxLenient(dataset, config.aux_columns);
  const Extremes extremes =
      ScanMaximalSubsets(dataset, aux, config.k_max, config.epsilon0, config.log_base);
  RiskProfile profile;
  profile.min_epsilon = extremes.min_epsilon;
  profile.at_risk_fraction =
      static_cast<double>(extremes.at_risk) / static_cast<double>(dataset.num_records());
  if (!dataset.ColumnsOfClass(ColumnClass::kQuasi).empty()) {
    AnalysisOptions options;
    options.threads = config.threads;
    const RiskReport report = FindRiskyCombinations(
        dataset, aux, EffectivePolicy(config, dataset), config.log_base, options);
    for (const auto& subset : report.minimal_risky) {
      profile.minimal_risky.push_back(SortedNames(dataset, subset));
    }
    std::sort(profile.minimal_risky.begin(), profile.minimal_risky.end());
  }
  return profile;
}

std::vector<std::string> SortedNames(const Dataset& dataset, const ColumnSubset& subset) {
  std::vector<std::string> names = dataset.NamesOf(subset);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace entropylens
