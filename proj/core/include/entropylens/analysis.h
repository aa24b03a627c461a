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

#ifndef ENTROPYLENS_ANALYSIS_H_
#define ENTROPYLENS_ANALYSIS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "entropylens/dataset.h"
#include "entropylens/entropy.h"
#include "entropylens/risky_comb.h"

namespace entropylens {

// Analysis settings shared by the CLI and the service. Aux columns are held
// by name so a config survives transforms that move or drop columns.
struct AnalysisConfig {
  double epsilon0 = 0.5;
  std::size_t k_max = 4;
  std::vector<std::string> aux_columns;
  RiskTrigger trigger;
  LogBase log_base = LogBase::kTwo;
  std::size_t threads = 0;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Throws InvalidEpsilon0 or InvalidConfig.
void ValidateConfig(const AnalysisConfig& config);

// k_max is an upper bound: it is capped at the dataset's quasi column count.
RiskPolicy EffectivePolicy(const AnalysisConfig& config, const Dataset& dataset);

// Throws UnknownColumn.
AuxModel ResolveAux(const Dataset& dataset, const std::vector<std::string>& names);

// FindRiskyCombinations with the effective policy and resolved aux columns.
RiskReport Analyze(const Dataset& dataset, const AnalysisConfig& config);

// Dataset-level view of risk under a policy.
struct RiskProfile {
  // Smallest epsilon of any record (not already identified) under any quasi
  // subset of size <= k_max. By monotonicity it is reached on the largest
  // subsets. 1 when there are no quasi columns.
  double min_epsilon = 1.0;
  // Fraction of records with epsilon <= epsilon0 under at least one subset.
  double at_risk_fraction = 0.0;
  // Minimal risky sets by column name, each sorted by name.
  std::vector<std::vector<std::string>> minimal_risky;

  friend bool operator==(const RiskProfile&, const RiskProfile&) = default;
};

// Aux names missing from the dataset are ignored here, since a transform may
// have removed them.
RiskProfile ProfileRisk(const Dataset& dataset, const AnalysisConfig& config);

// min_epsilon of ProfileRisk without the risky-set search.
double MinimumEpsilon(const Dataset& dataset, const AuxModel& aux,
                      std::size_t k_max, LogBase base = LogBase::kTwo);

// Sorted column names of a subset; the form used in reports.
std::vector<std::string> SortedNames(const Dataset& dataset, const ColumnSubset& subset);

}  // namespace entropylens

#endif  // ENTROPYLENS_ANALYSIS_H_
