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

#ifndef ENTROPYLENS_STRATEGY_H_
#define ENTROPYLENS_STRATEGY_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entropylens/analysis.h"
#include "entropylens/dataset.h"
#include "entropylens/risky_comb.h"

namespace entropylens {

inline constexpr std::string_view kDefaultSurrogateName = "local_id";

// ---------------------------------------------------------------------------
// Hiding: direct identifiers move to a vault table; a random local surrogate
// replaces them everywhere else.

struct HidingPlan {
  std::vector<std::string> vault_columns;    // every Direct column
  std::string surrogate_column;
  std::vector<std::string> working_columns;  // everything else
  std::vector<std::string> original_columns; // schema order, for rejoining
  bool no_op = false;                        // no Direct columns

  friend bool operator==(const HidingPlan&, const HidingPlan&) = default;
};

struct HiddenTables {
  // surrogate + vault columns, rows ordered by surrogate value.
  Dataset vault;
  // surrogate + working columns, rows in the original order.
  Dataset working;
};

// Name not used by any column of `dataset`: `base`, else base_1, base_2, ...
std::string UniqueColumnName(const Dataset& dataset, std::string_view base);

HidingPlan PlanHiding(const Dataset& dataset);

// Throws SchemaMismatch when the plan does not describe `dataset`.
HiddenTables ApplyHiding(const Dataset& dataset, const HidingPlan& plan,
                         std::uint64_t seed);

// Inverse of ApplyHiding. Throws SchemaMismatch.
Dataset JoinHidden(const HiddenTables& tables, const HidingPlan& plan);

// n distinct tokens (12 hex digits) drawn from the seed. Token i carries no
// information about i.
std::vector<std::string> SurrogateTokens(std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Separation: quasi columns are split into table groups so that no group
// holds a whole minimal risky set.

struct SeparationPlan {
  std::vector<ColumnSubset> groups;
  // Columns that are risky on their own; separation cannot help them.
  std::vector<std::size_t> unseparable;

  friend bool operator==(const SeparationPlan&, const SeparationPlan&) = default;
};

struct SeparationViolation {
  std::size_t group = 0;
  ColumnSubset risky_subset;

  friend bool operator==(const SeparationViolation&,
                         const SeparationViolation&) = default;
};

// Greedy: each column in position order joins the first group it does not
// complete a minimal risky set in, or opens a new group.
SeparationPlan PlanSeparation(const std::vector<ColumnSubset>& minimal_risky,
                              const ColumnSubset& quasi_columns);

// Same constraints with the fewest possible groups, by exhaustive search.
// Throws TooManyColumns above kOptimalSeparationMaxColumns columns.
SeparationPlan OptimalSeparation(const std::vector<ColumnSubset>& minimal_risky,
                                 const ColumnSubset& quasi_columns);
inline constexpr std::size_t kOptimalSeparationMaxColumns = 12;

std::vector<SeparationViolation> VerifySeparation(
    const SeparationPlan& plan, const std::vector<ColumnSubset>& minimal_risky);

struct SeparatedTables {
  // local surrogate + every column not placed in a group, original row order.
  Dataset rest;
  // local surrogate + one pointer per group; access-restricted like a vault.
  Dataset link;
  // pointer + group columns, rows ordered by pointer.
  std::vector<Dataset> groups;
};

SeparatedTables ApplySeparation(const Dataset& dataset, const SeparationPlan& plan,
                                std::uint64_t seed);

// Inverse of ApplySeparation, columns back in `original_columns` order.
Dataset JoinSeparated(const SeparatedTables& tables,
                      const std::vector<std::string>& original_columns);

// ---------------------------------------------------------------------------
// Minimization: strip every column the individuals have not consented to.

struct MinimizationPlan {
  std::vector<std::string> strip_columns;
  std::vector<std::string> retained;
  RiskProfile before;
  RiskProfile after;
};

MinimizationPlan PlanMinimization(const Dataset& dataset, const AnalysisConfig& config);
Dataset ApplyMinimization(const Dataset& dataset, const MinimizationPlan& plan);

// ---------------------------------------------------------------------------
// Abstraction: generalize quasi columns along their hierarchies.

// Throws NoHierarchy, LevelOutOfRange or UnparseableCell.
Dataset ApplyGeneralization(const Dataset& dataset, std::size_t column, std::size_t level);

struct AbstractionStep {
  std::string column;
  std::size_t level = 0;
  double min_epsilon = 0.0;  // after this step
};

struct AbstractionPlan {
  // Column name -> chosen level, for raised columns only.
  std::map<std::string, std::size_t> assignments;
  std::vector<AbstractionStep> steps;
  double achieved = 0.0;  // minimum epsilon of the transformed dataset
  bool target_met = false;
};

// Greedy search: while the policy still finds a risky subset, raise by one
// level the hierarchy-bearing quasi column whose raise increases the minimum
// epsilon the most (ties: fewest levels raised so far, then position). Stops
// when no risky subset remains or every such column is fully suppressed.
// Throws NoHierarchies.
AbstractionPlan RecommendAbstraction(const Dataset& dataset, const AuxModel& aux,
                                     const RiskPolicy& policy,
                                     LogBase base = LogBase::kTwo);

Dataset ApplyAbstraction(const Dataset& dataset, const AbstractionPlan& plan);

}  // namespace entropylens

#endif  // ENTROPYLENS_STRATEGY_H_
