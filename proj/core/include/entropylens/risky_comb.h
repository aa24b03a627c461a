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

#ifndef ENTROPYLENS_RISKY_COMB_H_
#define ENTROPYLENS_RISKY_COMB_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "entropylens/dataset.h"
#include "entropylens/entropy.h"
#include "entropylens/partition.h"

namespace entropylens {

struct RiskTrigger {
  enum class Kind { kAnyRecord, kFractionAtLeast };

  static RiskTrigger AnyRecord() { return {}; }
  static RiskTrigger FractionAtLeast(double tau) {
    return {Kind::kFractionAtLeast, tau};
  }

  Kind kind = Kind::kAnyRecord;
  double tau = 1.0;  // only read for kFractionAtLeast

  friend bool operator==(const RiskTrigger&, const RiskTrigger&) = default;
};

struct RiskPolicy {
  double epsilon0 = 0.5;
  std::size_t max_subset_size = 4;
  RiskTrigger trigger;

  friend bool operator==(const RiskPolicy&, const RiskPolicy&) = default;
};

// Throws InvalidPolicy.
void ValidatePolicy(const RiskPolicy& policy, std::size_t num_quasi_columns);

// Whether a subset with this summary is risky under the policy's trigger.
bool IsRisky(const SubsetRiskSummary& summary, const RiskPolicy& policy);

struct SubsetResult {
  ColumnSubset subset;
  // Absent for subsets that were pruned as risky by implication.
  std::optional<SubsetRiskSummary> summary;
  bool risky = false;
  bool by_implication = false;
};

struct TabulationStats {
  std::size_t candidates = 0;        // subsets surviving candidate generation
  std::size_t partitions_built = 0;  // refinements actually performed
  std::size_t by_implication = 0;
};

struct RiskReport {
  RiskPolicy policy;
  AuxModel aux;
  LogBase log_base = LogBase::kTwo;
  std::size_t num_records = 0;
  ColumnSubset quasi_columns;
  // Every subset of quasi columns up to max_subset_size that was evaluated
  // or pruned, ordered by size and then by column positions.
  std::vector<SubsetResult> per_subset;
  std::vector<ColumnSubset> minimal_risky;
  // Minimal risky sets under which the record itself has epsilon <= epsilon0.
  // Records with no such set are omitted.
  std::map<RecordId, std::vector<ColumnSubset>> per_record;
  // Records singled out by the aux columns alone.
  std::vector<RecordId> already_identified;
  TabulationStats stats;

  const SubsetResult* Find(const ColumnSubset& subset) const;
};

// Levelwise cache of subset partitions. Level k holds the subsets of size k
// evaluated so far; partitions are kept only until the next level has been
// generated from them.
class TabulationTable {
 public:
  struct Entry {
    SubsetRiskSummary summary;
    bool risky = false;
    std::vector<RecordId> at_risk;  // filled for risky subsets only
    std::shared_ptr<const PartitionIndex> partition;
    ColumnSubset parent;
  };

  explicit TabulationTable(PartitionIndex baseline);

  const PartitionIndex& baseline() const { return *baseline_; }
  std::map<ColumnSubset, Entry>& level(std::size_t k);
  const std::map<ColumnSubset, Entry>* find_level(std::size_t k) const;
  const Entry* Find(const ColumnSubset& subset) const;
  // Partition for `subset`, which must be stored or be the empty subset.
  std::shared_ptr<const PartitionIndex> PartitionFor(const ColumnSubset& subset) const;
  void DropPartitions(std::size_t k);

 private:
  std::shared_ptr<const PartitionIndex> baseline_;
  std::vector<std::map<ColumnSubset, Entry>> levels_;
};

struct AnalysisOptions {
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

// Levelwise search over subsets of the Quasi columns with apriori pruning.
// Each level-k partition refines a stored level-(k-1) partition. Subsets
// with a risky strict subset are not evaluated and are reported as risky by
// implication. Throws NoQuasiColumns or InvalidPolicy.
RiskReport FindRiskyCombinations(const Dataset& dataset, const AuxModel& aux,
                                 const RiskPolicy& policy,
                                 LogBase base = LogBase::kTwo,
                                 const AnalysisOptions& options = {});

// Evaluates every subset up to max_subset_size from scratch with
// BuildPartition. Throws TooManyColumns above 20 quasi columns.
RiskReport BruteForceOracle(const Dataset& dataset, const AuxModel& aux,
                            const RiskPolicy& policy,
                            LogBase base = LogBase::kTwo);

inline constexpr std::size_t kOracleMaxColumns = 20;

// Risky subsets of the report none of whose proper subsets are risky.
std::vector<ColumnSubset> MinimalRiskySets(const RiskReport& report);

// Throws UnknownRecord.
std::vector<ColumnSubset> RiskyAttributeSet(const RiskReport& report,
                                            RecordId record);

// Members of `family` that contain no other member, in canonical order.
std::vector<ColumnSubset> MinimalElements(std::vector<ColumnSubset> family);

// Size first, then column positions.
bool CanonicalSubsetLess(const ColumnSubset& a, const ColumnSubset& b);

}  // namespace entropylens

#endif  // ENTROPYLENS_RISKY_COMB_H_
