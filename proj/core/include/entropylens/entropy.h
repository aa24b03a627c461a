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

#ifndef ENTROPYLENS_ENTROPY_H_
#define ENTROPYLENS_ENTROPY_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "entropylens/dataset.h"
#include "entropylens/partition.h"

namespace entropylens {

enum class LogBase { kTwo, kE };

// "2" or "e".
std::string_view LogBaseName(LogBase base);
std::optional<LogBase> ParseLogBase(std::string_view name);
double Logarithm(double x, LogBase base);

// Identifiability entropy in units fixed by `base` (bits for base 2).
struct Entropy {
  double value = 0.0;
  LogBase base = LogBase::kTwo;
};

// Columns the adversary is assumed to know already. Stands in for both
// auxiliary information and (correct) context.
struct AuxModel {
  ColumnSubset known_columns;
};

// Ratio of the entropy left after observing a column subset (on top of the
// aux columns) to the entropy left after observing the aux columns alone.
// Always in [0, 1]; lower means easier to single out.
struct IppValue {
  double epsilon = 1.0;
  // The aux columns alone already single the record out; epsilon is then 0.
  bool already_identified = false;
};

struct SubsetRiskSummary {
  // Minimum and mean epsilon over records that are not already identified.
  // Both are 0 when every record is already identified.
  double min_epsilon = 1.0;
  double mean_epsilon = 1.0;
  // Records with epsilon <= epsilon0 (excluding already-identified ones),
  // divided by N.
  double at_risk_fraction = 0.0;
  std::size_t at_risk_count = 0;

  friend bool operator==(const SubsetRiskSummary&,
                         const SubsetRiskSummary&) = default;
};

// Throws InvalidEpsilon0 unless 0 < epsilon0 <= 1.
void ValidateEpsilon0(double epsilon0);

// log(size of the record's block). Zero when the record is unique under the
// partition's columns.
Entropy IdentifiabilityEntropy(const PartitionIndex& partition, RecordId record,
                               LogBase base = LogBase::kTwo);

Entropy BaselineEntropy(const Dataset& dataset, const AuxModel& aux,
                        RecordId record, LogBase base = LogBase::kTwo);

// Epsilon from the record's block size under subset+aux and under aux alone.
IppValue IppFromBlockSizes(std::size_t conditioned_size,
                           std::size_t baseline_size,
                           LogBase base = LogBase::kTwo);

IppValue Ipp(const Dataset& dataset, const ColumnSubset& subset,
             const AuxModel& aux, RecordId record, LogBase base = LogBase::kTwo);

// Epsilon for every record, computing each partition once.
std::vector<IppValue> IppAll(const Dataset& dataset, const ColumnSubset& subset,
                             const AuxModel& aux, LogBase base = LogBase::kTwo);

SubsetRiskSummary SubsetRiskProfile(const Dataset& dataset,
                                    const ColumnSubset& subset,
                                    const AuxModel& aux, double epsilon0,
                                    LogBase base = LogBase::kTwo);

// Summary from precomputed partitions. `conditioned` must refine `baseline`.
// When `at_risk` is non-null it receives the at-risk records in order.
SubsetRiskSummary SummarizePartitions(const PartitionIndex& conditioned,
                                      const PartitionIndex& baseline,
                                      double epsilon0, LogBase base,
                                      std::vector<RecordId>* at_risk = nullptr);

}  // namespace entropylens

#endif  // ENTROPYLENS_ENTROPY_H_
