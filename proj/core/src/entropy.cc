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

#include "entropylens/entropy.h"

#include <algorithm>
#include <cmath>

#include "entropylens/error.h"

namespace entropylens {

std::string_view LogBaseName(LogBase base) { return base == LogBase::kTwo ? "2" : "e"; }

std::optional<LogBase> ParseLogBase(std::string_view name) {
  if (name == "2") return LogBase::kTwo;
  if (name == "e") return LogBase::kE;
  return std::nullopt;
}

double Logarithm(double x, LogBase base) {
  return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

void ValidateEpsilon0(double epsilon0) {
  if (!(epsilon0 > 0.0 && epsilon0 <= 1.0)) {
    throw Error(ErrorCode::kInvalidEpsilon0,
                "epsilon0 must be in (0, 1], got " + std::to_string(epsilon0));
  }
}

Entropy IdentifiabilityEntropy(const PartitionIndex& partition, RecordId record,
                               LogBase base) {
  const double size = static_cast<double>(partition.block_size_of(record));
  // log(1) is exactly 0 for both bases; keep it that way for unique records.
  return {size == 1.0 ? 0.0 : Logarithm(size, base), base};
}

Entropy BaselineEntropy(const Dataset& dataset, const AuxModel& aux, RecordId record,
                        LogBase base) {
  return IdentifiabilityEntropy(BuildPartition(dataset, aux.known_columns), record, base);
}

IppValue IppFromBlockSizes(std::size_t conditioned_size, std::size_t baseline_size,
                           LogBase base) {
  if (baseline_size <= 1) return {0.0, true};
  if (conditioned_size <= 1) return {0.0, false};
  const double ratio = Logarithm(static_cast<double>(conditioned_size), base) /
                       Logarithm(static_cast<double>(baseline_size), base);
  return {std::clamp(ratio, 0.0, 1.0), false};
}

IppValue Ipp(const Dataset& dataset, const ColumnSubset& subset, const AuxModel& aux,
             RecordId record, LogBase base) {
  const PartitionIndex conditioned =
      BuildPartition(dataset, subset.Union(aux.known_columns));
  const PartitionIndex baseline = BuildPartition(dataset, aux.known_columns);
  return IppFromBlockSizes(conditioned.block_size_of(record),
                           baseline.block_size_of(record), base);
}

std::vector<IppValue> IppAll(const Dataset& dataset, const ColumnSubset& subset,
                             const AuxModel& aux, LogBase base) {
  const PartitionIndex conditioned =
      BuildPartition(dataset, subset.Union(aux.known_columns));
  const PartitionIndex baseline = BuildPartition(dataset, aux.known_columns);
  std::vector<IppValue> out;
  out.reserve(dataset.num_records());
  for (RecordId r = 0; r < dataset.num_records(); ++r) {
    out.push_back(IppFromBlockSizes(conditioned.block_size_of(r),
                                    baseline.block_size_of(r), base));
  }
  return out;
}

SubsetRiskSummary SummarizePartitions(const PartitionIndex& conditioned,
                                      const PartitionIndex& baseline, double epsilon0,
                                      LogBase base, std::vector<RecordId>* at_risk) {
  const std::size_t n = conditioned.num_records();
  auto conditioned_of = conditioned.block_of_record();
  auto baseline_of = baseline.block_of_record();

  SubsetRiskSummary summary;
  double sum = 0.0;
  double min = 1.0;
  std::size_t assessable = 0;
  for (RecordId r = 0; r < n; ++r) {
    const IppValue ipp = IppFromBlockSizes(conditioned.block_size(conditioned_of[r]),
                                           baseline.block_size(baseline_of[r]), base);
    if (ipp.already_identified) continue;
    ++assessable;
    sum += ipp.epsilon;
    min = std::min(min, ipp.epsilon);
    if (ipp.epsilon <= epsilon0) {
      ++summary.at_risk_count;
      if (at_risk) at_risk->push_back(r);
    }
  }
  if (assessable == 0) {
    summary.min_epsilon = 0.0;
    summary.mean_epsilon = 0.0;
  } else {
    summary.min_epsilon = min;
    summary.mean_epsilon = sum / static_cast<double>(assessable);
  }
  summary.at_risk_fraction = static_cast<double>(summary.at_risk_count) / static_cast<double>(n);
  return summary;
}

SubsetRiskSummary SubsetRiskProfile(const Dataset& dataset, const ColumnSubset& subset,
                                    const AuxModel& aux, double epsilon0, LogBase base) {
  ValidateEpsilon0(epsilon0);
  const PartitionIndex conditioned =
      BuildPartition(dataset, subset.Union(aux.known_columns));
  const PartitionIndex baseline = BuildPartition(dataset, aux.known_columns);
  return SummarizePartitions(conditioned, baseline, epsilon0, base);
}

}  // namespace entropylens
