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

#include "entropylens/risky_comb.h"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "entropylens/error.h"
#include "parallel.h"

namespace entropylens {
namespace {

struct Candidate {
  ColumnSubset subset;
  ColumnSubset parent;
  std::size_t added_column = 0;
};

// Classic levelwise join: two non-risky k-subsets sharing their first k-1
// members, kept only if every k-subset of the union is non-risky.
std::vector<Candidate> NextCandidates(const std::map<ColumnSubset, TabulationTable::Entry>& level) {
  std::vector<ColumnSubset> safe;
  for (const auto& [subset, entry] : level) {
    if (!entry.risky) safe.push_back(subset);
  }
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < safe.size(); ++i) {
    const auto a = safe[i].members();
    for (std::size_t j = i + 1; j < safe.size(); ++j) {
      const auto b = safe[j].members();
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
      const ColumnSubset joined = safe[i].With(b.back());
      bool all_safe = true;
      for (std::size_t c : joined) {
        auto it = level.find(joined.Without(c));
        if (it == level.end() || it->second.risky) {
          all_safe = false;
          break;
        }
      }
      if (all_safe) out.push_back({joined, safe[i], b.back()});
    }
  }
  return out;
}

// All k-combinations of `pool`, in lexicographic order.
void ForEachCombination(const ColumnSubset& pool, std::size_t k,
                        const std::function<void(const ColumnSubset&)>& fn) {
  const auto items = pool.members();
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::size_t> members;
    for (std::size_t i : idx) members.push_back(items[i]);
    fn(ColumnSubset(std::move(members)));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool CanonicalSubsetLess(const ColumnSubset& a, const ColumnSubset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<ColumnSubset> MinimalElements(std::vector<ColumnSubset> family) {
  std::sort(family.begin(), family.end(), CanonicalSubsetLess);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<ColumnSubset> out;
  for (const auto& candidate : family) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](const ColumnSubset& kept) {
      return kept.IsSubsetOf(candidate);
    });
    if (!dominated) out.push_back(candidate);
  }
  return out;
}

void ValidatePolicy(const RiskPolicy& policy, std::size_t num_quasi_columns) {
  auto invalid = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidPolicy, message);
  };
  if (!(policy.epsilon0 > 0.0 && policy.epsilon0 <= 1.0)) {
    invalid("epsilon0 must be in (0, 1], got " + std::to_string(policy.epsilon0));
  }
  if (policy.max_subset_size < 1 || policy.max_subset_size > num_quasi_columns) {
    invalid("max_subset_size must be in [1, " + std::to_string(num_quasi_columns) +
            "], got " + std::to_string(policy.max_subset_size));
  }
  if (policy.trigger.kind == RiskTrigger::Kind::kFractionAtLeast &&
      !(policy.trigger.tau > 0.0 && policy.trigger.tau <= 1.0)) {
    invalid("trigger fraction must be in (0, 1], got " + std::to_string(policy.trigger.tau));
  }
}

bool IsRisky(const SubsetRiskSummary& summary, const RiskPolicy& policy) {
  switch (policy.trigger.kind) {
    case RiskTrigger::Kind::kAnyRecord:
      return summary.at_risk_count > 0;
    case RiskTrigger::Kind::kFractionAtLeast:
      return summary.at_risk_count > 0 && summary.at_risk_fraction >= policy.trigger.tau;
  }
  return false;
}

const SubsetResult* RiskReport::Find(const ColumnSubset& subset) const {
  auto it = std::lower_bound(per_subset.begin(), per_subset.end(), subset,
                             [](const SubsetResult& r, const ColumnSubset& s) {
                               return CanonicalSubsetLess(r.subset, s);
                             });
  if (it == per_subset.end() || it->subset != subset) return nullptr;
  return &*it;
}

// TabulationTable

TabulationTable::TabulationTable(PartitionIndex baseline)
    : baseline_(std::make_shared<const PartitionIndex>(std::move(baseline))), levels_(1) {}

std::map<ColumnSubset, TabulationTable::Entry>& TabulationTable::level(std::size_t k) {
  if (levels_.size() <= k) levels_.resize(k + 1);
  return levels_[k];
}

const std::map<ColumnSubset, TabulationTable::Entry>* TabulationTable::find_level(
    std::size_t k) const {
  return k < levels_.size() ? &levels_[k] : nullptr;
}

const TabulationTable::Entry* TabulationTable::Find(const ColumnSubset& subset) const {
  const auto* lvl = find_level(subset.size());
  if (!lvl) return nullptr;
  auto it = lvl->find(subset);
  return it == lvl->end() ? nullptr : &it->second;
}

std::shared_ptr<const PartitionIndex> TabulationTable::PartitionFor(
    const ColumnSubset& subset) const {
  if (subset.empty()) return baseline_;
  const Entry* entry = Find(subset);
  return entry ? entry->partition : nullptr;
}

void TabulationTable::DropPartitions(std::size_t k) {
  if (k >= levels_.size()) return;
  for (auto& [subset, entry] : levels_[k]) entry.partition.reset();
}

RiskReport FindRiskyCombinations(const Dataset& dataset, const AuxModel& aux,
                                 const RiskPolicy& policy, LogBase base,
                                 const AnalysisOptions& options) {
  const ColumnSubset quasi = dataset.ColumnsOfClass(ColumnClass::kQuasi);
  if (quasi.empty()) throw Error(ErrorCode::kNoQuasiColumns, "dataset has no quasi columns");
  ValidatePolicy(policy, quasi.size());

  RiskReport report;
  report.policy = policy;
  report.aux = aux;
  report.log_base = base;
  report.num_records = dataset.num_records();
  report.quasi_columns = quasi;

  TabulationTable table(BuildPartition(dataset, aux.known_columns));
  const PartitionIndex& baseline = table.baseline();
  for (RecordId r = 0; r < dataset.num_records(); ++r) {
    if (baseline.block_size_of(r) == 1) report.already_identified.push_back(r);
  }

  std::vector<Candidate> candidates;
  for (std::size_t c : quasi) candidates.push_back({ColumnSubset{c}, ColumnSubset{}, c});

  std::set<ColumnSubset> evaluated;
  for (std::size_t k = 1; k <= policy.max_subset_size && !candidates.empty(); ++k) {
    report.stats.candidates += candidates.size();
    std::vector<TabulationTable::Entry> entries(candidates.size());
    std::vector<char> refined(candidates.size(), 0);
    internal::ParallelFor(candidates.size(), options.threads, [&](std::size_t i) {
      const Candidate& cand = candidates[i];
      auto parent = table.PartitionFor(cand.parent);
      TabulationTable::Entry& entry = entries[i];
      entry.parent = cand.parent;
      if (aux.known_columns.contains(cand.added_column)) {
        // Already conditioned on through the aux columns.
        entry.partition = parent;
      } else {
        entry.partition = std::make_shared<const PartitionIndex>(
            RefinePartition(*parent, cand.added_column));
        refined[i] = 1;
      }
      std::vector<RecordId> at_risk;
      entry.summary = SummarizePartitions(*entry.partition, baseline, policy.epsilon0,
                                          base, &at_risk);
      entry.risky = IsRisky(entry.summary, policy);
      if (entry.risky) {
        entry.at_risk = std::move(at_risk);
        entry.partition.reset();
      }
    });
    auto& level = table.level(k);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      report.stats.partitions_built += refined[i];
      evaluated.insert(candidates[i].subset);
      level.emplace(candidates[i].subset, std::move(entries[i]));
    }
    table.DropPartitions(k - 1);
    candidates = k < policy.max_subset_size ? NextCandidates(level) : std::vector<Candidate>{};
  }

  std::vector<ColumnSubset> risky_evaluated;
  for (std::size_t k = 1; k <= policy.max_subset_size; ++k) {
    const auto* level = table.find_level(k);
    if (!level) break;
    for (const auto& [subset, entry] : *level) {
      report.per_subset.push_back({subset, entry.summary, entry.risky, false});
      if (entry.risky) risky_evaluated.push_back(subset);
    }
  }

  // Every subset that was never generated contains a risky subset.
  std::set<ColumnSubset> implied;
  std::vector<ColumnSubset> frontier = risky_evaluated;
  for (std::size_t k = 2; k <= policy.max_subset_size; ++k) {
    std::vector<ColumnSubset> next;
    for (const auto& s : frontier) {
      if (s.size() != k - 1) continue;
      for (std::size_t c : quasi) {
        if (s.contains(c)) continue;
        ColumnSubset super = s.With(c);
        if (evaluated.count(super) || !implied.insert(super).second) continue;
        next.push_back(super);
      }
    }
    for (const auto& s : risky_evaluated) {
      if (s.size() == k) next.push_back(s);
    }
    frontier = std::move(next);
  }
  for (const auto& s : implied) report.per_subset.push_back({s, std::nullopt, true, true});
  report.stats.by_implication = implied.size();
  std::sort(report.per_subset.begin(), report.per_subset.end(),
            [](const SubsetResult& a, const SubsetResult& b) {
              return CanonicalSubsetLess(a.subset, b.subset);
            });

  // Evaluated risky subsets have no risky strict subset by construction.
  report.minimal_risky = MinimalElements(risky_evaluated);
  for (const auto& subset : report.minimal_risky) {
    for (RecordId r : table.Find(subset)->at_risk) report.per_record[r].push_back(subset);
  }
  return report;
}

RiskReport BruteForceOracle(const Dataset& dataset, const AuxModel& aux,
                            const RiskPolicy& policy, LogBase base) {
  const ColumnSubset quasi = dataset.ColumnsOfClass(ColumnClass::kQuasi);
  if (quasi.empty()) throw Error(ErrorCode::kNoQuasiColumns, "dataset has no quasi columns");
  if (quasi.size() > kOracleMaxColumns) {
    throw Error(ErrorCode::kTooManyColumns,
                "brute force supports at most " + std::to_string(kOracleMaxColumns) +
                    " quasi columns, got " + std::to_string(quasi.size()));
  }
  ValidatePolicy(policy, quasi.size());

  RiskReport report;
  report.policy = policy;
  report.aux = aux;
  report.log_base = base;
  report.num_records = dataset.num_records();
  report.quasi_columns = quasi;

  const PartitionIndex baseline = BuildPartition(dataset, aux.known_columns);
  const std::size_t n = dataset.num_records();
  for (RecordId r = 0; r < n; ++r) {
    if (baseline.block_size_of(r) == 1) report.already_identified.push_back(r);
  }

  std::map<ColumnSubset, std::vector<RecordId>> at_risk_of;
  std::vector<ColumnSubset> risky;
  for (std::size_t k = 1; k <= policy.max_subset_size; ++k) {
    ForEachCombination(quasi, k, [&](const ColumnSubset& subset) {
      const PartitionIndex conditioned =
          BuildPartition(dataset, subset.Union(aux.known_columns));
      SubsetRiskSummary summary;
      double sum = 0.0;
      double min = 1.0;
      std::size_t assessable = 0;
      std::vector<RecordId> at_risk;
      for (RecordId r = 0; r < n; ++r) {
        const IppValue ipp = IppFromBlockSizes(conditioned.block_size_of(r),
                                               baseline.block_size_of(r), base);
        if (ipp.already_identified) continue;
        ++assessable;
        sum += ipp.epsilon;
        min = std::min(min, ipp.epsilon);
        if (ipp.epsilon <= policy.epsilon0) at_risk.push_back(r);
      }
      summary.min_epsilon = assessable ? min : 0.0;
      summary.mean_epsilon = assessable ? sum / static_cast<double>(assessable) : 0.0;
      summary.at_risk_count = at_risk.size();
      summary.at_risk_fraction = static_cast<double>(at_risk.size()) / static_cast<double>(n);
      const bool is_risky = IsRisky(summary, policy);
      report.per_subset.push_back({subset, summary, is_risky, false});
      if (is_risky) {
        risky.push_back(subset);
        at_risk_of[subset] = std::move(at_risk);
      }
    });
  }
  report.minimal_risky = MinimalElements(risky);
  for (const auto& subset : report.minimal_risky) {
    for (RecordId r : at_risk_of[subset]) report.per_record[r].push_back(subset);
  }
  return report;
}

std::vector<ColumnSubset> MinimalRiskySets(const RiskReport& report) {
  std::vector<ColumnSubset> risky;
  for (const auto& result : report.per_subset) {
    if (result.risky) risky.push_back(result.subset);
  }
  return MinimalElements(std::move(risky));
}

std::vector<ColumnSubset> RiskyAttributeSet(const RiskReport& report, RecordId record) {
  if (record >= report.num_records) {
    throw Error(ErrorCode::kUnknownRecord, "no record " + std::to_string(record));
  }
  auto it = report.per_record.find(record);
  if (it == report.per_record.end()) return {};
  return it->second;
}

}  // namespace entropylens
