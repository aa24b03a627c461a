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

#include "test_support.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entropylens/schema_config.h"

#ifndef ENTROPYLENS_TEST_DATA_DIR
#error "ENTROPYLENS_TEST_DATA_DIR must point at tests/data"
#endif

namespace entropylens::testing {
namespace {

std::vector<std::string> Key(const Dataset& dataset, const ColumnSubset& columns, RecordId r) {
  std::vector<std::string> key;
  for (std::size_t c : columns) key.emplace_back(dataset.cell(r, c));
  return key;
}

// Number of records agreeing with `record` on every column of `columns`.
std::vector<std::size_t> MatchCounts(const Dataset& dataset, const ColumnSubset& columns) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (RecordId r = 0; r < dataset.num_records(); ++r) ++counts[Key(dataset, columns, r)];
  std::vector<std::size_t> out(dataset.num_records());
  for (RecordId r = 0; r < dataset.num_records(); ++r) out[r] = counts[Key(dataset, columns, r)];
  return out;
}

double Log(double x, LogBase base) {
  return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

bool CanonicalLess(const ColumnSubset& a, const ColumnSubset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::filesystem::path DataPath(const std::string& name) {
  return std::filesystem::path(ENTROPYLENS_TEST_DATA_DIR) / name;
}

std::string ReadData(const std::string& name) { return ReadFile(DataPath(name)); }

Dataset LoadToy6() { return LoadDatasetFiles(DataPath("toy6.csv"), DataPath("toy6.schema.json")); }

Dataset RandomDataset(std::mt19937_64& rng, const RandomSpec& spec) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = uniform(spec.min_records, spec.max_records);
  const std::size_t m = uniform(spec.min_columns, spec.max_columns);

  std::vector<ColumnMeta> columns;
  std::vector<std::vector<std::string>> rows(n);
  if (spec.with_direct) {
    columns.push_back({"id", ColumnClass::kDirect, true, nullptr});
    for (std::size_t r = 0; r < n; ++r) rows[r].push_back("id" + std::to_string(r));
  }
  const auto bins = std::make_shared<const GeneralizationHierarchy>(
      GeneralizationHierarchy::NumericBins({5, 10, 50}));
  for (std::size_t c = 0; c < m; ++c) {
    ColumnMeta meta{"q" + std::to_string(c), ColumnClass::kQuasi, true, nullptr};
    if (spec.numeric) meta.hierarchy = bins;
    columns.push_back(std::move(meta));
    const std::size_t cardinality = uniform(1, spec.max_cardinality);
    // Geometric-ish weights: value k is drawn with weight 2^-k.
    std::vector<double> weights;
    for (std::size_t k = 0; k < cardinality; ++k) weights.push_back(std::ldexp(1.0, -static_cast<int>(k)));
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::size_t> numeric_values;
    for (std::size_t k = 0; k < cardinality; ++k) numeric_values.push_back(uniform(0, 99));
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t k = pick(rng);
      rows[r].push_back(spec.numeric ? std::to_string(numeric_values[k]) : "v" + std::to_string(k));
    }
  }
  return Dataset::FromRows(std::move(columns), rows);
}

ColumnSubset RandomSubset(std::mt19937_64& rng, const ColumnSubset& from) {
  std::vector<std::size_t> members;
  for (std::size_t c : from) {
    if (rng() & 1) members.push_back(c);
  }
  return ColumnSubset(std::move(members));
}

OracleIpp ReferenceIpp(const Dataset& dataset, const ColumnSubset& subset, const ColumnSubset& aux,
                       RecordId record, LogBase base) {
  const auto target_all = Key(dataset, subset.Union(aux), record);
  const auto target_aux = Key(dataset, aux, record);
  std::size_t conditioned = 0;
  std::size_t baseline = 0;
  for (RecordId r = 0; r < dataset.num_records(); ++r) {
    if (Key(dataset, aux, r) == target_aux) ++baseline;
    if (Key(dataset, subset.Union(aux), r) == target_all) ++conditioned;
  }
  if (baseline == 1) return {0.0, true};
  if (conditioned == 1) return {0.0, false};
  return {std::clamp(Log(static_cast<double>(conditioned), base) /
                         Log(static_cast<double>(baseline), base),
                     0.0, 1.0),
          false};
}

ReferenceRisk ReferenceRiskyCombinations(const Dataset& dataset, const ColumnSubset& aux,
                                         const RiskPolicy& policy, LogBase base) {
  const ColumnSubset quasi = dataset.ColumnsOfClass(ColumnClass::kQuasi);
  const std::vector<std::size_t> q(quasi.begin(), quasi.end());
  const std::size_t n = dataset.num_records();
  const std::vector<std::size_t> baseline = MatchCounts(dataset, aux);

  ReferenceRisk out;
  for (RecordId r = 0; r < n; ++r) {
    if (baseline[r] == 1) out.already_identified.push_back(r);
  }

  std::vector<ColumnSubset> risky;
  std::map<ColumnSubset, std::vector<RecordId>> at_risk;
  for (std::size_t mask = 1; mask < (std::size_t{1} << q.size()); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (mask >> i & 1) members.push_back(q[i]);
    }
    if (members.size() > policy.max_subset_size) continue;
    const ColumnSubset subset(members);
    const std::vector<std::size_t> conditioned = MatchCounts(dataset, subset.Union(aux));
    std::vector<RecordId> records;
    for (RecordId r = 0; r < n; ++r) {
      if (baseline[r] == 1) continue;
      const double epsilon =
          conditioned[r] == 1 ? 0.0
                              : std::clamp(Log(static_cast<double>(conditioned[r]), base) /
                                               Log(static_cast<double>(baseline[r]), base),
                                           0.0, 1.0);
      if (epsilon <= policy.epsilon0) records.push_back(r);
    }
    const double fraction = static_cast<double>(records.size()) / static_cast<double>(n);
    const bool is_risky = policy.trigger.kind == RiskTrigger::Kind::kAnyRecord
                              ? !records.empty()
                              : fraction >= policy.trigger.tau;
    if (is_risky) {
      risky.push_back(subset);
      at_risk[subset] = std::move(records);
    }
  }
  for (const auto& s : risky) {
    const bool minimal = std::none_of(risky.begin(), risky.end(), [&](const ColumnSubset& t) {
      return t.IsStrictSubsetOf(s);
    });
    if (minimal) out.minimal_risky.push_back(s);
  }
  std::sort(out.minimal_risky.begin(), out.minimal_risky.end(), CanonicalLess);
  for (const auto& m : out.minimal_risky) {
    for (RecordId r : at_risk[m]) out.per_record[r].push_back(m);
  }
  return out;
}

std::vector<std::vector<std::string>> Names(const Dataset& dataset,
                                            const std::vector<ColumnSubset>& family) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : family) out.push_back(SortedNames(dataset, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace entropylens::testing
