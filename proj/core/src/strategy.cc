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

#include "entropylens/strategy.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "entropylens/error.h"
#include "entropylens/partition.h"

namespace entropylens {
namespace {

[[noreturn]] void Mismatch(const std::string& message) {
  throw Error(ErrorCode::kSchemaMismatch, message);
}

ColumnMeta SurrogateMeta(std::string name) {
  ColumnMeta meta;
  meta.name = std::move(name);
  meta.column_class = ColumnClass::kNonIdentifying;
  return meta;
}

// Row order that sorts `tokens` ascending.
std::vector<RecordId> OrderByToken(const std::vector<std::string>& tokens) {
  std::vector<RecordId> order(tokens.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](RecordId a, RecordId b) { return tokens[a] < tokens[b]; });
  return order;
}

// Copies of `columns` of `dataset` with a leading surrogate column.
Dataset WithLeadingColumn(const Dataset& dataset, const std::vector<std::size_t>& columns,
                          const ColumnMeta& leading, const std::vector<std::string>& cells) {
  Dataset out = dataset.SelectColumns(columns).AppendColumn(leading, cells);
  std::vector<std::size_t> order{out.num_columns() - 1};
  for (std::size_t c = 0; c + 1 < out.num_columns(); ++c) order.push_back(c);
  return out.SelectColumns(order);
}

// Whether placing `column` into `group` would complete a size >= 2 risky set.
bool Completes(const ColumnSubset& group, std::size_t column,
               const std::vector<ColumnSubset>& minimal_risky) {
  const ColumnSubset extended = group.With(column);
  return std::any_of(minimal_risky.begin(), minimal_risky.end(), [&](const ColumnSubset& m) {
    return m.size() >= 2 && m.contains(column) && m.IsSubsetOf(extended);
  });
}

std::vector<std::size_t> SingletonRisky(const std::vector<ColumnSubset>& minimal_risky,
                                        const ColumnSubset& quasi_columns) {
  std::vector<std::size_t> out;
  for (std::size_t c : quasi_columns) {
    if (std::find(minimal_risky.begin(), minimal_risky.end(), ColumnSubset{c}) !=
        minimal_risky.end()) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

// Hiding

std::string UniqueColumnName(const Dataset& dataset, std::string_view base) {
  std::string name(base);
  for (int suffix = 1; dataset.FindColumn(name); ++suffix) {
    name = std::string(base) + "_" + std::to_string(suffix);
  }
  return name;
}

HidingPlan PlanHiding(const Dataset& dataset) {
  HidingPlan plan;
  plan.surrogate_column = UniqueColumnName(dataset, kDefaultSurrogateName);
  for (const auto& meta : dataset.columns()) {
    plan.original_columns.push_back(meta.name);
    if (meta.column_class == ColumnClass::kDirect) {
      plan.vault_columns.push_back(meta.name);
    } else {
      plan.working_columns.push_back(meta.name);
    }
  }
  plan.no_op = plan.vault_columns.empty();
  return plan;
}

std::vector<std::string> SurrogateTokens(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> used;
  std::vector<std::string> tokens;
  tokens.reserve(n);
  char buf[16];
  while (tokens.size() < n) {
    const std::uint64_t value = rng() >> 16;  // 48-bit counter space
    if (!used.insert(value).second) continue;
    std::snprintf(buf, sizeof(buf), "%012llx", static_cast<unsigned long long>(value));
    tokens.emplace_back(buf);
  }
  return tokens;
}

HiddenTables ApplyHiding(const Dataset& dataset, const HidingPlan& plan, std::uint64_t seed) {
  if (plan.original_columns != dataset.ColumnNames()) {
    Mismatch("hiding plan was made for a different schema");
  }
  if (dataset.FindColumn(plan.surrogate_column)) {
    Mismatch("surrogate column '" + plan.surrogate_column + "' already exists");
  }
  std::vector<std::size_t> vault;
  std::vector<std::size_t> working;
  for (const auto& name : plan.vault_columns) vault.push_back(dataset.ColumnIndex(name));
  for (const auto& name : plan.working_columns) working.push_back(dataset.ColumnIndex(name));
  if (vault.size() + working.size() != dataset.num_columns()) {
    Mismatch("hiding plan does not cover every column exactly once");
  }

  const std::vector<std::string> tokens = SurrogateTokens(dataset.num_records(), seed);
  const ColumnMeta surrogate = SurrogateMeta(plan.surrogate_column);
  HiddenTables out{WithLeadingColumn(dataset, vault, surrogate, tokens),
                   WithLeadingColumn(dataset, working, surrogate, tokens)};
  const std::vector<RecordId> order = OrderByToken(tokens);
  out.vault = out.vault.PermuteRows(order);
  return out;
}

Dataset JoinHidden(const HiddenTables& tables, const HidingPlan& plan) {
  const Dataset& vault = tables.vault;
  const Dataset& working = tables.working;
  const std::size_t vault_key = vault.ColumnIndex(plan.surrogate_column);
  const std::size_t working_key = working.ColumnIndex(plan.surrogate_column);
  if (vault.num_records() != working.num_records()) Mismatch("vault and working sizes differ");

  std::unordered_map<std::string_view, RecordId> vault_row;
  for (RecordId r = 0; r < vault.num_records(); ++r) vault_row[vault.cell(r, vault_key)] = r;

  std::vector<ColumnMeta> columns;
  std::vector<std::pair<bool, std::size_t>> source;  // (from vault, column)
  for (const auto& name : plan.original_columns) {
    if (auto c = vault.FindColumn(name); c && *c != vault_key) {
      columns.push_back(vault.column(*c));
      source.emplace_back(true, *c);
    } else if (auto w = working.FindColumn(name); w && *w != working_key) {
      columns.push_back(working.column(*w));
      source.emplace_back(false, *w);
    } else {
      Mismatch("column '" + name + "' is in neither table");
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(working.num_records());
  for (RecordId r = 0; r < working.num_records(); ++r) {
    auto it = vault_row.find(working.cell(r, working_key));
    if (it == vault_row.end()) Mismatch("surrogate without a vault row");
    std::vector<std::string> row;
    for (const auto& [from_vault, c] : source) {
      row.emplace_back(from_vault ? vault.cell(it->second, c) : working.cell(r, c));
    }
    rows.push_back(std::move(row));
  }
  return Dataset::FromRows(std::move(columns), rows);
}

// Separation

SeparationPlan PlanSeparation(const std::vector<ColumnSubset>& minimal_risky,
                              const ColumnSubset& quasi_columns) {
  SeparationPlan plan;
  plan.unseparable = SingletonRisky(minimal_risky, quasi_columns);
  for (std::size_t c : quasi_columns) {
    if (std::find(plan.unseparable.begin(), plan.unseparable.end(), c) !=
        plan.unseparable.end()) {
      continue;
    }
    auto fits = std::find_if(plan.groups.begin(), plan.groups.end(), [&](const ColumnSubset& g) {
      return !Completes(g, c, minimal_risky);
    });
    if (fits == plan.groups.end()) {
      plan.groups.push_back(ColumnSubset{c});
    } else {
      *fits = fits->With(c);
    }
  }
  return plan;
}

SeparationPlan OptimalSeparation(const std::vector<ColumnSubset>& minimal_risky,
                                 const ColumnSubset& quasi_columns) {
  SeparationPlan greedy = PlanSeparation(minimal_risky, quasi_columns);
  std::vector<std::size_t> columns;
  for (std::size_t c : quasi_columns) {
    if (std::find(greedy.unseparable.begin(), greedy.unseparable.end(), c) ==
        greedy.unseparable.end()) {
      columns.push_back(c);
    }
  }
  if (columns.size() > kOptimalSeparationMaxColumns) {
    throw Error(ErrorCode::kTooManyColumns,
                "exhaustive separation supports at most " +
                    std::to_string(kOptimalSeparationMaxColumns) + " columns");
  }

  SeparationPlan best = greedy;
  std::vector<ColumnSubset> groups;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (groups.size() >= best.groups.size()) return;
    if (i == columns.size()) {
      best.groups = groups;
      return;
    }
    const std::size_t c = columns[i];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (Completes(groups[g], c, minimal_risky)) continue;
      const ColumnSubset saved = groups[g];
      groups[g] = saved.With(c);
      search(i + 1);
      groups[g] = saved;
    }
    groups.push_back(ColumnSubset{c});
    search(i + 1);
    groups.pop_back();
  };
  search(0);
  return best;
}

std::vector<SeparationViolation> VerifySeparation(const SeparationPlan& plan,
                                                  const std::vector<ColumnSubset>& minimal_risky) {
  std::vector<SeparationViolation> violations;
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    for (const auto& m : minimal_risky) {
      if (m.size() >= 2 && m.IsSubsetOf(plan.groups[g])) violations.push_back({g, m});
    }
  }
  return violations;
}

SeparatedTables ApplySeparation(const Dataset& dataset, const SeparationPlan& plan,
                                std::uint64_t seed) {
  ColumnSubset grouped;
  for (const auto& group : plan.groups) {
    for (std::size_t c : group) {
      if (c >= dataset.num_columns()) Mismatch("separation plan names a missing column");
      if (grouped.contains(c)) Mismatch("separation groups overlap");
      grouped = grouped.With(c);
    }
  }
  const std::string surrogate = UniqueColumnName(dataset, kDefaultSurrogateName);
  const std::vector<std::string> local_ids = SurrogateTokens(dataset.num_records(), seed);

  std::vector<std::size_t> rest_columns;
  for (std::size_t c = 0; c < dataset.num_columns(); ++c) {
    if (!grouped.contains(c)) rest_columns.push_back(c);
  }
  SeparatedTables out{WithLeadingColumn(dataset, rest_columns, SurrogateMeta(surrogate), local_ids),
                      Dataset::FromRows({SurrogateMeta(surrogate)}, [&] {
                        std::vector<std::vector<std::string>> rows;
                        for (const auto& id : local_ids) rows.push_back({id});
                        return rows;
                      }()),
                      {}};
  std::mt19937_64 seeds(seed);
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    const std::string pointer = surrogate + "_g" + std::to_string(g + 1);
    const std::vector<std::string> tokens = SurrogateTokens(dataset.num_records(), seeds());
    std::vector<std::size_t> columns(plan.groups[g].begin(), plan.groups[g].end());
    Dataset table = WithLeadingColumn(dataset, columns, SurrogateMeta(pointer), tokens);
    out.groups.push_back(table.PermuteRows(OrderByToken(tokens)));
    out.link = out.link.AppendColumn(SurrogateMeta(pointer), tokens);
  }
  out.link = out.link.PermuteRows(OrderByToken(local_ids));
  return out;
}

Dataset JoinSeparated(const SeparatedTables& tables,
                      const std::vector<std::string>& original_columns) {
  const Dataset& rest = tables.rest;
  const std::string& surrogate = tables.link.column(0).name;
  const std::size_t rest_key = rest.ColumnIndex(surrogate);

  std::unordered_map<std::string_view, RecordId> link_row;
  for (RecordId r = 0; r < tables.link.num_records(); ++r) link_row[tables.link.cell(r, 0)] = r;
  std::vector<std::unordered_map<std::string_view, RecordId>> group_row(tables.groups.size());
  for (std::size_t g = 0; g < tables.groups.size(); ++g) {
    for (RecordId r = 0; r < tables.groups[g].num_records(); ++r) {
      group_row[g][tables.groups[g].cell(r, 0)] = r;
    }
  }

  // (table, column): table 0 is rest, table g + 1 is group g.
  std::vector<std::pair<std::size_t, std::size_t>> source;
  std::vector<ColumnMeta> columns;
  for (const auto& name : original_columns) {
    bool found = false;
    if (auto c = rest.FindColumn(name); c && *c != rest_key) {
      source.emplace_back(0, *c);
      columns.push_back(rest.column(*c));
      found = true;
    }
    for (std::size_t g = 0; g < tables.groups.size() && !found; ++g) {
      if (auto c = tables.groups[g].FindColumn(name); c && *c != 0) {
        source.emplace_back(g + 1, *c);
        columns.push_back(tables.groups[g].column(*c));
        found = true;
      }
    }
    if (!found) Mismatch("column '" + name + "' is in no separated table");
  }

  std::vector<std::vector<std::string>> rows;
  for (RecordId r = 0; r < rest.num_records(); ++r) {
    const RecordId link = link_row.at(rest.cell(r, rest_key));
    std::vector<std::string> row;
    for (const auto& [table, c] : source) {
      if (table == 0) {
        row.emplace_back(rest.cell(r, c));
      } else {
        const std::string_view pointer = tables.link.cell(link, table);
        row.emplace_back(tables.groups[table - 1].cell(group_row[table - 1].at(pointer), c));
      }
    }
    rows.push_back(std::move(row));
  }
  return Dataset::FromRows(std::move(columns), rows);
}

// Minimization

MinimizationPlan PlanMinimization(const Dataset& dataset, const AnalysisConfig& config) {
  MinimizationPlan plan;
  for (const auto& meta : dataset.columns()) {
    (meta.consented ? plan.retained : plan.strip_columns).push_back(meta.name);
  }
  plan.before = ProfileRisk(dataset, config);
  plan.after = ProfileRisk(ApplyMinimization(dataset, plan), config);
  return plan;
}

Dataset ApplyMinimization(const Dataset& dataset, const MinimizationPlan& plan) {
  return dataset.DropColumns(dataset.SubsetOf(plan.strip_columns));
}

// Abstraction

Dataset ApplyGeneralization(const Dataset& dataset, std::size_t column, std::size_t level) {
  return dataset.WithGeneralizedColumn(column, level);
}

AbstractionPlan RecommendAbstraction(const Dataset& dataset, const AuxModel& aux,
                                     const RiskPolicy& policy, LogBase base) {
  std::vector<std::size_t> candidates;
  for (std::size_t c : dataset.ColumnsOfClass(ColumnClass::kQuasi)) {
    if (dataset.column(c).hierarchy) candidates.push_back(c);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoHierarchies, "no quasi column has a generalization hierarchy");
  }

  auto violated = [&](const Dataset& ds) {
    return !FindRiskyCombinations(ds, aux, policy, base).minimal_risky.empty();
  };
  auto min_epsilon = [&](const Dataset& ds) {
    return MinimumEpsilon(ds, aux, policy.max_subset_size, base);
  };

  AbstractionPlan plan;
  Dataset current = dataset;
  double current_min = min_epsilon(current);
  std::map<std::size_t, std::size_t> raised;  // levels raised by this plan
  while (violated(current)) {
    std::optional<std::size_t> best;
    Dataset best_dataset = current;
    double best_min = 0.0;
    for (std::size_t c : candidates) {
      const std::size_t level = current.generalization_level(c);
      if (level >= dataset.column(c).hierarchy->top_level()) continue;
      Dataset trial = ApplyGeneralization(current, c, level + 1);
      const double trial_min = min_epsilon(trial);
      bool better = !best;
      if (best) {
        const double diff = trial_min - best_min;
        if (diff > 1e-12) {
          better = true;
        } else if (std::abs(diff) <= 1e-12) {
          better = raised[c] < raised[*best];  // position order breaks remaining ties
        }
      }
      if (better) {
        best = c;
        best_dataset = std::move(trial);
        best_min = trial_min;
      }
    }
    if (!best) break;
    current = std::move(best_dataset);
    current_min = best_min;
    ++raised[*best];
    const std::string& name = dataset.column(*best).name;
    plan.assignments[name] = current.generalization_level(*best);
    plan.steps.push_back({name, current.generalization_level(*best), current_min});
  }
  plan.achieved = current_min;
  plan.target_met = !violated(current);
  return plan;
}

Dataset ApplyAbstraction(const Dataset& dataset, const AbstractionPlan& plan) {
  Dataset out = dataset;
  for (const auto& [name, level] : plan.assignments) {
    out = ApplyGeneralization(out, out.ColumnIndex(name), level);
  }
  return out;
}

}  // namespace entropylens
