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

#include <random>

#include <gtest/gtest.h>

#include "entropylens/error.h"
#include "test_support.h"

namespace entropylens {
namespace {

using testing::LoadToy6;

constexpr std::size_t kZip = 1, kSex = 2, kAge = 3;

RiskPolicy Toy6Policy() { return {0.4, 3, RiskTrigger::AnyRecord()}; }

TEST(RiskyCombTest, Toy6MinimalSets) {
  const Dataset ds = LoadToy6();
  const RiskReport report = FindRiskyCombinations(ds, {}, Toy6Policy());
  EXPECT_EQ(report.minimal_risky, (std::vector<ColumnSubset>{{kAge}, {kZip, kSex}}));
  EXPECT_EQ(report.quasi_columns, (ColumnSubset{kZip, kSex, kAge}));
  EXPECT_TRUE(report.already_identified.empty());
}

TEST(RiskyCombTest, Toy6PerRecord) {
  const Dataset ds = LoadToy6();
  const RiskReport report = FindRiskyCombinations(ds, {}, Toy6Policy());
  EXPECT_EQ(RiskyAttributeSet(report, 2), (std::vector<ColumnSubset>{{kAge}, {kZip, kSex}}));
  EXPECT_EQ(RiskyAttributeSet(report, 5), (std::vector<ColumnSubset>{{kAge}, {kZip, kSex}}));
  // r0 shares its {zip,sex} block with r1, and 1/log2(6) <= 0.4.
  EXPECT_EQ(RiskyAttributeSet(report, 0), (std::vector<ColumnSubset>{{kAge}, {kZip, kSex}}));
  EXPECT_THROW(RiskyAttributeSet(report, 6), Error);
}

TEST(RiskyCombTest, Toy6SupersetsAreRiskyByImplication) {
  const Dataset ds = LoadToy6();
  const RiskReport report = FindRiskyCombinations(ds, {}, Toy6Policy());
  const SubsetResult* zip_age = report.Find({kZip, kAge});
  ASSERT_NE(zip_age, nullptr);
  EXPECT_TRUE(zip_age->risky);
  EXPECT_TRUE(zip_age->by_implication);
  EXPECT_FALSE(zip_age->summary.has_value());
  const SubsetResult* sex = report.Find({kSex});
  ASSERT_NE(sex, nullptr);
  EXPECT_FALSE(sex->risky);
  ASSERT_TRUE(sex->summary.has_value());
  EXPECT_NEAR(sex->summary->min_epsilon, 0.61314719276545, 1e-9);
  // All 7 non-empty subsets of 3 columns are reported.
  EXPECT_EQ(report.per_subset.size(), 7u);
}

TEST(RiskyCombTest, HighThresholdMakesEverySingletonRisky) {
  const Dataset ds = LoadToy6();
  const RiskReport report = FindRiskyCombinations(ds, {}, {0.9, 3, RiskTrigger::AnyRecord()});
  EXPECT_EQ(report.minimal_risky, (std::vector<ColumnSubset>{{kZip}, {kSex}, {kAge}}));
}

TEST(RiskyCombTest, FractionTrigger) {
  const Dataset ds = LoadToy6();
  // At epsilon0 0.3 only unique records are at risk: each pair puts 2 of 6
  // records at risk, the full triple 4 of 6.
  const RiskReport any = FindRiskyCombinations(ds, {}, {0.3, 3, RiskTrigger::AnyRecord()});
  EXPECT_EQ(any.minimal_risky,
            (std::vector<ColumnSubset>{{kZip, kSex}, {kZip, kAge}, {kSex, kAge}}));
  const RiskReport half =
      FindRiskyCombinations(ds, {}, {0.3, 3, RiskTrigger::FractionAtLeast(0.5)});
  EXPECT_EQ(half.minimal_risky, (std::vector<ColumnSubset>{{kZip, kSex, kAge}}));
  const RiskReport third =
      FindRiskyCombinations(ds, {}, {0.3, 3, RiskTrigger::FractionAtLeast(1.0 / 3.0)});
  EXPECT_EQ(third.minimal_risky, any.minimal_risky);
}

TEST(RiskyCombTest, PolicyValidation) {
  const Dataset ds = LoadToy6();
  EXPECT_THROW(FindRiskyCombinations(ds, {}, {0.0, 3, {}}), Error);
  EXPECT_THROW(FindRiskyCombinations(ds, {}, {0.5, 0, {}}), Error);
  EXPECT_THROW(FindRiskyCombinations(ds, {}, {0.5, 4, {}}), Error);
  EXPECT_THROW(FindRiskyCombinations(ds, {}, {0.5, 2, RiskTrigger::FractionAtLeast(0.0)}),
               Error);
  const Dataset no_quasi = ds.DropColumns(ColumnSubset{kZip, kSex, kAge});
  try {
    FindRiskyCombinations(no_quasi, {}, {0.5, 1, {}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoQuasiColumns);
  }
}

TEST(RiskyCombTest, AlreadyIdentifiedRecordsAreExcluded) {
  const Dataset ds = LoadToy6();
  const RiskReport report =
      FindRiskyCombinations(ds, AuxModel{ColumnSubset{kZip, kSex}}, {0.4, 1, {}});
  EXPECT_EQ(report.already_identified, (std::vector<RecordId>{2, 5}));
  for (RecordId r : report.already_identified) EXPECT_FALSE(report.per_record.contains(r));
}

TEST(RiskyCombTest, MatchesBruteForceAndReference) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset ds = testing::RandomDataset(rng, {.max_records = 80, .max_columns = 6});
    const ColumnSubset quasi = ds.ColumnsOfClass(ColumnClass::kQuasi);
    const ColumnSubset aux = trial % 3 == 0 ? testing::RandomSubset(rng, quasi) : ColumnSubset{};
    const double eps = std::vector<double>{0.2, 0.4, 0.6, 0.9}[trial % 4];
    const RiskPolicy policy{eps, 1 + rng() % quasi.size(), RiskTrigger::AnyRecord()};
    const RiskReport fast = FindRiskyCombinations(ds, AuxModel{aux}, policy);
    const RiskReport slow = BruteForceOracle(ds, AuxModel{aux}, policy);
    const auto reference = testing::ReferenceRiskyCombinations(ds, aux, policy, LogBase::kTwo);
    EXPECT_EQ(fast.minimal_risky, slow.minimal_risky);
    EXPECT_EQ(fast.per_record, slow.per_record);
    EXPECT_EQ(fast.minimal_risky, reference.minimal_risky);
    EXPECT_EQ(fast.per_record, reference.per_record);
    EXPECT_EQ(fast.already_identified, reference.already_identified);
  }
}

TEST(RiskyCombTest, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(5);
  const Dataset ds = testing::RandomDataset(
      rng, {.min_records = 300, .max_records = 300, .min_columns = 7, .max_columns = 7});
  const RiskPolicy policy{0.5, 4, {}};
  const RiskReport one = FindRiskyCombinations(ds, {}, policy, LogBase::kTwo, {.threads = 1});
  const RiskReport four = FindRiskyCombinations(ds, {}, policy, LogBase::kTwo, {.threads = 4});
  EXPECT_EQ(one.minimal_risky, four.minimal_risky);
  EXPECT_EQ(one.per_record, four.per_record);
  ASSERT_EQ(one.per_subset.size(), four.per_subset.size());
  for (std::size_t i = 0; i < one.per_subset.size(); ++i) {
    EXPECT_EQ(one.per_subset[i].subset, four.per_subset[i].subset);
    EXPECT_EQ(one.per_subset[i].summary, four.per_subset[i].summary);
  }
}

TEST(RiskyCombTest, MinimalElements) {
  const auto minimal = MinimalElements({{1, 2}, {1}, {2, 3}, {1, 2, 3}, {4}});
  EXPECT_EQ(minimal, (std::vector<ColumnSubset>{{1}, {4}, {2, 3}}));
  EXPECT_TRUE(CanonicalSubsetLess({5}, {1, 2}));
  EXPECT_TRUE(CanonicalSubsetLess({1, 3}, {2, 3}));
}

TEST(RiskyCombTest, OracleColumnCap) {
  std::vector<ColumnMeta> columns;
  std::vector<std::string> row;
  for (std::size_t c = 0; c <= kOracleMaxColumns; ++c) {
    columns.push_back({"c" + std::to_string(c)});
    row.push_back("x");
  }
  const Dataset wide = Dataset::FromRows(columns, {row, row});
  EXPECT_THROW(BruteForceOracle(wide, {}, {0.5, 1, {}}), Error);
}

TEST(TabulationTableTest, LevelsAndPartitions) {
  const Dataset ds = LoadToy6();
  TabulationTable table(BuildPartition(ds, {}));
  EXPECT_EQ(table.baseline().num_blocks(), 1u);
  table.level(1)[ColumnSubset{kSex}] = {};
  EXPECT_NE(table.Find({kSex}), nullptr);
  EXPECT_EQ(table.Find({kZip}), nullptr);
  EXPECT_NE(table.PartitionFor({}), nullptr);
}

}  // namespace
}  // namespace entropylens
