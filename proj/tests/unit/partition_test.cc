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

#include "entropylens/partition.h"

#include <random>

#include <gtest/gtest.h>

#include "entropylens/error.h"
#include "test_support.h"

namespace entropylens {
namespace {

using testing::LoadToy6;

TEST(PartitionTest, EmptySubsetIsOneBlock) {
  const Dataset ds = LoadToy6();
  const PartitionIndex p = BuildPartition(ds, {});
  EXPECT_EQ(p.num_blocks(), 1u);
  EXPECT_EQ(p.block_size(0), 6u);
}

TEST(PartitionTest, ZipSexBlocks) {
  const Dataset ds = LoadToy6();
  const PartitionIndex p = BuildPartition(ds, ColumnSubset{1, 2});
  ASSERT_EQ(p.num_blocks(), 4u);
  const auto blocks = p.blocks();
  EXPECT_EQ(blocks[0].key, (std::vector<std::string>{"90210", "M"}));
  EXPECT_EQ(blocks[0].record_ids, (std::vector<RecordId>{0, 1}));
  EXPECT_EQ(BlockOf(p, 2).size, 1u);
  EXPECT_EQ(BlockOf(p, 5).size, 1u);
  EXPECT_EQ(BlockOf(p, 3).record_ids, (std::vector<RecordId>{3, 4}));
}

TEST(PartitionTest, Errors) {
  const Dataset ds = LoadToy6();
  EXPECT_THROW(BuildPartition(ds, ColumnSubset{9}), Error);
  const PartitionIndex p = BuildPartition(ds, ColumnSubset{1});
  EXPECT_THROW(RefinePartition(p, 1), Error);
  EXPECT_THROW(RefinePartition(p, 9), Error);
  EXPECT_THROW(p.block_index(6), Error);
}

TEST(PartitionTest, RefinementMatchesBuildOnRandomData) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset ds = testing::RandomDataset(rng, {.max_records = 150, .max_columns = 6});
    const ColumnSubset all = ds.ColumnsOfClass(ColumnClass::kQuasi);
    const ColumnSubset parent_cols = testing::RandomSubset(rng, all);
    const PartitionIndex parent = BuildPartition(ds, parent_cols);
    for (std::size_t c : all) {
      if (parent_cols.contains(c)) continue;
      EXPECT_EQ(RefinePartition(parent, c), BuildPartition(ds, parent_cols.With(c)));
    }
  }
}

TEST(PartitionTest, BlocksCoverRecordsOnce) {
  std::mt19937_64 rng(11);
  const Dataset ds = testing::RandomDataset(rng, {.min_records = 50, .max_records = 50});
  const PartitionIndex p = BuildPartition(ds, ds.ColumnsOfClass(ColumnClass::kQuasi));
  std::vector<int> seen(ds.num_records(), 0);
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    for (RecordId r : p.members(b)) {
      ++seen[r];
      EXPECT_EQ(p.block_index(r), b);
    }
  }
  for (int count : seen) EXPECT_EQ(count, 1);
}

}  // namespace
}  // namespace entropylens
