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

#ifndef ENTROPYLENS_PARTITION_H_
#define ENTROPYLENS_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entropylens/dataset.h"

namespace entropylens {

struct EquivalenceBlock {
  // Values of the partition's columns, in column position order.
  std::vector<std::string> key;
  std::size_t size = 0;
  std::vector<RecordId> record_ids;
};

// Partition of a dataset's records by equality on a column subset.
//
// Blocks are numbered in order of their smallest member, and members are
// listed in ascending record order, so two partitions of the same records
// into the same classes are identical field by field.
class PartitionIndex {
 public:
  const Dataset& dataset() const { return dataset_; }
  const ColumnSubset& subset() const { return subset_; }
  std::size_t num_records() const { return block_of_.size(); }
  std::size_t num_blocks() const { return offsets_.size() - 1; }

  // Throws UnknownRecord.
  std::size_t block_index(RecordId record) const;
  std::size_t block_size(std::size_t block) const {
    return offsets_[block + 1] - offsets_[block];
  }
  std::size_t block_size_of(RecordId record) const {
    return block_size(block_index(record));
  }
  std::span<const RecordId> members(std::size_t block) const;
  std::span<const std::uint32_t> block_of_record() const { return block_of_; }

  EquivalenceBlock block(std::size_t block) const;
  std::vector<EquivalenceBlock> blocks() const;

  friend bool operator==(const PartitionIndex& a, const PartitionIndex& b) {
    return a.subset_ == b.subset_ && a.block_of_ == b.block_of_;
  }

 private:
  friend PartitionIndex BuildPartition(const Dataset&, const ColumnSubset&);
  friend PartitionIndex RefinePartition(const PartitionIndex&, std::size_t);

  PartitionIndex(Dataset dataset, ColumnSubset subset)
      : dataset_(std::move(dataset)), subset_(std::move(subset)) {}
  // Fills offsets_ and members_ from block_of_.
  void IndexMembers(std::size_t num_blocks);

  Dataset dataset_;
  ColumnSubset subset_;
  std::vector<std::uint32_t> block_of_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<RecordId> members_;
};

// Groups records by their value tuple on `subset`. An empty subset gives one
// block holding every record. Throws UnknownColumn.
PartitionIndex BuildPartition(const Dataset& dataset, const ColumnSubset& subset);

// Splits every block of `parent` by the values of `column`. Equivalent to
// BuildPartition(parent.subset() + column) in O(N + cardinality) time.
// Throws UnknownColumn or ColumnAlreadyInSubset.
PartitionIndex RefinePartition(const PartitionIndex& parent, std::size_t column);

// Throws UnknownRecord.
EquivalenceBlock BlockOf(const PartitionIndex& partition, RecordId record);

}  // namespace entropylens

#endif  // ENTROPYLENS_PARTITION_H_
