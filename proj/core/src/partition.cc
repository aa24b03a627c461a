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

#include <limits>
#include <map>

#include "entropylens/error.h"

namespace entropylens {
namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

void CheckRecord(RecordId record, std::size_t num_records) {
  if (record >= num_records) {
    throw Error(ErrorCode::kUnknownRecord, "no record " + std::to_string(record) +
                                               " (dataset has " +
                                               std::to_string(num_records) + ")");
  }
}

}  // namespace

void PartitionIndex::IndexMembers(std::size_t num_blocks) {
  offsets_.assign(num_blocks + 1, 0);
  for (std::uint32_t b : block_of_) ++offsets_[b + 1];
  for (std::size_t b = 0; b < num_blocks; ++b) offsets_[b + 1] += offsets_[b];
  members_.resize(block_of_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (RecordId r = 0; r < block_of_.size(); ++r) members_[cursor[block_of_[r]]++] = r;
}

std::size_t PartitionIndex::block_index(RecordId record) const {
  CheckRecord(record, block_of_.size());
  return block_of_[record];
}

std::span<const RecordId> PartitionIndex::members(std::size_t block) const {
  return std::span<const RecordId>(members_).subspan(offsets_[block], block_size(block));
}

EquivalenceBlock PartitionIndex::block(std::size_t block) const {
  EquivalenceBlock out;
  auto ids = members(block);
  out.size = ids.size();
  out.record_ids.assign(ids.begin(), ids.end());
  for (std::size_t c : subset_) out.key.emplace_back(dataset_.cell(ids.front(), c));
  return out;
}

std::vector<EquivalenceBlock> PartitionIndex::blocks() const {
  std::vector<EquivalenceBlock> out;
  out.reserve(num_blocks());
  for (std::size_t b = 0; b < num_blocks(); ++b) out.push_back(block(b));
  return out;
}

PartitionIndex BuildPartition(const Dataset& dataset, const ColumnSubset& subset) {
  for (std::size_t c : subset) {
    if (c >= dataset.num_columns()) {
      throw Error(ErrorCode::kUnknownColumn, "no column at position " + std::to_string(c));
    }
  }
  PartitionIndex partition(dataset, subset);
  const std::size_t n = dataset.num_records();
  std::vector<std::span<const std::uint32_t>> columns;
  for (std::size_t c : subset) columns.push_back(dataset.codes(c));

  std::map<std::vector<std::uint32_t>, std::uint32_t> block_by_key;
  std::vector<std::uint32_t> key(columns.size());
  partition.block_of_.resize(n);
  for (RecordId r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) key[i] = columns[i][r];
    auto [it, inserted] =
        block_by_key.emplace(key, static_cast<std::uint32_t>(block_by_key.size()));
    partition.block_of_[r] = it->second;
  }
  partition.IndexMembers(block_by_key.size());
  return partition;
}

PartitionIndex RefinePartition(const PartitionIndex& parent, std::size_t column) {
  const Dataset& dataset = parent.dataset();
  if (column >= dataset.num_columns()) {
    throw Error(ErrorCode::kUnknownColumn, "no column at position " + std::to_string(column));
  }
  if (parent.subset().contains(column)) {
    throw Error(ErrorCode::kColumnAlreadyInSubset,
                "column '" + dataset.column(column).name + "' is already in the subset");
  }
  const std::size_t n = parent.num_records();
  auto codes = dataset.codes(column);

  // Split block by block: `stamp` marks which parent block last saw a code,
  // so one scratch array serves every block.
  std::vector<std::uint32_t> stamp(dataset.cardinality(column), kUnassigned);
  std::vector<std::uint32_t> local(dataset.cardinality(column));
  std::vector<std::uint32_t> provisional(n);
  std::uint32_t next = 0;
  for (std::size_t b = 0; b < parent.num_blocks(); ++b) {
    for (RecordId r : parent.members(b)) {
      const std::uint32_t code = codes[r];
      if (stamp[code] != b) {
        stamp[code] = static_cast<std::uint32_t>(b);
        local[code] = next++;
      }
      provisional[r] = local[code];
    }
  }

  // Renumber by first appearance in record order.
  PartitionIndex child(dataset, parent.subset().With(column));
  std::vector<std::uint32_t> final_id(next, kUnassigned);
  std::uint32_t assigned = 0;
  child.block_of_.resize(n);
  for (RecordId r = 0; r < n; ++r) {
    std::uint32_t& id = final_id[provisional[r]];
    if (id == kUnassigned) id = assigned++;
    child.block_of_[r] = id;
  }
  child.IndexMembers(assigned);
  return child;
}

EquivalenceBlock BlockOf(const PartitionIndex& partition, RecordId record) {
  return partition.block(partition.block_index(record));
}

}  // namespace entropylens
