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

#ifndef ENTROPYLENS_DATASET_H_
#define ENTROPYLENS_DATASET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropylens/hierarchy.h"

namespace entropylens {

using RecordId = std::uint32_t;

enum class ColumnClass { kDirect, kQuasi, kSensitive, kNonIdentifying };

// "direct" | "quasi" | "sensitive" | "non_identifying"
std::string_view ColumnClassName(ColumnClass column_class);
std::optional<ColumnClass> ParseColumnClass(std::string_view name);

struct ColumnMeta {
  std::string name;
  ColumnClass column_class = ColumnClass::kQuasi;
  bool consented = true;
  std::shared_ptr<const GeneralizationHierarchy> hierarchy;

  friend bool operator==(const ColumnMeta& a, const ColumnMeta& b);
};

// A set of column positions, kept sorted so that equality, ordering and
// hashing do not depend on how the set was built.
class ColumnSubset {
 public:
  ColumnSubset() = default;
  ColumnSubset(std::initializer_list<std::size_t> members);
  explicit ColumnSubset(std::vector<std::size_t> members);

  std::span<const std::size_t> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t column) const;

  ColumnSubset With(std::size_t column) const;
  ColumnSubset Without(std::size_t column) const;
  ColumnSubset Union(const ColumnSubset& other) const;
  bool IsSubsetOf(const ColumnSubset& other) const;
  bool IsStrictSubsetOf(const ColumnSubset& other) const {
    return size() < other.size() && IsSubsetOf(other);
  }

  friend auto operator<=>(const ColumnSubset&, const ColumnSubset&) = default;
  friend bool operator==(const ColumnSubset&, const ColumnSubset&) = default;

 private:
  std::vector<std::size_t> members_;
};

// Immutable table of N >= 1 records. Cells are dictionary-encoded per column;
// copies share column storage, so passing a Dataset by value is cheap.
//
// A generalized column remembers the raw column it was derived from, so that
// re-generalizing a column always starts from the original values.
class Dataset {
 public:
  // Throws EmptyDataset, RaggedRow or DuplicateColumn.
  static Dataset FromRows(std::vector<ColumnMeta> columns,
                          const std::vector<std::vector<std::string>>& rows);

  std::size_t num_records() const { return num_records_; }
  std::size_t num_columns() const { return columns_.size(); }
  const std::vector<ColumnMeta>& columns() const { return columns_; }
  const ColumnMeta& column(std::size_t c) const;

  std::optional<std::size_t> FindColumn(std::string_view name) const;
  // Throws UnknownColumn.
  std::size_t ColumnIndex(std::string_view name) const;
  ColumnSubset SubsetOf(const std::vector<std::string>& names) const;
  // Names in column position order.
  std::vector<std::string> NamesOf(const ColumnSubset& subset) const;
  ColumnSubset ColumnsOfClass(ColumnClass column_class) const;
  std::vector<std::string> ColumnNames() const;

  std::string_view cell(RecordId record, std::size_t c) const;
  std::span<const std::uint32_t> codes(std::size_t c) const;
  std::size_t cardinality(std::size_t c) const;
  std::string_view value(std::size_t c, std::uint32_t code) const;
  std::vector<std::string> Row(RecordId record) const;

  // Current generalization level of a column (0 for raw values).
  std::size_t generalization_level(std::size_t c) const;

  // SHA-256 over names, classes, consent flags and cells, as lowercase hex.
  std::string Digest() const;

  Dataset WithColumnMeta(std::size_t c, ColumnMeta meta) const;
  Dataset DropColumns(const ColumnSubset& drop) const;
  Dataset SelectColumns(const std::vector<std::size_t>& order) const;
  Dataset AppendColumn(ColumnMeta meta, const std::vector<std::string>& cells) const;
  // Rows in the given order; `order` must be a permutation of 0..N-1.
  Dataset PermuteRows(std::span<const RecordId> order) const;
  // Maps the raw values of column c through its hierarchy at `level`.
  // Throws NoHierarchy, LevelOutOfRange or UnparseableCell.
  Dataset WithGeneralizedColumn(std::size_t c, std::size_t level) const;

 private:
  struct ColumnData {
    std::vector<std::string> dictionary;
    std::vector<std::uint32_t> codes;
    std::shared_ptr<const ColumnData> raw;  // null when this is raw data
    std::size_t level = 0;
  };

  static std::shared_ptr<const ColumnData> Encode(
      std::vector<std::string_view> cells);
  static std::shared_ptr<const ColumnData> Permute(
      const std::shared_ptr<const ColumnData>& data,
      std::span<const RecordId> order);
  void CheckColumn(std::size_t c) const;

  std::vector<ColumnMeta> columns_;
  std::vector<std::shared_ptr<const ColumnData>> data_;
  std::size_t num_records_ = 0;
};

}  // namespace entropylens

#endif  // ENTROPYLENS_DATASET_H_
