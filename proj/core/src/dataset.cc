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

#include "entropylens/dataset.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "entropylens/error.h"

namespace entropylens {

std::string_view ColumnClassName(ColumnClass column_class) {
  switch (column_class) {
    case ColumnClass::kDirect: return "direct";
    case ColumnClass::kQuasi: return "quasi";
    case ColumnClass::kSensitive: return "sensitive";
    case ColumnClass::kNonIdentifying: return "non_identifying";
  }
  return "";
}

std::optional<ColumnClass> ParseColumnClass(std::string_view name) {
  for (ColumnClass c : {ColumnClass::kDirect, ColumnClass::kQuasi,
                        ColumnClass::kSensitive, ColumnClass::kNonIdentifying}) {
    if (ColumnClassName(c) == name) return c;
  }
  return std::nullopt;
}

bool operator==(const ColumnMeta& a, const ColumnMeta& b) {
  if (a.name != b.name || a.column_class != b.column_class ||
      a.consented != b.consented) {
    return false;
  }
  if (!a.hierarchy || !b.hierarchy) return !a.hierarchy && !b.hierarchy;
  return *a.hierarchy == *b.hierarchy;
}

// ColumnSubset

ColumnSubset::ColumnSubset(std::initializer_list<std::size_t> members)
    : ColumnSubset(std::vector<std::size_t>(members)) {}

ColumnSubset::ColumnSubset(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ColumnSubset::contains(std::size_t column) const {
  return std::binary_search(members_.begin(), members_.end(), column);
}

ColumnSubset ColumnSubset::With(std::size_t column) const {
  ColumnSubset out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), column);
  if (it == out.members_.end() || *it != column) out.members_.insert(it, column);
  return out;
}

ColumnSubset ColumnSubset::Without(std::size_t column) const {
  ColumnSubset out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), column);
  if (it != out.members_.end() && *it == column) out.members_.erase(it);
  return out;
}

ColumnSubset ColumnSubset::Union(const ColumnSubset& other) const {
  ColumnSubset out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out.members_));
  return out;
}

bool ColumnSubset::IsSubsetOf(const ColumnSubset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

// Dataset

std::shared_ptr<const Dataset::ColumnData> Dataset::Encode(
    std::vector<std::string_view> cells) {
  auto data = std::make_shared<ColumnData>();
  std::unordered_map<std::string_view, std::uint32_t> index;
  data->codes.reserve(cells.size());
  // Dictionary strings are materialized after the pass so the string_view
  // keys above keep pointing at the caller's cells.
  std::vector<std::string_view> dictionary;
  for (std::string_view cell : cells) {
    auto [it, inserted] =
        index.emplace(cell, static_cast<std::uint32_t>(dictionary.size()));
    if (inserted) dictionary.push_back(cell);
    data->codes.push_back(it->second);
  }
  data->dictionary.assign(dictionary.begin(), dictionary.end());
  return data;
}

std::shared_ptr<const Dataset::ColumnData> Dataset::Permute(
    const std::shared_ptr<const ColumnData>& data, std::span<const RecordId> order) {
  auto out = std::make_shared<ColumnData>();
  out->dictionary = data->dictionary;
  out->level = data->level;
  out->codes.reserve(order.size());
  for (RecordId r : order) out->codes.push_back(data->codes[r]);
  if (data->raw) out->raw = Permute(data->raw, order);
  return out;
}

Dataset Dataset::FromRows(std::vector<ColumnMeta> columns,
                          const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "dataset has no records");
  std::unordered_set<std::string_view> names;
  for (const auto& meta : columns) {
    if (!names.insert(meta.name).second) {
      throw Error(ErrorCode::kDuplicateColumn, "duplicate column '" + meta.name + "'");
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw Error(ErrorCode::kRaggedRow,
                  "row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " cells, expected " +
                      std::to_string(columns.size()));
    }
  }
  Dataset ds;
  ds.num_records_ = rows.size();
  ds.columns_ = std::move(columns);
  for (std::size_t c = 0; c < ds.columns_.size(); ++c) {
    std::vector<std::string_view> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows) cells.push_back(row[c]);
    ds.data_.push_back(Encode(std::move(cells)));
  }
  return ds;
}

void Dataset::CheckColumn(std::size_t c) const {
  if (c >= columns_.size()) {
    throw Error(ErrorCode::kUnknownColumn, "no column at position " + std::to_string(c));
  }
}

const ColumnMeta& Dataset::column(std::size_t c) const {
  CheckColumn(c);
  return columns_[c];
}

std::optional<std::size_t> Dataset::FindColumn(std::string_view name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == name) return c;
  }
  return std::nullopt;
}

std::size_t Dataset::ColumnIndex(std::string_view name) const {
  auto c = FindColumn(name);
  if (!c) throw Error(ErrorCode::kUnknownColumn, "unknown column '" + std::string(name) + "'");
  return *c;
}

ColumnSubset Dataset::SubsetOf(const std::vector<std::string>& names) const {
  std::vector<std::size_t> members;
  members.reserve(names.size());
  for (const auto& name : names) members.push_back(ColumnIndex(name));
  return ColumnSubset(std::move(members));
}

std::vector<std::string> Dataset::NamesOf(const ColumnSubset& subset) const {
  std::vector<std::string> names;
  for (std::size_t c : subset) names.push_back(column(c).name);
  return names;
}

ColumnSubset Dataset::ColumnsOfClass(ColumnClass column_class) const {
  std::vector<std::size_t> members;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].column_class == column_class) members.push_back(c);
  }
  return ColumnSubset(std::move(members));
}

std::vector<std::string> Dataset::ColumnNames() const {
  std::vector<std::string> names;
  for (const auto& meta : columns_) names.push_back(meta.name);
  return names;
}

std::string_view Dataset::cell(RecordId record, std::size_t c) const {
  CheckColumn(c);
  if (record >= num_records_) {
    throw Error(ErrorCode::kUnknownRecord, "no record " + std::to_string(record));
  }
  const ColumnData& data = *data_[c];
  return data.dictionary[data.codes[record]];
}

std::span<const std::uint32_t> Dataset::codes(std::size_t c) const {
  CheckColumn(c);
  return data_[c]->codes;
}

std::size_t Dataset::cardinality(std::size_t c) const {
  CheckColumn(c);
  return data_[c]->dictionary.size();
}

std::string_view Dataset::value(std::size_t c, std::uint32_t code) const {
  CheckColumn(c);
  return data_[c]->dictionary.at(code);
}

std::vector<std::string> Dataset::Row(RecordId record) const {
  std::vector<std::string> row;
  row.reserve(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) row.emplace_back(cell(record, c));
  return row;
}

std::size_t Dataset::generalization_level(std::size_t c) const {
  CheckColumn(c);
  return data_[c]->level;
}

std::string Dataset::Digest() const {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  // Length-prefixed fields keep ("ab","c") and ("a","bc") apart.
  auto feed = [&](std::string_view field) {
    const std::uint64_t size = field.size();
    unsigned char prefix[8];
    for (int i = 0; i < 8; ++i) prefix[i] = static_cast<unsigned char>(size >> (8 * i));
    EVP_DigestUpdate(ctx.get(), prefix, sizeof(prefix));
    EVP_DigestUpdate(ctx.get(), field.data(), field.size());
  };
  feed(std::to_string(num_records_));
  for (const auto& meta : columns_) {
    feed(meta.name);
    feed(ColumnClassName(meta.column_class));
    feed(meta.consented ? "1" : "0");
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const ColumnData& data = *data_[c];
    for (std::uint32_t code : data.codes) feed(data.dictionary[code]);
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &md_len);
  std::string hex;
  hex.reserve(2 * md_len);
  char buf[3];
  for (unsigned int i = 0; i < md_len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Dataset Dataset::WithColumnMeta(std::size_t c, ColumnMeta meta) const {
  CheckColumn(c);
  for (std::size_t other = 0; other < columns_.size(); ++other) {
    if (other != c && columns_[other].name == meta.name) {
      throw Error(ErrorCode::kDuplicateColumn, "duplicate column '" + meta.name + "'");
    }
  }
  Dataset out = *this;
  out.columns_[c] = std::move(meta);
  return out;
}

Dataset Dataset::DropColumns(const ColumnSubset& drop) const {
  std::vector<std::size_t> keep;
  for (std::size_t c : drop) CheckColumn(c);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (!drop.contains(c)) keep.push_back(c);
  }
  return SelectColumns(keep);
}

Dataset Dataset::SelectColumns(const std::vector<std::size_t>& order) const {
  Dataset out;
  out.num_records_ = num_records_;
  for (std::size_t c : order) {
    CheckColumn(c);
    out.columns_.push_back(columns_[c]);
    out.data_.push_back(data_[c]);
  }
  std::unordered_set<std::string_view> names;
  for (const auto& meta : out.columns_) {
    if (!names.insert(meta.name).second) {
      throw Error(ErrorCode::kDuplicateColumn, "duplicate column '" + meta.name + "'");
    }
  }
  return out;
}

Dataset Dataset::AppendColumn(ColumnMeta meta, const std::vector<std::string>& cells) const {
  if (cells.size() != num_records_) {
    throw Error(ErrorCode::kRaggedRow, "column '" + meta.name + "' has " +
                                           std::to_string(cells.size()) + " cells, expected " +
                                           std::to_string(num_records_));
  }
  if (FindColumn(meta.name)) {
    throw Error(ErrorCode::kDuplicateColumn, "duplicate column '" + meta.name + "'");
  }
  Dataset out = *this;
  out.columns_.push_back(std::move(meta));
  out.data_.push_back(Encode(std::vector<std::string_view>(cells.begin(), cells.end())));
  return out;
}

Dataset Dataset::PermuteRows(std::span<const RecordId> order) const {
  std::vector<bool> seen(num_records_, false);
  if (order.size() != num_records_) {
    throw Error(ErrorCode::kSchemaMismatch, "row order is not a permutation");
  }
  for (RecordId r : order) {
    if (r >= num_records_ || seen[r]) {
      throw Error(ErrorCode::kSchemaMismatch, "row order is not a permutation");
    }
    seen[r] = true;
  }
  Dataset out;
  out.num_records_ = num_records_;
  out.columns_ = columns_;
  for (const auto& data : data_) out.data_.push_back(Permute(data, order));
  return out;
}

Dataset Dataset::WithGeneralizedColumn(std::size_t c, std::size_t level) const {
  CheckColumn(c);
  const ColumnMeta& meta = columns_[c];
  if (!meta.hierarchy) {
    throw Error(ErrorCode::kNoHierarchy, "column '" + meta.name + "' has no hierarchy");
  }
  const GeneralizationHierarchy& hierarchy = *meta.hierarchy;
  if (level >= hierarchy.num_levels()) {
    throw Error(ErrorCode::kLevelOutOfRange,
                "column '" + meta.name + "' has levels 0.." +
                    std::to_string(hierarchy.top_level()) + ", got " + std::to_string(level));
  }
  std::shared_ptr<const ColumnData> raw = data_[c]->raw ? data_[c]->raw : data_[c];
  Dataset out = *this;
  if (level == 0) {
    out.data_[c] = raw;
    return out;
  }
  // Map each distinct raw value once, then re-encode.
  std::vector<std::string> mapped(raw->dictionary.size());
  for (std::size_t code = 0; code < raw->dictionary.size(); ++code) {
    auto value = hierarchy.Generalize(raw->dictionary[code], level);
    if (!value) {
      const auto row = std::find(raw->codes.begin(), raw->codes.end(), code) - raw->codes.begin();
      throw Error(ErrorCode::kUnparseableCell,
                  "column '" + meta.name + "' row " + std::to_string(row + 1) + ": value '" +
                      raw->dictionary[code] + "' does not fit its " +
                      std::string(HierarchyKindName(hierarchy.kind())) + " hierarchy");
    }
    mapped[code] = std::move(*value);
  }
  std::vector<std::string_view> cells;
  cells.reserve(num_records_);
  for (std::uint32_t code : raw->codes) cells.push_back(mapped[code]);
  auto encoded = Encode(std::move(cells));
  auto data = std::make_shared<ColumnData>(*encoded);
  data->raw = raw;
  data->level = level;
  out.data_[c] = std::move(data);
  return out;
}

}  // namespace entropylens
