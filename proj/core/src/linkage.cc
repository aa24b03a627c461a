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

#include "entropylens/linkage.h"

#include <unordered_map>

#include "entropylens/error.h"

namespace entropylens {

Dataset AttachLinkedTable(const Dataset& primary, const Dataset& linked,
                          const LinkSpec& spec) {
  const std::size_t local_key = primary.ColumnIndex(spec.local_key);
  const std::size_t foreign_key = linked.ColumnIndex(spec.foreign_key);
  std::vector<std::size_t> imported;
  for (const auto& column : spec.imported) {
    const std::size_t c = linked.ColumnIndex(column.column);
    if (c == foreign_key) {
      throw Error(ErrorCode::kUnknownColumn,
                  "imported column '" + column.column + "' is the foreign key");
    }
    imported.push_back(c);
  }

  std::unordered_map<std::string_view, std::vector<RecordId>> rows_by_key;
  for (RecordId r = 0; r < linked.num_records(); ++r) {
    rows_by_key[linked.cell(r, foreign_key)].push_back(r);
  }

  std::vector<std::optional<RecordId>> match(primary.num_records());
  for (RecordId r = 0; r < primary.num_records(); ++r) {
    auto it = rows_by_key.find(primary.cell(r, local_key));
    if (it == rows_by_key.end()) continue;
    if (it->second.size() > 1) {
      throw Error(ErrorCode::kAmbiguousJoin,
                  "record " + std::to_string(r) + " key '" + std::string(it->first) +
                      "' matches " + std::to_string(it->second.size()) + " rows of '" +
                      spec.table_name + "'");
    }
    match[r] = it->second.front();
  }

  Dataset widened = primary;
  for (std::size_t i = 0; i < imported.size(); ++i) {
    std::vector<std::string> cells;
    cells.reserve(primary.num_records());
    for (RecordId r = 0; r < primary.num_records(); ++r) {
      cells.emplace_back(match[r] ? linked.cell(*match[r], imported[i]) : std::string_view());
    }
    ColumnMeta meta;
    meta.name = spec.table_name + "." + spec.imported[i].column;
    meta.column_class = spec.imported[i].column_class;
    meta.consented = linked.column(imported[i]).consented;
    meta.hierarchy = linked.column(imported[i]).hierarchy;
    widened = widened.AppendColumn(std::move(meta), cells);
  }
  return widened;
}

}  // namespace entropylens
