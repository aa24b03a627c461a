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

#ifndef ENTROPYLENS_LINKAGE_H_
#define ENTROPYLENS_LINKAGE_H_

#include <string>
#include <vector>

#include "entropylens/dataset.h"

namespace entropylens {

struct ImportedColumn {
  std::string column;
  ColumnClass column_class = ColumnClass::kQuasi;
};

// One-hop link from each primary record to at most one row of another table.
struct LinkSpec {
  // Prefix of the imported column names ("<table_name>.<column>").
  std::string table_name;
  std::string local_key;    // column of the primary table
  std::string foreign_key;  // column of the linked table
  std::vector<ImportedColumn> imported;
};

// Widens `primary` with the linked table's imported columns, so that their
// values are analyzed as attributes of the primary records. Records without
// a match get the missing value "". Throws AmbiguousJoin when a primary
// record matches two or more linked rows, UnknownColumn for bad references.
Dataset AttachLinkedTable(const Dataset& primary, const Dataset& linked,
                          const LinkSpec& spec);

}  // namespace entropylens

#endif  // ENTROPYLENS_LINKAGE_H_
