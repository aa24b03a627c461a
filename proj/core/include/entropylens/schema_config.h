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

#ifndef ENTROPYLENS_SCHEMA_CONFIG_H_
#define ENTROPYLENS_SCHEMA_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "entropylens/dataset.h"
#include "entropylens/linkage.h"

namespace entropylens {

// "link" section of a schema config: where the linked table lives and how
// it joins the primary table. Paths are resolved against the config's
// directory.
struct LinkConfig {
  LinkSpec spec;
  std::filesystem::path input;
  std::filesystem::path schema;
};

struct SchemaConfig {
  std::vector<ColumnMeta> columns;
  std::optional<LinkConfig> link;

  const ColumnMeta* Find(std::string_view name) const;
};

struct LoadOptions {
  // ASCII lower-casing of every cell after trimming.
  bool fold_case = false;
};

// Parses the JSON schema config. `base_dir` resolves mapping_table files and
// link paths. Throws InvalidConfig, InvalidHierarchy or IoError.
SchemaConfig ParseSchemaConfig(std::string_view json_text,
                               const std::filesystem::path& base_dir = {});

// Parses the table, local_key, foreign_key and import fields of a link
// section. Throws InvalidConfig.
LinkSpec ParseLinkSpec(const nlohmann::json& spec);

// Cells are trimmed of surrounding whitespace; "" is an ordinary value.
// Throws MissingColumnConfig, SchemaMismatch, RaggedRow, EmptyDataset or
// MalformedCsv.
Dataset LoadDataset(std::string_view csv_text, const SchemaConfig& config,
                    const LoadOptions& options = {});

Dataset LoadDatasetFiles(const std::filesystem::path& csv_path,
                         const std::filesystem::path& schema_path,
                         const LoadOptions& options = {});

// Loads the linked table named by `config.link` and attaches it.
Dataset LoadAndAttachLink(const Dataset& primary, const LinkConfig& link,
                          const LoadOptions& options = {});

// Throws IoError.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace entropylens

#endif  // ENTROPYLENS_SCHEMA_CONFIG_H_
