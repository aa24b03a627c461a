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

#include "entropylens/schema_config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entropylens/csv.h"
#include "entropylens/error.h"

namespace entropylens {
namespace {

using nlohmann::json;

[[noreturn]] void InvalidConfig(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

const json& Require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) InvalidConfig(where + ": missing \"" + key + "\"");
  return *it;
}

template <typename T>
std::vector<T> RequireArray(const json& object, const char* key, const std::string& where) {
  const json& value = Require(object, key, where);
  if (!value.is_array()) InvalidConfig(where + ": \"" + key + "\" must be an array");
  try {
    return value.get<std::vector<T>>();
  } catch (const json::exception&) {
    InvalidConfig(where + ": \"" + key + "\" has elements of the wrong type");
  }
}

std::map<std::string, std::string> ReadMappingFile(const std::filesystem::path& path) {
  const CsvTable table = ParseCsv(ReadFile(path));
  std::map<std::string, std::string> mapping;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 2) {
      InvalidConfig(path.string() + " row " + std::to_string(r + 1) +
                    ": mapping rows need exactly two cells");
    }
    mapping[row[0]] = row[1];
  }
  return mapping;
}

std::shared_ptr<const GeneralizationHierarchy> ParseHierarchy(
    const json& spec, const std::filesystem::path& base_dir, const std::string& where) {
  if (!spec.is_object()) InvalidConfig(where + ": hierarchy must be an object");
  const json& kind_json = Require(spec, "kind", where);
  if (!kind_json.is_string()) InvalidConfig(where + ": hierarchy kind must be a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "numeric_bins") {
    return std::make_shared<const GeneralizationHierarchy>(
        GeneralizationHierarchy::NumericBins(RequireArray<double>(spec, "widths", where)));
  }
  if (kind == "text_prefix") {
    return std::make_shared<const GeneralizationHierarchy>(
        GeneralizationHierarchy::TextPrefix(RequireArray<std::size_t>(spec, "lengths", where)));
  }
  if (kind == "date_granularity") {
    std::vector<DateUnit> units;
    for (const auto& name : RequireArray<std::string>(spec, "units", where)) {
      auto unit = ParseDateUnit(name);
      if (!unit) InvalidConfig(where + ": unknown date unit \"" + name + "\"");
      units.push_back(*unit);
    }
    return std::make_shared<const GeneralizationHierarchy>(
        GeneralizationHierarchy::DateGranularity(std::move(units)));
  }
  if (kind == "mapping_table") {
    std::vector<std::map<std::string, std::string>> tables;
    if (spec.contains("tables")) {
      tables = RequireArray<std::map<std::string, std::string>>(spec, "tables", where);
    } else {
      for (const auto& file : RequireArray<std::string>(spec, "files", where)) {
        tables.push_back(ReadMappingFile(base_dir / file));
      }
    }
    return std::make_shared<const GeneralizationHierarchy>(
        GeneralizationHierarchy::MappingTable(std::move(tables)));
  }
  InvalidConfig(where + ": unknown hierarchy kind \"" + kind + "\"");
}

ColumnClass RequireClass(const json& value, const std::string& where) {
  if (!value.is_string()) InvalidConfig(where + ": class must be a string");
  auto parsed = ParseColumnClass(value.get<std::string>());
  if (!parsed) InvalidConfig(where + ": unknown class \"" + value.get<std::string>() + "\"");
  return *parsed;
}

LinkConfig ParseLink(const json& spec, const std::filesystem::path& base_dir) {
  LinkConfig link;
  link.spec = ParseLinkSpec(spec);
  for (const char* key : {"input", "schema"}) {
    const json& value = Require(spec, key, "link");
    if (!value.is_string()) InvalidConfig(std::string("link: \"") + key + "\" must be a string");
    (key[0] == 'i' ? link.input : link.schema) = base_dir / value.get<std::string>();
  }
  return link;
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

const ColumnMeta* SchemaConfig::Find(std::string_view name) const {
  for (const auto& meta : columns) {
    if (meta.name == name) return &meta;
  }
  return nullptr;
}

LinkSpec ParseLinkSpec(const nlohmann::json& spec) {
  const std::string where = "link";
  if (!spec.is_object()) InvalidConfig("link must be an object");
  auto text = [&](const char* key) {
    const json& value = Require(spec, key, where);
    if (!value.is_string()) InvalidConfig(where + ": \"" + key + "\" must be a string");
    return value.get<std::string>();
  };
  LinkSpec link;
  link.table_name = text("table");
  link.local_key = text("local_key");
  link.foreign_key = text("foreign_key");
  const json& imports = Require(spec, "import", where);
  if (!imports.is_array()) InvalidConfig(where + ": \"import\" must be an array");
  for (const json& item : imports) {
    ImportedColumn column;
    if (item.is_string()) {
      column.column = item.get<std::string>();
    } else if (item.is_object()) {
      const json& name = Require(item, "column", where);
      if (!name.is_string()) InvalidConfig(where + ": import column must be a string");
      column.column = name.get<std::string>();
      if (item.contains("class")) column.column_class = RequireClass(item["class"], where);
    } else {
      InvalidConfig(where + ": import entries must be strings or objects");
    }
    link.imported.push_back(std::move(column));
  }
  return link;
}

SchemaConfig ParseSchemaConfig(std::string_view json_text,
                               const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    InvalidConfig(std::string("schema config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) InvalidConfig("schema config must be a JSON object");
  const json& columns = Require(doc, "columns", "schema config");
  if (!columns.is_array()) InvalidConfig("schema config: \"columns\" must be an array");

  SchemaConfig config;
  for (const json& entry : columns) {
    if (!entry.is_object()) InvalidConfig("schema config: column entries must be objects");
    ColumnMeta meta;
    const json& name = Require(entry, "name", "column");
    if (!name.is_string()) InvalidConfig("column: \"name\" must be a string");
    meta.name = name.get<std::string>();
    const std::string where = "column '" + meta.name + "'";
    if (config.Find(meta.name)) {
      throw Error(ErrorCode::kDuplicateColumn, "duplicate column '" + meta.name + "' in config");
    }
    meta.column_class = RequireClass(Require(entry, "class", where), where);
    if (entry.contains("consented")) {
      if (!entry["consented"].is_boolean()) InvalidConfig(where + ": consented must be boolean");
      meta.consented = entry["consented"].get<bool>();
    }
    if (entry.contains("hierarchy") && !entry["hierarchy"].is_null()) {
      meta.hierarchy = ParseHierarchy(entry["hierarchy"], base_dir, where);
    }
    config.columns.push_back(std::move(meta));
  }
  if (doc.contains("link") && !doc["link"].is_null()) config.link = ParseLink(doc["link"], base_dir);
  return config;
}

Dataset LoadDataset(std::string_view csv_text, const SchemaConfig& config,
                    const LoadOptions& options) {
  CsvTable table = ParseCsv(csv_text);
  if (table.header.empty()) throw Error(ErrorCode::kEmptyDataset, "CSV has no header row");
  while (!table.rows.empty() && table.rows.back().size() == 1 && table.rows.back()[0].empty() &&
         table.header.size() > 1) {
    table.rows.pop_back();
  }

  std::vector<ColumnMeta> columns;
  for (const auto& raw_name : table.header) {
    const std::string name(Trim(raw_name));
    const ColumnMeta* meta = config.Find(name);
    if (!meta) {
      throw Error(ErrorCode::kMissingColumnConfig,
                  "CSV column '" + name + "' has no entry in the schema config");
    }
    columns.push_back(*meta);
  }
  for (const auto& meta : config.columns) {
    if (std::none_of(columns.begin(), columns.end(),
                     [&](const ColumnMeta& c) { return c.name == meta.name; })) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "schema config column '" + meta.name + "' is not in the CSV header");
    }
  }
  if (table.rows.empty()) throw Error(ErrorCode::kEmptyDataset, "CSV has no data rows");

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    auto& row = table.rows[r];
    if (row.size() != columns.size()) {
      throw Error(ErrorCode::kRaggedRow, "row " + std::to_string(r + 1) + " has " +
                                             std::to_string(row.size()) + " cells, expected " +
                                             std::to_string(columns.size()));
    }
    for (auto& cell : row) {
      std::string normalized(Trim(cell));
      if (options.fold_case) {
        for (char& ch : normalized) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      }
      cell = std::move(normalized);
    }
  }
  return Dataset::FromRows(std::move(columns), table.rows);
}

Dataset LoadDatasetFiles(const std::filesystem::path& csv_path,
                         const std::filesystem::path& schema_path, const LoadOptions& options) {
  const SchemaConfig config =
      ParseSchemaConfig(ReadFile(schema_path), schema_path.parent_path());
  return LoadDataset(ReadFile(csv_path), config, options);
}

Dataset LoadAndAttachLink(const Dataset& primary, const LinkConfig& link,
                          const LoadOptions& options) {
  const Dataset linked = LoadDatasetFiles(link.input, link.schema, options);
  return AttachLinkedTable(primary, linked, link.spec);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

}  // namespace entropylens
