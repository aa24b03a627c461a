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

#include "entropylens/csv.h"

#include "entropylens/error.h"

namespace entropylens {

CsvTable ParseCsv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool field_started = false;  // distinguishes an empty last line from ""

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };
  auto malformed = [&](const std::string& what) {
    throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line) + ": " + what);
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '"') {
      if (!field.empty()) malformed("quote inside unquoted field");
      const std::size_t open_line = line;
      ++i;
      while (true) {
        if (i >= text.size()) {
          line = open_line;
          malformed("unterminated quoted field");
        }
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        field.push_back(text[i++]);
      }
      field_started = true;
      if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        malformed("unexpected character after closing quote");
      }
      continue;
    }
    if (c == ',') {
      end_field();
      field_started = true;
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    field.push_back(c);
    field_started = true;
    ++i;
  }
  if (field_started || !field.empty() || !record.empty()) end_record();

  CsvTable table;
  if (records.empty()) return table;
  table.header = std::move(records.front());
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  return table;
}

namespace {

void AppendField(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += field;
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void AppendRecord(std::string& out, const std::vector<std::string>& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i > 0) out.push_back(',');
    AppendField(out, record[i]);
  }
  // A lone empty field would otherwise read back as a blank line.
  if (record.size() == 1 && record[0].empty()) out += "\"\"";
  out.push_back('\n');
}

}  // namespace

std::string WriteCsv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  AppendRecord(out, header);
  for (const auto& row : rows) AppendRecord(out, row);
  return out;
}

std::string DatasetToCsv(const Dataset& dataset) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(dataset.num_records());
  for (RecordId r = 0; r < dataset.num_records(); ++r) rows.push_back(dataset.Row(r));
  return WriteCsv(dataset.ColumnNames(), rows);
}

}  // namespace entropylens
