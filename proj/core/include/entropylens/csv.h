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

#ifndef ENTROPYLENS_CSV_H_
#define ENTROPYLENS_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "entropylens/dataset.h"

namespace entropylens {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180: comma delimiter, double-quote quoting with "" escapes, CRLF or LF
// line ends. A leading UTF-8 byte order mark is skipped. Rows are returned as
// read; width checks belong to the caller. Throws MalformedCsv.
CsvTable ParseCsv(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string WriteCsv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

std::string DatasetToCsv(const Dataset& dataset);

}  // namespace entropylens

#endif  // ENTROPYLENS_CSV_H_
