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

#ifndef ENTROPYLENS_ERROR_H_
#define ENTROPYLENS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropylens {

enum class ErrorCode {
  // dataset-core
  kMissingColumnConfig,
  kRaggedRow,
  kEmptyDataset,
  kMalformedCsv,
  kDuplicateColumn,
  kUnknownColumn,
  kColumnAlreadyInSubset,
  kUnknownRecord,
  kInvalidConfig,
  kIoError,
  // entropy-metrics / risky-comb
  kInvalidEpsilon0,
  kNoQuasiColumns,
  kInvalidPolicy,
  kTooManyColumns,
  // strategy-planner
  kSchemaMismatch,
  kNoHierarchy,
  kNoHierarchies,
  kLevelOutOfRange,
  kUnparseableCell,
  kInvalidHierarchy,
  kNotCommittable,
  // linkage
  kAmbiguousJoin,
  // report-io
  kSchemaVersionMismatch,
  kMalformedDocument,
};

// Stable identifier for an error code, e.g. "UnknownColumn". The service
// echoes this string in 400 bodies.
std::string_view ErrorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view name() const { return ErrorName(code_); }

 private:
  ErrorCode code_;
};

}  // namespace entropylens

#endif  // ENTROPYLENS_ERROR_H_
