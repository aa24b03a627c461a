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

#include "entropylens/error.h"

namespace entropylens {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingColumnConfig: return "MissingColumnConfig";
    case ErrorCode::kRaggedRow: return "RaggedRow";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kDuplicateColumn: return "DuplicateColumn";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kColumnAlreadyInSubset: return "ColumnAlreadyInSubset";
    case ErrorCode::kUnknownRecord: return "UnknownRecord";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidEpsilon0: return "InvalidEpsilon0";
    case ErrorCode::kNoQuasiColumns: return "NoQuasiColumns";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kTooManyColumns: return "TooManyColumns";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kNoHierarchy: return "NoHierarchy";
    case ErrorCode::kNoHierarchies: return "NoHierarchies";
    case ErrorCode::kLevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::kUnparseableCell: return "UnparseableCell";
    case ErrorCode::kInvalidHierarchy: return "InvalidHierarchy";
    case ErrorCode::kNotCommittable: return "NotCommittable";
    case ErrorCode::kAmbiguousJoin: return "AmbiguousJoin";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

}  // namespace entropylens
