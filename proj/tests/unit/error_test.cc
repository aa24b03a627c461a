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

#include <gtest/gtest.h>

namespace entropylens {
namespace {

TEST(ErrorTest, NameMatchesCode) {
  EXPECT_EQ(ErrorName(ErrorCode::kUnknownColumn), "UnknownColumn");
  EXPECT_EQ(ErrorName(ErrorCode::kRaggedRow), "RaggedRow");
  EXPECT_EQ(ErrorName(ErrorCode::kSchemaVersionMismatch), "SchemaVersionMismatch");
}

TEST(ErrorTest, CarriesCodeAndMessage) {
  const Error error(ErrorCode::kInvalidEpsilon0, "epsilon0 out of range");
  EXPECT_EQ(error.code(), ErrorCode::kInvalidEpsilon0);
  EXPECT_EQ(error.name(), "InvalidEpsilon0");
  EXPECT_STREQ(error.what(), "epsilon0 out of range");
}

}  // namespace
}  // namespace entropylens
