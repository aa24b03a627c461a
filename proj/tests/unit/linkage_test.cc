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

#include <gtest/gtest.h>

#include "entropylens/entropy.h"
#include "entropylens/error.h"
#include "entropylens/risky_comb.h"
#include "entropylens/schema_config.h"
#include "test_support.h"

namespace entropylens {
namespace {

using testing::DataPath;
using testing::LoadToy6;

Dataset Employer() {
  return LoadDatasetFiles(DataPath("employer.csv"), DataPath("employer.schema.json"));
}

LinkSpec EmployerSpec() { return {"employer", "ssn", "ssn", {{"employer_zip"}}}; }

TEST(LinkageTest, WidensWithPrefixedColumn) {
  const Dataset widened = AttachLinkedTable(LoadToy6(), Employer(), EmployerSpec());
  EXPECT_EQ(widened.ColumnNames(),
            (std::vector<std::string>{"ssn", "zip", "sex", "age", "employer.employer_zip"}));
  EXPECT_EQ(widened.column(4).column_class, ColumnClass::kQuasi);
  EXPECT_EQ(widened.cell(0, 4), "94105");
  EXPECT_EQ(widened.cell(1, 4), "60601");
}

TEST(LinkageTest, NewRiskyCombinationAppears) {
  const Dataset widened = AttachLinkedTable(LoadToy6(), Employer(), EmployerSpec());
  const RiskReport report = FindRiskyCombinations(widened, {}, {0.4, 3, {}});
  EXPECT_EQ(testing::Names(widened, report.minimal_risky),
            (std::vector<std::vector<std::string>>{
                {"age"}, {"employer.employer_zip", "sex"}, {"employer.employer_zip", "zip"},
                {"sex", "zip"}}));
}

TEST(LinkageTest, UnmatchedKeysGetMissingValue) {
  const Dataset other = Dataset::FromRows({{"ssn", ColumnClass::kDirect}, {"employer_zip"}},
                                          {{"999", "12345"}});
  const Dataset widened = AttachLinkedTable(LoadToy6(), other, EmployerSpec());
  for (RecordId r = 0; r < 6; ++r) EXPECT_EQ(widened.cell(r, 4), "");
  const Dataset toy6 = LoadToy6();
  for (RecordId r = 0; r < 6; ++r) {
    EXPECT_EQ(Ipp(widened, ColumnSubset{1, 4}, {}, r).epsilon,
              Ipp(toy6, ColumnSubset{1}, {}, r).epsilon);
  }
}

TEST(LinkageTest, DuplicateKeysAreAmbiguous) {
  const Dataset dup = Dataset::FromRows({{"ssn", ColumnClass::kDirect}, {"employer_zip"}},
                                        {{"123-45-0001", "1"}, {"123-45-0001", "2"}});
  try {
    AttachLinkedTable(LoadToy6(), dup, EmployerSpec());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAmbiguousJoin);
    EXPECT_NE(std::string(e.what()).find("123-45-0001"), std::string::npos);
  }
}

TEST(LinkageTest, UnknownColumns) {
  LinkSpec spec = EmployerSpec();
  spec.local_key = "nope";
  EXPECT_THROW(AttachLinkedTable(LoadToy6(), Employer(), spec), Error);
  spec = EmployerSpec();
  spec.imported = {{"nope"}};
  EXPECT_THROW(AttachLinkedTable(LoadToy6(), Employer(), spec), Error);
  spec.imported = {{"ssn"}};
  EXPECT_THROW(AttachLinkedTable(LoadToy6(), Employer(), spec), Error);
}

TEST(LinkageTest, LoadAndAttachFromConfig) {
  const auto path = DataPath("toy6_link.schema.json");
  const SchemaConfig config = ParseSchemaConfig(ReadFile(path), path.parent_path());
  const Dataset widened = LoadAndAttachLink(LoadToy6(), *config.link);
  EXPECT_EQ(widened.num_columns(), 5u);
}

}  // namespace
}  // namespace entropylens
