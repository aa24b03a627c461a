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

#include "entropylens/dataset.h"

#include <gtest/gtest.h>

#include "entropylens/error.h"
#include "test_support.h"

namespace entropylens {
namespace {

using testing::LoadToy6;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

TEST(ColumnSubsetTest, SortedAndUnique) {
  const ColumnSubset s{3, 1, 3, 2};
  EXPECT_EQ(std::vector<std::size_t>(s.begin(), s.end()), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(s.With(0), (ColumnSubset{0, 1, 2, 3}));
  EXPECT_EQ(s.Without(2), (ColumnSubset{1, 3}));
  EXPECT_TRUE((ColumnSubset{1, 3}).IsStrictSubsetOf(s));
  EXPECT_FALSE(s.IsStrictSubsetOf(s));
  EXPECT_EQ((ColumnSubset{1}).Union(ColumnSubset{4}), (ColumnSubset{1, 4}));
}

TEST(DatasetTest, Toy6Shape) {
  const Dataset ds = LoadToy6();
  EXPECT_EQ(ds.num_records(), 6u);
  EXPECT_EQ(ds.ColumnNames(), (std::vector<std::string>{"ssn", "zip", "sex", "age"}));
  EXPECT_EQ(ds.column(0).column_class, ColumnClass::kDirect);
  EXPECT_EQ(ds.ColumnsOfClass(ColumnClass::kQuasi), (ColumnSubset{1, 2, 3}));
  EXPECT_EQ(ds.cell(2, 2), "F");
  EXPECT_EQ(ds.cardinality(3), 3u);
  EXPECT_EQ(ds.Row(5), (std::vector<std::string>{"123-45-0006", "10001", "M", "41"}));
}

TEST(DatasetTest, FromRowsErrors) {
  const std::vector<ColumnMeta> two{{"a"}, {"b"}};
  EXPECT_EQ(CodeOf([&] { Dataset::FromRows(two, {}); }), ErrorCode::kEmptyDataset);
  EXPECT_EQ(CodeOf([&] { Dataset::FromRows(two, {{"1", "2"}, {"1"}}); }), ErrorCode::kRaggedRow);
  EXPECT_EQ(CodeOf([&] { Dataset::FromRows({{"a"}, {"a"}}, {{"1", "2"}}); }),
            ErrorCode::kDuplicateColumn);
}

TEST(DatasetTest, ColumnLookup) {
  const Dataset ds = LoadToy6();
  EXPECT_EQ(ds.ColumnIndex("age"), 3u);
  EXPECT_EQ(ds.FindColumn("nope"), std::nullopt);
  EXPECT_EQ(CodeOf([&] { ds.ColumnIndex("nope"); }), ErrorCode::kUnknownColumn);
  EXPECT_EQ(ds.SubsetOf({"age", "zip"}), (ColumnSubset{1, 3}));
  EXPECT_EQ(ds.NamesOf(ColumnSubset{3, 1}), (std::vector<std::string>{"zip", "age"}));
}

TEST(DatasetTest, DigestDependsOnContentAndMetadata) {
  const Dataset ds = LoadToy6();
  EXPECT_EQ(ds.Digest(), LoadToy6().Digest());
  EXPECT_EQ(ds.Digest().size(), 64u);
  ColumnMeta meta = ds.column(3);
  meta.consented = false;
  EXPECT_NE(ds.WithColumnMeta(3, meta).Digest(), ds.Digest());
  EXPECT_NE(ds.DropColumns(ColumnSubset{0}).Digest(), ds.Digest());
}

TEST(DatasetTest, ColumnOperationsKeepOriginal) {
  const Dataset ds = LoadToy6();
  const Dataset dropped = ds.DropColumns(ColumnSubset{0, 2});
  EXPECT_EQ(dropped.ColumnNames(), (std::vector<std::string>{"zip", "age"}));
  const Dataset selected = ds.SelectColumns({3, 1});
  EXPECT_EQ(selected.ColumnNames(), (std::vector<std::string>{"age", "zip"}));
  const Dataset appended = ds.AppendColumn({"x", ColumnClass::kSensitive, true, nullptr},
                                           {"a", "b", "c", "d", "e", "f"});
  EXPECT_EQ(appended.num_columns(), 5u);
  EXPECT_EQ(appended.cell(4, 4), "e");
  EXPECT_EQ(ds.num_columns(), 4u);
}

TEST(DatasetTest, PermuteRows) {
  const Dataset ds = LoadToy6();
  const std::vector<RecordId> order{5, 4, 3, 2, 1, 0};
  const Dataset reversed = ds.PermuteRows(order);
  EXPECT_EQ(reversed.Row(0), ds.Row(5));
  EXPECT_EQ(reversed.PermuteRows(order).Digest(), ds.Digest());
  const std::vector<RecordId> bad{0, 0, 1, 2, 3, 4};
  EXPECT_EQ(CodeOf([&] { ds.PermuteRows(bad); }), ErrorCode::kSchemaMismatch);
}

TEST(DatasetTest, GeneralizeAge) {
  const Dataset ds = LoadToy6();
  const Dataset g = ds.WithGeneralizedColumn(3, 2);
  EXPECT_EQ(g.generalization_level(3), 2u);
  EXPECT_EQ(g.cell(0, 3), "[20-39]");
  EXPECT_EQ(g.cell(2, 3), "[20-39]");
  EXPECT_EQ(g.cell(4, 3), "[40-59]");
  EXPECT_EQ(g.cardinality(3), 2u);
  // Re-generalizing starts from the raw values.
  EXPECT_EQ(g.WithGeneralizedColumn(3, 1).cell(0, 3), "[30-39]");
  EXPECT_EQ(g.WithGeneralizedColumn(3, 0).Digest(), ds.Digest());
  EXPECT_EQ(ds.cell(0, 3), "34");
}

TEST(DatasetTest, GeneralizeErrors) {
  const Dataset ds = LoadToy6();
  EXPECT_EQ(CodeOf([&] { ds.WithGeneralizedColumn(2, 1); }), ErrorCode::kNoHierarchy);
  EXPECT_EQ(CodeOf([&] { ds.WithGeneralizedColumn(3, 4); }), ErrorCode::kLevelOutOfRange);
  ColumnMeta meta = ds.column(2);
  meta.hierarchy = std::make_shared<const GeneralizationHierarchy>(
      GeneralizationHierarchy::NumericBins({10}));
  try {
    ds.WithColumnMeta(2, meta).WithGeneralizedColumn(2, 1);
    ADD_FAILURE() << "expected UnparseableCell";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableCell);
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
  }
}

TEST(DatasetTest, ColumnClassNames) {
  EXPECT_EQ(ColumnClassName(ColumnClass::kNonIdentifying), "non_identifying");
  EXPECT_EQ(ParseColumnClass("sensitive"), ColumnClass::kSensitive);
  EXPECT_EQ(ParseColumnClass("Quasi"), std::nullopt);
}

}  // namespace
}  // namespace entropylens
