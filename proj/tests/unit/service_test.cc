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

#include "entropylens/service.h"

#include <atomic>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "test_support.h"

namespace entropylens {
namespace {

using nlohmann::json;
using testing::DataPath;
using testing::ReadData;

class ServiceTest : public ::testing::Test {
 protected:
  void Start(ServiceOptions options = {}) {
    service_ = std::make_unique<HttpService>(std::move(options));
    port_ = service_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->ListenAfterBind(); });
    service_->WaitUntilReady();
  }

  void TearDown() override {
    if (service_) service_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client Client() const {
    httplib::Client client("127.0.0.1", port_);
    client.set_read_timeout(120, 0);
    return client;
  }

  std::string UploadToy6() {
    httplib::MultipartFormDataItems items{
        {"csv", ReadData("toy6.csv"), "toy6.csv", "text/csv"},
        {"schema", ReadData("toy6.schema.json"), "toy6.schema.json", "application/json"}};
    auto res = Client().Post("/sessions", items);
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201) << res->body;
    return json::parse(res->body)["id"].get<std::string>();
  }

  httplib::Result PostJson(const std::string& path, const json& body) {
    return Client().Post(path, body.dump(), "application/json");
  }

  httplib::Result PutJson(const std::string& path, const json& body) {
    return Client().Put(path, body.dump(), "application/json");
  }

  std::unique_ptr<HttpService> service_;
  std::thread thread_;
  int port_ = -1;
};

TEST_F(ServiceTest, UploadSummary) {
  Start();
  httplib::MultipartFormDataItems items{
      {"csv", ReadData("toy6.csv"), "toy6.csv", "text/csv"},
      {"schema", ReadData("toy6.schema.json"), "toy6.schema.json", "application/json"}};
  auto res = Client().Post("/sessions", items);
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 201);
  const json body = json::parse(res->body);
  EXPECT_EQ(body["n_records"], 6);
  EXPECT_EQ(body["columns"].size(), 4u);
  EXPECT_EQ(body["columns"][3]["name"], "age");
  EXPECT_EQ(body["columns"][3]["levels"], 4);
  EXPECT_EQ(body["digest"].get<std::string>().size(), 64u);
  EXPECT_EQ(service_->num_sessions(), 1u);
  const std::string id = body["id"];
  auto again = Client().Get("/sessions/" + id);
  ASSERT_TRUE(again);
  EXPECT_EQ(json::parse(again->body)["digest"], body["digest"]);
}

TEST_F(ServiceTest, JsonUpload) {
  Start();
  auto res = PostJson("/sessions", {{"csv", ReadData("toy6.csv")},
                                    {"schema", json::parse(ReadData("toy6.schema.json"))}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201) << res->body;
}

TEST_F(ServiceTest, AnalyzeMatchesCli) {
  Start();
  const std::string id = UploadToy6();
  auto config = PutJson("/sessions/" + id + "/config", {{"epsilon0", 0.4}, {"k_max", 3}});
  ASSERT_TRUE(config);
  ASSERT_EQ(config->status, 200) << config->body;
  EXPECT_EQ(json::parse(config->body)["epsilon0"], 0.4);

  auto res = Client().Post("/sessions/" + id + "/analyze");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;

  std::ostringstream out, err;
  ASSERT_EQ(cli::Run({"analyze", "--input", DataPath("toy6.csv").string(), "--schema",
                      DataPath("toy6.schema.json").string(), "--epsilon0", "0.4", "--k-max", "3",
                      "--format", "json"},
                     out, err),
            0);
  EXPECT_EQ(res->body, out.str());

  auto report = Client().Get("/sessions/" + id + "/report");
  ASSERT_TRUE(report);
  EXPECT_EQ(report->status, 200);
  EXPECT_EQ(report->body, res->body);
}

TEST_F(ServiceTest, ReportBeforeAnalyzeIs404) {
  Start();
  const std::string id = UploadToy6();
  auto res = Client().Get("/sessions/" + id + "/report");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(json::parse(res->body)["error"], "NoReport");
}

TEST_F(ServiceTest, WhatIfWithoutCommitChangesNothing) {
  Start();
  const std::string id = UploadToy6();
  const std::string before_report = Client().Post("/sessions/" + id + "/analyze")->body;
  const json before = json::parse(Client().Get("/sessions/" + id)->body);

  auto res = PostJson("/sessions/" + id + "/whatif",
                      {{"generalize", {{"column", "age"}, {"level", 2}}}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json whatif = json::parse(res->body);
  EXPECT_FALSE(whatif["committed"].get<bool>());
  EXPECT_GE(whatif["after"]["min_epsilon"].get<double>(),
            whatif["before"]["min_epsilon"].get<double>());
  EXPECT_EQ(whatif["digest"], before["digest"]);
  EXPECT_EQ(whatif["history_length"], 0);

  EXPECT_EQ(Client().Get("/sessions/" + id + "/report")->body, before_report);
  EXPECT_EQ(json::parse(Client().Get("/sessions/" + id)->body)["digest"], before["digest"]);
}

TEST_F(ServiceTest, CommitAndUndo) {
  Start();
  const std::string id = UploadToy6();
  const std::string digest = json::parse(Client().Get("/sessions/" + id)->body)["digest"];

  auto commit = PostJson("/sessions/" + id + "/whatif",
                         {{"generalize", {{"column", "age"}, {"level", 2}}}, {"commit", true}});
  ASSERT_TRUE(commit);
  ASSERT_EQ(commit->status, 200) << commit->body;
  const json committed = json::parse(commit->body);
  EXPECT_TRUE(committed["committed"].get<bool>());
  EXPECT_EQ(committed["history_length"], 1);
  EXPECT_NE(committed["digest"], digest);
  EXPECT_EQ(json::parse(Client().Get("/sessions/" + id)->body)["history"],
            json::parse(R"(["generalize"])"));

  auto undo = Client().Post("/sessions/" + id + "/undo");
  ASSERT_TRUE(undo);
  ASSERT_EQ(undo->status, 200);
  EXPECT_EQ(json::parse(undo->body)["digest"], digest);
  EXPECT_EQ(json::parse(undo->body)["history_length"], 0);

  auto empty = Client().Post("/sessions/" + id + "/undo");
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->status, 409);
  EXPECT_EQ(json::parse(empty->body)["error"], "EmptyHistory");
}

TEST_F(ServiceTest, SeparateCannotBeCommitted) {
  Start();
  const std::string id = UploadToy6();
  auto preview = PostJson("/sessions/" + id + "/whatif", {{"separate", json::object()}});
  ASSERT_TRUE(preview);
  EXPECT_EQ(preview->status, 200) << preview->body;
  auto res = PostJson("/sessions/" + id + "/whatif", {{"separate", json::object()}, {"commit", true}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["error"], "NotCommittable");
}

TEST_F(ServiceTest, ErrorMapping) {
  Start();
  auto unknown = Client().Post("/sessions/deadbeef/analyze");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);
  EXPECT_EQ(json::parse(unknown->body)["error"], "UnknownSession");

  const std::string id = UploadToy6();
  auto bad_config = PutJson("/sessions/" + id + "/config", {{"epsilon0", 2.0}});
  ASSERT_TRUE(bad_config);
  EXPECT_EQ(bad_config->status, 400);
  EXPECT_EQ(json::parse(bad_config->body)["error"], "InvalidEpsilon0");

  auto bad_aux = PutJson("/sessions/" + id + "/config", {{"aux_columns", {"nope"}}});
  ASSERT_TRUE(bad_aux);
  EXPECT_EQ(bad_aux->status, 400);

  auto bad_transform = PostJson("/sessions/" + id + "/whatif", {{"shuffle", json::object()}});
  ASSERT_TRUE(bad_transform);
  EXPECT_EQ(bad_transform->status, 400);

  auto not_json = Client().Put("/sessions/" + id + "/config", "{", "application/json");
  ASSERT_TRUE(not_json);
  EXPECT_EQ(not_json->status, 400);
  EXPECT_EQ(json::parse(not_json->body)["error"], "MalformedDocument");

  auto bad_csv = PostJson("/sessions", {{"csv", "ssn,zip\n1\n"},
                                        {"schema", json::parse(ReadData("toy6.schema.json"))}});
  ASSERT_TRUE(bad_csv);
  EXPECT_EQ(bad_csv->status, 400);
}

TEST_F(ServiceTest, UploadCaps) {
  ServiceOptions options;
  options.max_rows = 5;
  Start(options);
  httplib::MultipartFormDataItems items{{"csv", ReadData("toy6.csv"), "", ""},
                                        {"schema", ReadData("toy6.schema.json"), "", ""}};
  auto res = Client().Post("/sessions", items);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);
  EXPECT_EQ(json::parse(res->body)["error"], "DatasetTooLarge");
  EXPECT_EQ(service_->num_sessions(), 0u);
}

TEST_F(ServiceTest, ColumnCap) {
  ServiceOptions options;
  options.max_columns = 3;
  Start(options);
  httplib::MultipartFormDataItems items{{"csv", ReadData("toy6.csv"), "", ""},
                                        {"schema", ReadData("toy6.schema.json"), "", ""}};
  auto res = Client().Post("/sessions", items);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);
}

TEST_F(ServiceTest, TransformsAndCors) {
  Start();
  auto res = Client().Get("/transforms");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["transforms"],
            json::parse(R"(["generalize","minimize","hide","separate","link"])"));
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto preflight = Client().Options("/sessions");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
}

TEST_F(ServiceTest, ColumnEditsReclassify) {
  Start();
  const std::string id = UploadToy6();
  ASSERT_EQ(PutJson("/sessions/" + id + "/config", {{"epsilon0", 0.4}})->status, 200);
  auto edit = PutJson("/sessions/" + id + "/columns/age", {{"class", "non_identifying"}});
  ASSERT_TRUE(edit);
  ASSERT_EQ(edit->status, 200) << edit->body;
  EXPECT_EQ(json::parse(edit->body)["class"], "non_identifying");
  const json report = json::parse(Client().Post("/sessions/" + id + "/analyze")->body);
  EXPECT_EQ(report["minimal_risky"], json::parse(R"([["sex","zip"]])"));

  auto bad = PutJson("/sessions/" + id + "/columns/age", {{"class", "secret"}});
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto missing = PutJson("/sessions/" + id + "/columns/height", {{"class", "quasi"}});
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 400);
}

TEST_F(ServiceTest, ColumnEditsSurviveUndo) {
  Start();
  const std::string id = UploadToy6();
  ASSERT_EQ(PutJson("/sessions/" + id + "/columns/zip", {{"consented", false}})->status, 200);
  ASSERT_EQ(PostJson("/sessions/" + id + "/whatif", {{"minimize", json::object()}, {"commit", true}})
                ->status,
            200);
  json summary = json::parse(Client().Get("/sessions/" + id)->body);
  EXPECT_EQ(summary["columns"].size(), 3u);
  ASSERT_EQ(Client().Post("/sessions/" + id + "/undo")->status, 200);
  summary = json::parse(Client().Get("/sessions/" + id)->body);
  ASSERT_EQ(summary["columns"].size(), 4u);
  EXPECT_FALSE(summary["columns"][1]["consented"].get<bool>());
}

TEST_F(ServiceTest, SessionsAreIsolated) {
  Start();
  const std::string a = UploadToy6();
  const std::string b = UploadToy6();
  ASSERT_NE(a, b);
  ASSERT_EQ(PutJson("/sessions/" + a + "/config", {{"epsilon0", 0.01}, {"k_max", 1}})->status, 200);
  ASSERT_EQ(PostJson("/sessions/" + b + "/whatif", {{"generalize", {{"column", "zip"}, {"level", 2}}},
                                                   {"commit", true}})
                ->status,
            200);
  std::future<std::string> ra =
      std::async(std::launch::async, [&] { return Client().Post("/sessions/" + a + "/analyze")->body; });
  std::future<std::string> rb =
      std::async(std::launch::async, [&] { return Client().Post("/sessions/" + b + "/analyze")->body; });
  const json report_a = json::parse(ra.get());
  const json report_b = json::parse(rb.get());
  EXPECT_EQ(report_a["minimal_risky"], json::array());
  EXPECT_EQ(report_a["config"]["k_max"], 1);
  EXPECT_EQ(report_b["config"]["k_max"], 3);
  EXPECT_NE(report_a["dataset"]["digest"], report_b["dataset"]["digest"]);
  EXPECT_EQ(json::parse(Client().Get("/sessions/" + a)->body)["history"], json::array());

  auto del = Client().Delete("/sessions/" + a);
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 204);
  EXPECT_EQ(Client().Get("/sessions/" + a)->status, 404);
  EXPECT_EQ(Client().Get("/sessions/" + b)->status, 200);
}

TEST_F(ServiceTest, ConcurrentAnalyzeOfOneSessionIsRejected) {
  ServiceOptions options;
  options.analysis_threads = 1;
  Start(options);
  std::mt19937_64 rng(11);
  std::ostringstream csv;
  json schema = {{"columns", json::array()}};
  for (int c = 0; c < 10; ++c) {
    csv << (c ? "," : "") << "q" << c;
    schema["columns"].push_back({{"name", "q" + std::to_string(c)}, {"class", "quasi"}});
  }
  csv << "\n";
  for (int r = 0; r < 60000; ++r) {
    for (int c = 0; c < 10; ++c) csv << (c ? "," : "") << rng() % 8;
    csv << "\n";
  }
  auto created = PostJson("/sessions", {{"csv", csv.str()}, {"schema", schema}});
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201) << created->body;
  const std::string id = json::parse(created->body)["id"];
  ASSERT_EQ(PutJson("/sessions/" + id + "/config", {{"k_max", 4}})->status, 200);

  std::atomic<bool> done{false};
  std::future<int> first = std::async(std::launch::async, [&] {
    const int status = Client().Post("/sessions/" + id + "/analyze")->status;
    done = true;
    return status;
  });
  int conflicts = 0;
  int successes = 0;
  while (!done && conflicts == 0) {
    auto res = Client().Post("/sessions/" + id + "/analyze");
    ASSERT_TRUE(res);
    if (res->status == 409) {
      ++conflicts;
      EXPECT_EQ(json::parse(res->body)["error"], "AnalysisInProgress");
    } else {
      EXPECT_EQ(res->status, 200);
      ++successes;
    }
  }
  const int status = first.get();
  if (status == 409) ++conflicts;
  if (status == 200) ++successes;
  EXPECT_GE(conflicts, 1);
  EXPECT_GE(successes, 1);
}

}  // namespace
}  // namespace entropylens
