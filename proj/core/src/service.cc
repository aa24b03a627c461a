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

#include <httplib.h>

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entropylens/analysis.h"
#include "entropylens/dataset.h"
#include "entropylens/error.h"
#include "entropylens/report_io.h"
#include "entropylens/schema_config.h"
#include "entropylens/transforms.h"

namespace entropylens {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct ColumnOverride {
  std::optional<ColumnClass> column_class;
  std::optional<bool> consented;
};

struct Session {
  std::mutex mu;
  std::atomic<bool> analyzing{false};
  Clock::time_point last_access = Clock::now();

  Dataset base;
  Dataset current;
  AnalysisConfig config;
  // Class and consent edits, applied before and after every replayed step.
  std::map<std::string, ColumnOverride> overrides;
  std::vector<Transform> history;
  std::optional<std::string> report;  // latest bundle JSON

  explicit Session(Dataset dataset) : base(dataset), current(std::move(dataset)) {}
};

Dataset ApplyOverrides(Dataset dataset, const std::map<std::string, ColumnOverride>& overrides) {
  for (const auto& [name, edit] : overrides) {
    auto c = dataset.FindColumn(name);
    if (!c) continue;
    ColumnMeta meta = dataset.column(*c);
    if (edit.column_class) meta.column_class = *edit.column_class;
    if (edit.consented) meta.consented = *edit.consented;
    dataset = dataset.WithColumnMeta(*c, std::move(meta));
  }
  return dataset;
}

Dataset Replay(const Session& session, const std::vector<Transform>& history) {
  Dataset dataset = ApplyOverrides(session.base, session.overrides);
  for (const auto& step : history) {
    dataset = ApplyOverrides(ApplyTransform(dataset, step, session.config), session.overrides);
  }
  return dataset;
}

std::string NewSessionId() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

void SendJson(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void SendError(httplib::Response& res, int status, std::string_view name,
               const std::string& message) {
  ordered_json body = ordered_json::object();
  body["error"] = name;
  body["message"] = message;
  SendJson(res, status, body);
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedDocument, std::string("request body is not JSON: ") + e.what());
  }
}

ordered_json ColumnsToJson(const Dataset& dataset) {
  ordered_json out = ordered_json::array();
  for (const auto& meta : dataset.columns()) {
    ordered_json c = ordered_json::object();
    c["name"] = meta.name;
    c["class"] = ColumnClassName(meta.column_class);
    c["consented"] = meta.consented;
    c["levels"] = meta.hierarchy ? meta.hierarchy->num_levels() : 1;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

struct HttpService::Impl {
  explicit Impl(ServiceOptions o) : options(std::move(o)) { Routes(); }

  ServiceOptions options;
  httplib::Server server;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;

  void SweepExpired() {
    const auto now = Clock::now();
    for (auto it = sessions.begin(); it != sessions.end();) {
      std::unique_lock session_lock(it->second->mu, std::try_to_lock);
      const bool idle = session_lock.owns_lock() && !it->second->analyzing &&
                        now - it->second->last_access > options.session_ttl;
      session_lock = {};
      it = idle ? sessions.erase(it) : std::next(it);
    }
  }

  std::shared_ptr<Session> Find(const std::string& id) {
    std::lock_guard lock(mu);
    SweepExpired();
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  ordered_json Summary(const std::string& id, const Session& session) const {
    ordered_json out = ordered_json::object();
    out["id"] = id;
    out["digest"] = session.current.Digest();
    out["n_records"] = session.current.num_records();
    out["columns"] = ColumnsToJson(session.current);
    out["config"] = ConfigToJson(session.config);
    out["history"] = ordered_json::array();
    for (const auto& step : session.history) out["history"].push_back(TransformName(step));
    return out;
  }

  // Runs `handler` on the session named by the first path match, with the
  // session locked unless `lock` is false.
  template <typename Handler>
  auto WithSession(Handler handler, bool lock = true) {
    return [this, handler, lock](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto session = Find(id);
      if (!session) return SendError(res, 404, "UnknownSession", "no session '" + id + "'");
      std::unique_lock session_lock(session->mu, std::defer_lock);
      if (lock) session_lock.lock();
      session->last_access = Clock::now();
      handler(req, res, id, *session, session_lock);
    };
  }

  void CreateSession(const httplib::Request& req, httplib::Response& res) {
    std::string csv;
    std::string schema;
    bool fold_case = false;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("csv") || !req.has_file("schema")) {
        return SendError(res, 400, ErrorName(ErrorCode::kInvalidConfig),
                         "upload needs multipart fields \"csv\" and \"schema\"");
      }
      csv = req.get_file_value("csv").content;
      schema = req.get_file_value("schema").content;
      fold_case = req.has_file("fold_case") && req.get_file_value("fold_case").content == "true";
    } else {
      const json body = ParseBody(req);
      if (!body.contains("csv") || !body["csv"].is_string() || !body.contains("schema")) {
        return SendError(res, 400, ErrorName(ErrorCode::kInvalidConfig),
                         "upload needs \"csv\" and \"schema\"");
      }
      csv = body["csv"].get<std::string>();
      schema = body["schema"].is_string() ? body["schema"].get<std::string>() : body["schema"].dump();
      fold_case = body.value("fold_case", false);
    }
    Dataset dataset = LoadDataset(csv, ParseSchemaConfig(schema), LoadOptions{fold_case});
    if (dataset.num_records() > options.max_rows || dataset.num_columns() > options.max_columns) {
      return SendError(res, 413, "DatasetTooLarge",
                       "dataset has " + std::to_string(dataset.num_records()) + " rows and " +
                           std::to_string(dataset.num_columns()) + " columns; limits are " +
                           std::to_string(options.max_rows) + " and " +
                           std::to_string(options.max_columns));
    }
    auto session = std::make_shared<Session>(std::move(dataset));
    session->config.threads = options.analysis_threads;
    const std::string id = NewSessionId();
    ordered_json body = Summary(id, *session);
    {
      std::lock_guard lock(mu);
      SweepExpired();
      sessions[id] = std::move(session);
    }
    SendJson(res, 201, body);
  }

  void Routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.set_payload_max_length(1ull << 30);
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                    std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const Error& e) {
        SendError(res, 400, e.name(), e.what());
      } catch (const std::exception& e) {
        SendError(res, 500, "Internal", e.what());
      }
    });
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir.string());

    server.Get("/transforms", [](const httplib::Request&, httplib::Response& res) {
      ordered_json body = ordered_json::object();
      body["transforms"] = TransformNames();
      SendJson(res, 200, body);
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      CreateSession(req, res);
    });

    server.Get(R"(/sessions/([0-9a-f]+))",
               WithSession([this](const httplib::Request&, httplib::Response& res,
                                  const std::string& id, Session& session, auto&) {
                 SendJson(res, 200, Summary(id, session));
               }));

    server.Delete(R"(/sessions/([0-9a-f]+))",
                  [this](const httplib::Request& req, httplib::Response& res) {
                    std::lock_guard lock(mu);
                    if (sessions.erase(req.matches[1]) == 0) {
                      return SendError(res, 404, "UnknownSession",
                                       "no session '" + std::string(req.matches[1]) + "'");
                    }
                    res.status = 204;
                  });

    server.Put(R"(/sessions/([0-9a-f]+)/config)",
               WithSession([](const httplib::Request& req, httplib::Response& res,
                              const std::string&, Session& session, auto&) {
                 AnalysisConfig config = ConfigFromJson(ParseBody(req), session.config);
                 ResolveAux(session.current, config.aux_columns);
                 session.config = config;
                 SendJson(res, 200, ConfigToJson(session.config));
               }));

    server.Put(R"(/sessions/([0-9a-f]+)/columns/([^/]+))",
               WithSession([](const httplib::Request& req, httplib::Response& res,
                              const std::string&, Session& session, auto&) {
                 const std::string name = req.matches[2];
                 session.current.ColumnIndex(name);
                 const json body = ParseBody(req);
                 ColumnOverride edit;
                 if (auto it = session.overrides.find(name); it != session.overrides.end()) {
                   edit = it->second;
                 }
                 if (body.contains("class")) {
                   auto parsed = body["class"].is_string()
                                     ? ParseColumnClass(body["class"].get<std::string>())
                                     : std::nullopt;
                   if (!parsed) {
                     throw Error(ErrorCode::kInvalidConfig,
                                 "class must be direct, quasi, sensitive or non_identifying");
                   }
                   edit.column_class = parsed;
                 }
                 if (body.contains("consented")) {
                   if (!body["consented"].is_boolean()) {
                     throw Error(ErrorCode::kInvalidConfig, "consented must be a boolean");
                   }
                   edit.consented = body["consented"].get<bool>();
                 }
                 auto overrides = session.overrides;
                 overrides[name] = edit;
                 std::swap(session.overrides, overrides);
                 try {
                   session.current = Replay(session, session.history);
                 } catch (...) {
                   std::swap(session.overrides, overrides);
                   throw;
                 }
                 const ColumnMeta& meta = session.current.column(session.current.ColumnIndex(name));
                 ordered_json out = ordered_json::object();
                 out["name"] = meta.name;
                 out["class"] = ColumnClassName(meta.column_class);
                 out["consented"] = meta.consented;
                 SendJson(res, 200, out);
               }));

    server.Post(
        R"(/sessions/([0-9a-f]+)/analyze)",
        WithSession(
            [](const httplib::Request&, httplib::Response& res, const std::string&,
               Session& session, auto& lock) {
              if (session.analyzing.exchange(true)) {
                return SendError(res, 409, "AnalysisInProgress",
                                 "an analysis is already running for this session");
              }
              struct Reset {
                std::atomic<bool>& flag;
                ~Reset() { flag = false; }
              } reset{session.analyzing};
              lock.lock();
              const Dataset dataset = session.current;
              const AnalysisConfig config = session.config;
              lock.unlock();
              std::string report = RenderReport(AnalyzeToBundle(dataset, config), ReportFormat::kJson);
              lock.lock();
              session.report = report;
              lock.unlock();
              res.status = 200;
              res.set_content(report, "application/json");
            },
            /*lock=*/false));

    server.Get(R"(/sessions/([0-9a-f]+)/report)",
               WithSession([](const httplib::Request&, httplib::Response& res, const std::string&,
                              Session& session, auto&) {
                 if (!session.report) {
                   return SendError(res, 404, "NoReport", "the session has not been analyzed yet");
                 }
                 res.status = 200;
                 res.set_content(*session.report, "application/json");
               }));

    server.Post(R"(/sessions/([0-9a-f]+)/whatif)",
                WithSession([](const httplib::Request& req, httplib::Response& res,
                               const std::string&, Session& session, auto&) {
                  const json body = ParseBody(req);
                  bool commit = false;
                  json transform_json = body;
                  if (body.is_object() && body.contains("commit")) {
                    if (!body["commit"].is_boolean()) {
                      throw Error(ErrorCode::kInvalidConfig, "commit must be a boolean");
                    }
                    commit = body["commit"].get<bool>();
                    transform_json.erase("commit");
                  }
                  const Transform transform = TransformFromJson(transform_json);
                  if (commit && !IsCommittable(transform)) {
                    throw Error(ErrorCode::kNotCommittable,
                                std::string(TransformName(transform)) + " cannot be committed");
                  }
                  const WhatIfResult result =
                      EvaluateWhatIf(session.current, transform, session.config);
                  if (commit) {
                    session.history.push_back(transform);
                    session.current = ApplyOverrides(
                        ApplyTransform(session.current, transform, session.config),
                        session.overrides);
                  }
                  ordered_json out = WhatIfToJson(result, commit);
                  out["history_length"] = session.history.size();
                  out["digest"] = session.current.Digest();
                  SendJson(res, 200, out);
                }));

    server.Post(R"(/sessions/([0-9a-f]+)/undo)",
                WithSession([](const httplib::Request&, httplib::Response& res,
                               const std::string&, Session& session, auto&) {
                  if (session.history.empty()) {
                    return SendError(res, 409, "EmptyHistory", "nothing to undo");
                  }
                  std::vector<Transform> history = session.history;
                  history.pop_back();
                  session.current = Replay(session, history);
                  session.history = std::move(history);
                  ordered_json out = ordered_json::object();
                  out["history_length"] = session.history.size();
                  out["digest"] = session.current.Digest();
                  SendJson(res, 200, out);
                }));
  }
};

HttpService::HttpService(ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

HttpService::~HttpService() { Stop(); }

bool HttpService::Listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpService::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpService::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpService::WaitUntilReady() { impl_->server.wait_until_ready(); }

void HttpService::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

std::size_t HttpService::num_sessions() const {
  std::lock_guard lock(impl_->mu);
  return impl_->sessions.size();
}

}  // namespace entropylens
