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

#ifndef ENTROPYLENS_SERVICE_H_
#define ENTROPYLENS_SERVICE_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

namespace entropylens {

struct ServiceOptions {
  // Uploads above either cap are rejected with 413.
  std::size_t max_rows = 1'000'000;
  std::size_t max_columns = 64;
  // Sessions untouched for this long are dropped.
  std::chrono::seconds session_ttl{3600};
  std::string cors_origin = "*";
  // Dashboard assets served under "/" when set.
  std::filesystem::path static_dir;
  // Worker threads per analysis; 0 picks the hardware concurrency.
  std::size_t analysis_threads = 0;
};

// HTTP API over in-memory analysis sessions.
//
//   POST   /sessions                  multipart "csv" + "schema" -> session
//   GET    /sessions/{id}             session summary
//   PUT    /sessions/{id}/config      epsilon0, k_max, aux_columns, risk_trigger, log_base
//   PUT    /sessions/{id}/columns/{c} class and consent edits
//   POST   /sessions/{id}/analyze     canonical bundle JSON
//   GET    /sessions/{id}/report      latest bundle
//   POST   /sessions/{id}/whatif      one transform, optional "commit"
//   POST   /sessions/{id}/undo        drops the last committed transform
//   DELETE /sessions/{id}
//   GET    /transforms                transform names accepted by whatif
//
// Errors carry {"error": <name>, "message": <text>}.
class HttpService {
 public:
  explicit HttpService(ServiceOptions options = {});
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Blocks until Stop(). Returns false when the address cannot be bound.
  bool Listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  // Blocks until Stop().
  bool ListenAfterBind();
  void WaitUntilReady();
  void Stop();

  std::size_t num_sessions() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace entropylens

#endif  // ENTROPYLENS_SERVICE_H_
