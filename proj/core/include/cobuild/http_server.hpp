// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "cobuild/session.hpp"

namespace cobuild {

/// HTTP API over a Service.
///
///   POST /sessions                 {"region":{..}, "target":[..]} -> {"id":..}
///   POST /sessions/{id}/messages   {"text":..} -> {"replies":[..],"state":..,"effects":[..]}
///   GET  /sessions/{id}/state
///   GET  /sessions/{id}/events     server-sent events; ?from=N, ?follow=0 to close at the end
///   GET  /repository
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds (port 0 picks a free port) and serves on a background thread.
  /// Returns the bound port. Throws Error{IoError}.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cobuild
