// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/http_server.hpp"

#include <httplib.h>

#include <thread>

#include "cobuild/error.hpp"

namespace cobuild {
namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::UnknownSession: return 404;
    case Errc::Busy: return 409;
    default: return 400;
  }
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, Json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}},
            status_for(e.code()));
}

std::string sse_frame(const Event& e) {
  Json data = {{"seq", e.seq}, {"type", e.type}, {"data", e.data}};
  return "id: " + std::to_string(e.seq) + "\nevent: " + e.type + "\ndata: " + data.dump() + "\n\n";
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    // Browser preflight for JSON POSTs.
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        SessionConfig config;
        if (!req.body.empty()) {
          Json body = Json::parse(req.body);
          if (body.contains("region")) {
            const auto& r = body["region"];
            config.dims = {r.at("width").get<int>(), r.at("height").get<int>(),
                           r.at("depth").get<int>()};
          }
          if (body.contains("target")) config.target = blocks_from_json(body["target"]);
        }
        send_json(res, Json{{"id", service.create_session(config)}}, 201);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const Json::exception& e) {
        send_error(res, Error(Errc::BadConfig, e.what()));
      }
    });

    server.Post(R"(/sessions/([^/]+)/messages)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  try {
                    Json body = Json::parse(req.body);
                    std::string text = body.at("text").get<std::string>();
                    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
                      throw Error(Errc::ParseError, "message text is empty");
                    }
                    MessageReply reply = service.post_message(req.matches[1], text);
                    send_json(res, Json{{"replies", reply.replies},
                                        {"state", std::string(to_string(reply.state))},
                                        {"effects", effects_to_json(reply.effects)}});
                  } catch (const Error& e) {
                    send_error(res, e);
                  } catch (const Json::exception& e) {
                    send_error(res, Error(Errc::ParseError, e.what()));
                  }
                });

    server.Get(R"(/sessions/([^/]+)/state)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 try {
                   send_json(res, service.state(req.matches[1]));
                 } catch (const Error& e) {
                   send_error(res, e);
                 }
               });

    server.Get(R"(/sessions/([^/]+)/events)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 std::string id = req.matches[1];
                 std::size_t from = 0;
                 bool follow = req.get_param_value("follow") != "0";
                 try {
                   if (req.has_param("from")) from = std::stoul(req.get_param_value("from"));
                   service.state(id);
                 } catch (const Error& e) {
                   return send_error(res, e);
                 } catch (const std::exception& e) {
                   return send_error(res, Error(Errc::ParseError, e.what()));
                 }
                 auto next = std::make_shared<std::size_t>(from);
                 res.set_header("Cache-Control", "no-cache");
                 res.set_chunked_content_provider(
                     "text/event-stream",
                     [this, id, next, follow](std::size_t, httplib::DataSink& sink) {
                       auto wait = follow ? std::chrono::milliseconds(250)
                                          : std::chrono::milliseconds(0);
                       std::vector<Event> batch;
                       try {
                         batch = service.events(id, *next, wait);
                       } catch (const Error&) {
                         sink.done();
                         return true;
                       }
                       for (const auto& e : batch) {
                         std::string frame = sse_frame(e);
                         if (!sink.write(frame.data(), frame.size())) return false;
                         *next = e.seq + 1;
                       }
                       if (!follow || stopping) {
                         sink.done();
                       } else if (batch.empty() && !sink.is_writable()) {
                         return false;
                       }
                       return true;
                     });
               });

    server.Get("/repository", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(service.repository_json(), "application/json");
    });
  }

  Service& service;
  httplib::Server server;
  std::thread thread;
  std::atomic<bool> stopping{false};
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(Errc::IoError, "cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    if (impl_->stopping) return;
    throw Error(Errc::IoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->stopping = true;
  impl_->service.shutdown();
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace cobuild
