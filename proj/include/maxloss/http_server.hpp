#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "maxloss/service.hpp"

// HTTP front end for SessionManager. See docs/protocol.md for the payloads.
//
//   POST /sessions                  {"max_turns": N}         -> 201 session
//   GET  /sessions                                           -> session ids
//   GET  /sessions/{id}                                      -> state
//   POST /sessions/{id}/turns       {"actions": [...]}       -> turn + state
//   GET  /sessions/{id}/turns?from=k                         -> turn records
//   GET  /sessions/{id}/events?from=k                        -> text/event-stream
namespace maxloss::service {

nlohmann::json state_to_json(const SessionState& s);

class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port, or -1.
  int bind_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  /// Serves until stop(); returns false if the socket failed.
  bool listen_after_bind();
  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace maxloss::service
