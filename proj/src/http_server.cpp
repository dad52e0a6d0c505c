#include "maxloss/http_server.hpp"

#include <httplib.h>

#include "maxloss/replay.hpp"

namespace maxloss::service {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

// Maps library errors onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const UnknownSession& e) {
    send_error(res, 404, e.what());
  } catch (const SessionOver& e) {
    send_error(res, 409, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("malformed request: ") + e.what());
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

std::size_t from_param(const httplib::Request& req) {
  if (!req.has_param("from")) return 0;
  const std::string v = req.get_param_value("from");
  std::size_t used = 0;
  const unsigned long long k = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("'from' must be a turn number");
  return static_cast<std::size_t>(k);
}

}  // namespace

json state_to_json(const SessionState& s) {
  return {{"session_id", s.session_id},
          {"status", game::to_string(s.status)},
          {"turns_played", s.turns_played},
          {"max_turns", s.max_turns},
          {"position", replay::position_to_json(s.position)}};
}

struct HttpServer::Impl {
  explicit Impl(SessionManager& m) : sessions(m) {}
  SessionManager& sessions;
  httplib::Server server;
};

HttpServer::HttpServer(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {
  auto& srv = impl_->server;
  SessionManager& mgr = impl_->sessions;

  srv.Post("/sessions", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      SessionConfig config;
      if (!req.body.empty()) {
        const json body = json::parse(req.body);
        if (body.contains("max_turns")) config.max_turns = body.at("max_turns").get<std::uint64_t>();
      }
      const std::string id = mgr.create_session(config);
      send_json(res, 201, {{"session_id", id}, {"state", state_to_json(mgr.state(id))}});
    });
  });

  srv.Get("/sessions", [&mgr](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, {{"sessions", mgr.session_ids()}}); });
  });

  srv.Get(R"(/sessions/([^/]+))", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, state_to_json(mgr.state(req.matches[1]))); });
  });

  srv.Post(R"(/sessions/([^/]+)/turns)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = req.body.empty() ? json::object() : json::parse(req.body);
      const json actions = body.value("actions", json::array());
      if (!actions.is_array()) throw std::invalid_argument("'actions' must be an array");
      TurnResult result = mgr.submit_turn(req.matches[1], [&](const game::GamePosition& pos) {
        std::vector<game::TraderAction> out;
        for (const auto& a : actions) out.push_back(replay::action_from_json(a, pos.price));
        return out;
      });
      send_json(res, 200, {{"turn", replay::turn_to_json(result.record)}, {"state", state_to_json(result.state)}});
    });
  });

  srv.Get(R"(/sessions/([^/]+)/turns)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      json turns = json::array();
      for (const auto& r : mgr.history(req.matches[1], from_param(req))) turns.push_back(replay::turn_to_json(r));
      send_json(res, 200, {{"turns", std::move(turns)}});
    });
  });

  srv.Get(R"(/sessions/([^/]+)/events)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto sub = std::make_shared<Subscription>(mgr.observe(req.matches[1], from_param(req)));
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider("text/event-stream", [sub](std::size_t, httplib::DataSink& sink) {
        while (sink.is_writable()) {
          if (sub->finished()) {
            const std::string end = "event: end\ndata: {}\n\n";
            sink.write(end.data(), end.size());
            sink.done();
            return true;
          }
          if (auto rec = sub->next(std::chrono::milliseconds(200))) {
            const std::string frame = "id: " + std::to_string(rec->turn) + "\nevent: turn\ndata: " +
                                      replay::turn_to_json(*rec).dump() + "\n\n";
            if (!sink.write(frame.data(), frame.size())) return false;
          }
        }
        return false;
      });
    });
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::is_running() const { return impl_->server.is_running(); }

}  // namespace maxloss::service
