#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "helpers.hpp"
#include "maxloss/http_server.hpp"
#include "maxloss/replay.hpp"
#include "maxloss/service.hpp"

using namespace maxloss;
using namespace maxloss::service;
using maxloss::testing::make_trade;
using nlohmann::json;

namespace {

std::vector<game::TraderAction> open(Trade t) { return {game::OpenAction{std::move(t)}}; }

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("maxloss-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("service") {

TEST_CASE("session lifecycle") {
  SessionManager m;
  const auto a = m.create_session();
  const auto b = m.create_session();
  CHECK(a != b);
  const auto s = m.state(a);
  CHECK(s.turns_played == 0);
  CHECK(s.position.price == 0);
  CHECK(s.status == game::GameStatus::live);
  CHECK_THROWS_AS(m.state("nope"), UnknownSession);
  CHECK_THROWS_AS(m.create_session({0}), game::GameError);

  const auto r = m.submit_turn(a, open(make_trade("t", 0, 1, -1)));
  CHECK(r.record.direction == 1);
  CHECK(r.state.position.gain == 1);
  CHECK(r.state.status == game::GameStatus::ended_broker);
  CHECK_THROWS_AS(m.submit_turn(a, std::vector<game::TraderAction>{}), SessionOver);

  const auto e = m.submit_turn(b, std::vector<game::TraderAction>{});
  CHECK(e.state.status == game::GameStatus::ended_broker);
  CHECK(e.state.position.gain == 0);

  const auto c = m.create_session({1});
  m.submit_turn(c, open(make_trade("t", 0, 4, -4)));
  CHECK(m.state(c).status == game::GameStatus::truncated);
}

TEST_CASE("rejected turns change nothing") {
  SessionManager m;
  const auto id = m.create_session();
  CHECK_THROWS_AS(m.submit_turn(id, open(make_trade("t", 0, -1, -2))), game::GameError);
  CHECK(m.state(id).turns_played == 0);
}

TEST_CASE("observers see every turn in order") {
  SessionManager m;
  const auto id = m.create_session({50});
  auto early = m.observe(id);
  m.submit_turn(id, open(make_trade("a", 0, 5, -5)));
  CHECK(early.next(std::chrono::milliseconds(0))->turn == 0);
  CHECK_FALSE(early.next(std::chrono::milliseconds(0)).has_value());

  std::vector<std::uint64_t> seen_a, seen_b;
  std::thread watcher([&] {
    auto sa = m.observe(id, 1);
    auto sb = m.observe(id, 1);
    while (!sa.finished()) if (auto r = sa.next(std::chrono::milliseconds(50))) seen_a.push_back(r->turn);
    while (!sb.finished()) if (auto r = sb.next(std::chrono::milliseconds(50))) seen_b.push_back(r->turn);
  });
  while (m.state(id).status == game::GameStatus::live) m.submit_turn(id, std::vector<game::TraderAction>{});
  watcher.join();
  const std::size_t played = m.state(id).turns_played;
  REQUIRE(seen_a.size() == played - 1);
  for (std::size_t i = 0; i < seen_a.size(); ++i) CHECK(seen_a[i] == i + 1);
  CHECK(seen_a == seen_b);
  CHECK(m.history(id, 2).size() == played - 2);
}

TEST_CASE("concurrent submitters are serialized") {
  SessionManager m;
  const auto id = m.create_session({400});
  m.submit_turn(id, open(make_trade("a", 0, 100, -100)));
  std::vector<std::thread> threads;
  std::atomic<int> accepted{0};
  for (int k = 0; k < 4; ++k)
    threads.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        try {
          m.submit_turn(id, std::vector<game::TraderAction>{});
          ++accepted;
        } catch (const SessionOver&) {
        }
      }
    });
  for (auto& t : threads) t.join();
  const auto h = m.history(id);
  CHECK(h.size() == static_cast<std::size_t>(accepted + 1));
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].start == h[i - 1].end);
}

TEST_CASE("persistence and recovery") {
  const auto dir = fresh_dir("recover");
  std::string id;
  game::GamePosition before;
  {
    SessionManager m(dir);
    id = m.create_session({30});
    m.submit_turn(id, open(make_trade("a", 0, 3, -3)));
    m.submit_turn(id, std::vector<game::TraderAction>{game::CloseAtWillAction{"a"}});
    before = m.state(id).position;
  }
  SessionManager again(dir);
  CHECK(again.recover() == 1);
  CHECK(again.state(id).position == before);
  CHECK(again.recover() == 0);
  again.submit_turn(id, std::vector<game::TraderAction>{});
  CHECK(again.state(id).turns_played == 3);
  const auto fresh = again.create_session();
  CHECK(fresh != id);

  SessionManager third(dir);
  CHECK(third.recover() == 2);
  CHECK(third.state(id).turns_played == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tampered logs are refused") {
  const auto dir = fresh_dir("tamper");
  std::filesystem::create_directories(dir);
  {
    game::Game g;
    g.play(open(make_trade("a", 0, 2, -2)));
    auto turns = g.history();
    turns[0].direction = -1;
    std::ofstream f(dir / "s9.jsonl");
    replay::write_log(f, {game::kDefaultMaxTurns, turns});
  }
  SessionManager m(dir);
  CHECK_THROWS_AS(m.recover(), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("http endpoints and event stream") {
  SessionManager m;
  HttpServer server(m);
  const int port = server.bind_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen_after_bind(); });
  while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(5));

  httplib::Client cli("127.0.0.1", port);
  auto created = cli.Post("/sessions", R"({"max_turns": 20})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = json::parse(created->body).at("session_id");
  CHECK(json::parse(created->body).at("state").at("position").at("price") == 0);

  auto listed = cli.Get("/sessions");
  CHECK(json::parse(listed->body).at("sessions").size() == 1);

  CHECK(cli.Get("/sessions/zzz")->status == 404);
  auto bad = cli.Post("/sessions/" + id + "/turns", R"({"actions":[{"type":"open","id":"x","win":-1,"lose":-2}]})",
                      "application/json");
  CHECK(bad->status == 400);
  CHECK(cli.Post("/sessions/" + id + "/turns", "{oops", "application/json")->status == 400);

  auto t1 = cli.Post("/sessions/" + id + "/turns",
                     R"({"actions":[{"type":"open","id":"x","win":30,"lose":-30,"size":"3/2"}]})", "application/json");
  REQUIRE(t1->status == 200);
  const json j1 = json::parse(t1->body);
  CHECK(j1.at("turn").at("turn") == 0);
  CHECK(j1.at("turn").at("actions")[0].at("open") == 0);
  CHECK(j1.at("state").at("position").at("open_trades")[0].at("size") == "3/2");

  for (int i = 0; i < 3; ++i) cli.Post("/sessions/" + id + "/turns", "", "application/json");
  auto hist = cli.Get("/sessions/" + id + "/turns?from=2");
  CHECK(json::parse(hist->body).at("turns").size() == 2);
  CHECK(cli.Get("/sessions/" + id + "/turns?from=x")->status == 400);

  // Stream from turn 1 while the session finishes.
  std::thread finisher([&] {
    httplib::Client c2("127.0.0.1", port);
    for (int i = 0; i < 40; ++i) {
      auto r = c2.Post("/sessions/" + id + "/turns", "", "application/json");
      if (!r || r->status != 200) break;
    }
  });
  std::string stream;
  auto ev = cli.Get("/sessions/" + id + "/events?from=1", [&](const char* data, std::size_t n) {
    stream.append(data, n);
    return true;
  });
  finisher.join();
  REQUIRE(ev);
  CHECK(ev->status == 200);
  CHECK(stream.find("id: 1\nevent: turn\n") != std::string::npos);
  CHECK(stream.find("id: 0\n") == std::string::npos);
  CHECK(stream.find("event: end") != std::string::npos);
  const auto final_state = json::parse(cli.Get("/sessions/" + id)->body);
  const std::size_t played = final_state.at("turns_played");
  std::size_t frames = 0;
  for (std::size_t pos = 0; (pos = stream.find("event: turn", pos)) != std::string::npos; ++pos) ++frames;
  CHECK(frames == played - 1);
  CHECK(final_state.at("status") != "live");
  CHECK(cli.Post("/sessions/" + id + "/turns", "", "application/json")->status == 409);

  server.stop();
  loop.join();
}

}  // TEST_SUITE
