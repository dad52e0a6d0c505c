#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "maxloss/generator.hpp"
#include "maxloss/movement.hpp"
#include "maxloss/replay.hpp"

using namespace maxloss;
using namespace maxloss::game;
using maxloss::testing::make_trade;

namespace {

GamePosition at_price(Price p) {
  GamePosition pos;
  pos.price = p;
  return pos;
}

std::vector<TraderAction> open(Trade t) { return {OpenAction{std::move(t)}}; }

}  // namespace

TEST_SUITE("game") {

TEST_CASE("opening trades") {
  const auto p0 = open_trade(at_price(0), make_trade("a", 0, 1, -1));
  CHECK(p0.total_value() == 0);
  CHECK(p0.open_trades.size() == 1);
  CHECK_NOTHROW(open_trade(at_price(3), make_trade("b", 3, 5, 1, 2)));
  CHECK_THROWS_AS(open_trade(at_price(0), make_trade("c", 0, -1, -2)), GameError);
  CHECK_THROWS_AS(open_trade(at_price(0), make_trade("c", 1, 2, -1)), GameError);  // not at the price
  CHECK_THROWS_AS(open_trade(p0, make_trade("a", 0, 2, -1)), GameError);          // duplicate id
  CHECK_THROWS_AS(open_trade(at_price(0), make_trade("c", 0, 0, -1)), GameError);  // bound at the price
}

TEST_CASE("close at will locks the current value") {
  auto pos = open_trade(at_price(0), make_trade("T", 0, 2, -1));
  pos.price = 1;
  const auto locked = close_at_will(pos, "T");
  CHECK(locked.counter.open == 1);
  CHECK(locked.counter.win == -1);
  CHECK(locked.counter.lose == 2);
  CHECK(locked.counter.size == 1);
  const std::vector<Trade> both{pos.open_trades.at("T"), locked.counter};
  const Money up = simulate(both, PriceMovement({0, 2})).total_profit;
  const Money down = simulate(both, PriceMovement({0, -1})).total_profit;
  CHECK(up == trade_value(pos.open_trades.at("T"), 1));
  CHECK(down == up);
  CHECK(up == 1);
  CHECK(locked.position.total_value() == pos.total_value());
  CHECK_THROWS_AS(close_at_will(pos, "missing"), GameError);

  // The same trade locked twice: each counter nets at its own price.
  auto again = locked.position;
  again.price = 0;
  const auto twice = close_at_will(again, "T");
  CHECK(twice.counter.id != locked.counter.id);
  CHECK(twice.position.total_value() == again.total_value());
}

TEST_CASE("lock at the open price nets zero") {
  const auto pos = open_trade(at_price(0), make_trade("T", 0, 3, -2, 5));
  const auto locked = close_at_will(pos, "T");
  const std::vector<Trade> both{pos.open_trades.at("T"), locked.counter};
  CHECK(simulate(both, PriceMovement({0, 3})).total_profit == 0);
}

TEST_CASE("broker move") {
  const auto one = open_trade(at_price(0), make_trade("a", 0, 1, -1));
  const auto up = apply_price_step(one, 1);
  const auto down = apply_price_step(one, -1);
  CHECK(up.position.gain == 1);
  CHECK(down.position.gain == -1);
  const auto m = broker_move(one);
  CHECK(m.direction == 1);
  CHECK(m.position.total_value() == 1);
  REQUIRE(m.closed.size() == 1);
  CHECK(m.closed[0].won);

  const auto empty = broker_move(at_price(0));
  CHECK(empty.direction == 1);
  CHECK(broker_move(at_price(4)).direction == -1);
  CHECK(broker_move(at_price(-4)).direction == 1);

  auto sym = open_trade(open_trade(at_price(0), make_trade("a", 0, 1, -1)), make_trade("b", 0, -1, 1));
  CHECK(apply_price_step(sym, 1).position.total_value() == 0);
  CHECK(apply_price_step(sym, -1).position.total_value() == 0);
  CHECK(broker_move(sym).position.total_value() == 0);
}

TEST_CASE("turns and game end") {
  Game g;
  g.play({});
  CHECK(g.status() == GameStatus::ended_broker);
  CHECK(g.position().gain == 0);
  CHECK_THROWS_AS(g.play({}), GameError);

  Game h;
  const auto& r = h.play(open(make_trade("a", 0, 1, -1)));
  CHECK(r.direction == 1);
  CHECK(r.game_over);
  CHECK(r.end.gain == 1);
  CHECK(r.end.total_value() == 1);
  CHECK(h.status() == GameStatus::ended_broker);

  Game capped(1);
  capped.play(open(make_trade("a", 0, 3, -3)));
  CHECK(capped.status() == GameStatus::truncated);

  // A rejected action leaves nothing applied.
  Game atomic;
  const std::vector<TraderAction> mixed{OpenAction{make_trade("a", 0, 2, -2)}, OpenAction{make_trade("b", 0, -1, -2)}};
  CHECK_THROWS_AS(atomic.play(mixed), GameError);
  CHECK(atomic.history().empty());
  CHECK(atomic.position().open_trades.empty());
}

TEST_CASE("a locked pair stalls the price near 0") {
  // Once locked, both directions tie and the broker steps back toward 0,
  // never reaching the pair's bounds at +-2.
  Game g(50);
  g.play(open(make_trade("a", 0, 2, -2)));
  g.play(std::vector<TraderAction>{CloseAtWillAction{"a"}});
  while (g.status() == GameStatus::live) g.play({});
  CHECK(g.status() == GameStatus::truncated);
  CHECK(g.position().total_value() == g.history()[1].after_trader.total_value());
  CHECK(g.position().total_value() >= 0);
  CHECK(to_string(GameStatus::ended_trader) == "ended-trader");
  CHECK(parse_status("truncated") == GameStatus::truncated);
}

TEST_CASE("scripted traders never beat the broker") {
  for (auto kind : {gen::TraderKind::random_opener, gen::TraderKind::martingale_doubler,
                    gen::TraderKind::close_at_will_mixer}) {
    gen::TraderScript script(kind, 99);
    Game g(1000);
    Money last = 0;
    while (g.status() == GameStatus::live) {
      const auto& r = g.play(script.next(g.position(), g.history().empty() ? nullptr : &g.history().back()));
      CHECK(r.end.total_value() >= last);
      CHECK(r.after_trader.total_value() == r.start.total_value());
      last = r.end.total_value();
    }
    CHECK(g.position().gain >= 0);
    if (g.status() == GameStatus::ended_broker) CHECK(g.position().gain == g.position().total_value());
  }
}

}  // TEST_SUITE

TEST_SUITE("replay") {

TEST_CASE("json round trips") {
  const Trade t = make_trade("a", 0, 3, -1, 5);
  CHECK(replay::trade_from_json(replay::trade_to_json(t)) == t);
  const auto j = replay::trade_to_json(Trade{"f", 0, 3, -1, Money{3} / 2});
  CHECK(j.at("size") == "3/2");

  Game g;
  g.play(open(make_trade("a", 0, 2, -2)));
  g.play(std::vector<TraderAction>{CloseAtWillAction{"a"}});
  for (const auto& r : g.history()) CHECK(replay::turn_from_json(replay::turn_to_json(r)) == r);
  const auto pj = replay::position_to_json(g.position());
  CHECK(replay::position_from_json(pj) == g.position());
  auto tampered = pj;
  tampered["total_value"] = "12345";
  CHECK_THROWS(replay::position_from_json(tampered));

  const auto a = replay::action_from_json(nlohmann::json{{"type", "open"}, {"id", "x"}, {"win", 9}, {"lose", 5}, {"size", "1"}}, 7);
  CHECK(std::get<OpenAction>(a).trade.open == 7);
  CHECK_THROWS(replay::action_from_json(nlohmann::json{{"type", "teleport"}}, 0));
}

TEST_CASE("replay logs verify and detect tampering") {
  gen::TraderScript script(gen::TraderKind::close_at_will_mixer, 3);
  Game g(60);
  while (g.status() == GameStatus::live)
    g.play(script.next(g.position(), g.history().empty() ? nullptr : &g.history().back()));
  std::stringstream buf;
  replay::write_log(buf, {60, g.history()});
  const auto log = replay::read_log(buf, "log");
  CHECK(log.turns == g.history());
  const auto v = replay::verify(log);
  CHECK(v.ok);
  CHECK(v.status == g.status());
  CHECK(v.final_gain == g.position().gain);

  auto bad = log;
  bad.turns.back().direction = -bad.turns.back().direction;
  CHECK_FALSE(replay::verify(bad).ok);
  auto bad2 = log;
  bad2.turns[0].end.gain += 1;
  CHECK_FALSE(replay::verify(bad2).ok);

  std::istringstream garbage(replay::header_json(5).dump() + "\n{not json\n");
  CHECK_THROWS_WITH(replay::read_log(garbage, "g"), doctest::Contains("g:2:"));
  std::istringstream no_header("{\"turn\":0}\n");
  CHECK_THROWS(replay::read_log(no_header, "h"));
}

}  // TEST_SUITE
