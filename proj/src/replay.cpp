#include "maxloss/replay.hpp"

#include <istream>
#include <ostream>

#include "maxloss/errors.hpp"

namespace maxloss::replay {
namespace {

Money money_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_string()) return parse_money(v.get<std::string>());
  if (v.is_number_integer()) return Money{BigInt{v.get<std::int64_t>()}};
  throw ValidationError(std::string("field '") + key + "' must be a fraction string");
}

Price price_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return v.get<Price>();
}

}  // namespace

json trade_to_json(const Trade& t) {
  return {{"id", t.id}, {"open", t.open}, {"win", t.win}, {"lose", t.lose}, {"size", format_money(t.size)}};
}

Trade trade_from_json(const json& j) {
  return Trade{j.at("id").get<std::string>(), price_field(j, "open"), price_field(j, "win"),
               price_field(j, "lose"), money_field(j, "size")};
}

json position_to_json(const game::GamePosition& p) {
  json trades = json::array();
  for (const auto& [_, t] : p.open_trades) trades.push_back(trade_to_json(t));
  return {{"turn", p.turn},
          {"price", p.price},
          {"gain", format_money(p.gain)},
          {"value", format_money(p.value())},
          {"total_value", format_money(p.total_value())},
          {"open_trades", std::move(trades)}};
}

game::GamePosition position_from_json(const json& j) {
  game::GamePosition p;
  p.turn = j.at("turn").get<std::uint64_t>();
  p.price = price_field(j, "price");
  p.gain = money_field(j, "gain");
  for (const auto& t : j.at("open_trades")) {
    Trade trade = trade_from_json(t);
    std::string id = trade.id;
    if (!p.open_trades.emplace(std::move(id), std::move(trade)).second)
      throw ValidationError("position lists a trade id twice");
  }
  if (j.contains("value") && money_field(j, "value") != p.value())
    throw ValidationError("recorded position value does not match its trades");
  if (j.contains("total_value") && money_field(j, "total_value") != p.total_value())
    throw ValidationError("recorded total value does not match gain plus value");
  return p;
}

json action_to_json(const game::TraderAction& a) {
  if (const auto* open = std::get_if<game::OpenAction>(&a)) {
    json j = trade_to_json(open->trade);
    j["type"] = "open";
    return j;
  }
  return {{"type", "close"}, {"id", std::get<game::CloseAtWillAction>(a).id}};
}

game::TraderAction action_from_json(const json& j, Price current_price) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "open") {
    Trade t;
    t.id = j.at("id").get<std::string>();
    t.open = j.contains("open") ? price_field(j, "open") : current_price;
    t.win = price_field(j, "win");
    t.lose = price_field(j, "lose");
    t.size = j.contains("size") ? money_field(j, "size") : Money{1};
    return game::OpenAction{std::move(t)};
  }
  if (type == "close") return game::CloseAtWillAction{j.at("id").get<std::string>()};
  throw ValidationError("unknown action type '" + type + "'");
}

json turn_to_json(const game::TurnRecord& r) {
  json actions = json::array();
  for (const auto& a : r.actions) actions.push_back(action_to_json(a));
  json closed = json::array();
  for (const auto& c : r.trades_closed)
    closed.push_back({{"id", c.id}, {"price", c.price}, {"value", format_money(c.value)}, {"won", c.won}});
  return {{"turn", r.turn},
          {"actions", std::move(actions)},
          {"opened", r.trades_opened},
          {"direction", r.direction},
          {"closed", std::move(closed)},
          {"game_over", r.game_over},
          {"start", position_to_json(r.start)},
          {"after_trader", position_to_json(r.after_trader)},
          {"end", position_to_json(r.end)}};
}

game::TurnRecord turn_from_json(const json& j) {
  game::TurnRecord r;
  r.turn = j.at("turn").get<std::uint64_t>();
  r.start = position_from_json(j.at("start"));
  r.after_trader = position_from_json(j.at("after_trader"));
  r.end = position_from_json(j.at("end"));
  for (const auto& a : j.at("actions")) r.actions.push_back(action_from_json(a, r.start.price));
  r.trades_opened = j.at("opened").get<std::vector<std::string>>();
  r.direction = j.at("direction").get<int>();
  for (const auto& c : j.at("closed"))
    r.trades_closed.push_back({c.at("id").get<std::string>(), price_field(c, "price"),
                               money_field(c, "value"), c.at("won").get<bool>()});
  r.game_over = j.at("game_over").get<bool>();
  return r;
}

json header_json(std::uint64_t max_turns) {
  return {{"format", kFormatName}, {"version", kFormatVersion}, {"max_turns", max_turns}};
}

void write_log(std::ostream& out, const ReplayLog& log) {
  out << header_json(log.max_turns).dump() << '\n';
  for (const auto& t : log.turns) out << turn_to_json(t).dump() << '\n';
}

ReplayLog read_log(std::istream& in, const std::string& source) {
  ReplayLog log;
  std::string line;
  int number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("format", "") != kFormatName) throw ValidationError("missing replay header");
        if (j.value("version", 0) != kFormatVersion) throw ValidationError("unsupported replay version");
        log.max_turns = j.at("max_turns").get<std::uint64_t>();
        have_header = true;
      } else {
        log.turns.push_back(turn_from_json(j));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, number, e.what());
    }
  }
  if (!have_header) throw ParseError(source, number, "empty replay log");
  return log;
}

ReplayVerdict verify(const ReplayLog& log) {
  ReplayVerdict v;
  game::GamePosition current;
  auto fail = [&](const std::string& why) {
    v.ok = false;
    v.message = "turn " + std::to_string(v.turns_checked) + ": " + why;
    return v;
  };
  if (log.max_turns == 0) return fail("max_turns must be positive");
  if (log.turns.size() > log.max_turns) return fail("more turns than max_turns");
  for (const auto& rec : log.turns) {
    if (v.status != game::GameStatus::live) return fail("turn recorded after the game ended");
    if (rec.start != current) return fail("start position differs from the previous end position");
    game::TurnRecord again;
    try {
      again = game::step_turn(current, rec.actions);
    } catch (const std::exception& e) {
      return fail(std::string("recorded actions are not playable: ") + e.what());
    }
    if (again.after_trader != rec.after_trader) return fail("position after the trader differs");
    if (again.direction != rec.direction) return fail("broker direction differs");
    if (again.trades_closed != rec.trades_closed) return fail("closed trades differ");
    if (again.trades_opened != rec.trades_opened) return fail("opened trades differ");
    if (again.end != rec.end) return fail("end position differs");
    if (again != rec) return fail("record differs from re-execution");
    if (rec.end.total_value() < rec.start.total_value()) return fail("total value decreased");
    current = rec.end;
    ++v.turns_checked;
    v.status = game::status_after(rec, v.turns_checked, log.max_turns);
  }
  v.ok = true;
  v.final_gain = current.gain;
  v.final_total_value = current.total_value();
  v.message = "verified " + std::to_string(v.turns_checked) + " turns";
  return v;
}

}  // namespace maxloss::replay
