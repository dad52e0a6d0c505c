#include "maxloss/game.hpp"

#include <stdexcept>

namespace maxloss::game {
namespace {

Price magnitude(Price p) { return p < 0 ? -p : p; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string counter_id(const GamePosition& pos, std::string_view id) {
  std::string base = std::string(id) + "~lock" + std::to_string(pos.turn);
  std::string candidate = base;
  for (int k = 2; pos.open_trades.contains(candidate); ++k) candidate = base + "." + std::to_string(k);
  return candidate;
}

}  // namespace

Money trade_value(const Trade& t, Price price) {
  return Money{t.sign()} * (to_money(price) - to_money(t.open)) * t.size;
}

Money GamePosition::value() const {
  Money v = 0;
  for (const auto& [_, t] : open_trades) v += trade_value(t, price);
  return v;
}

std::vector<std::string> validate_game_trade(const GamePosition& pos, const Trade& t) {
  std::vector<std::string> out;
  if (t.id.empty()) out.emplace_back("id must be non-empty");
  if (t.open != pos.price)
    out.push_back("trade must open at the current price " + std::to_string(pos.price));
  for (Price p : {t.win, t.lose})
    if (magnitude(p) > kMaxPriceMagnitude) out.emplace_back("bound exceeds 2^62 in magnitude");
  const bool buy = t.win > pos.price && t.lose < pos.price;
  const bool sell = t.win < pos.price && t.lose > pos.price;
  if (!buy && !sell)
    out.emplace_back("win and lose must lie strictly on opposite sides of the current price");
  if (t.size <= 0) out.emplace_back("size must be positive");
  if (pos.open_trades.contains(t.id)) out.push_back("trade id '" + t.id + "' is already open");
  return out;
}

GamePosition open_trade(const GamePosition& pos, const Trade& t) {
  if (auto v = validate_game_trade(pos, t); !v.empty())
    throw GameError("cannot open trade '" + t.id + "': " + v.front());
  GamePosition next = pos;
  next.open_trades.emplace(t.id, t);
  return next;
}

LockedTrade close_at_will(const GamePosition& pos, std::string_view id) {
  auto it = pos.open_trades.find(id);
  if (it == pos.open_trades.end()) throw GameError("no open trade '" + std::string(id) + "'");
  const Trade& t = it->second;
  Trade counter{counter_id(pos, id), pos.price, t.lose, t.win, t.size};
  return {open_trade(pos, counter), counter};
}

PriceStep apply_price_step(const GamePosition& pos, int direction) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +1 or -1");
  PriceStep step;
  step.position.gain = pos.gain;
  step.position.turn = pos.turn;
  step.position.price = pos.price + direction;
  const Price p = step.position.price;
  for (const auto& [id, t] : pos.open_trades) {
    if (t.win == p || t.lose == p) {
      ClosedTrade c{id, p, trade_value(t, p), t.win == p};
      step.position.gain += c.value;
      step.closed.push_back(std::move(c));
    } else {
      step.position.open_trades.emplace(id, t);
    }
  }
  return step;
}

BrokerMove broker_move(const GamePosition& pos) {
  PriceStep up = apply_price_step(pos, 1);
  PriceStep down = apply_price_step(pos, -1);
  const Money current = pos.total_value();
  const Money up_total = up.position.total_value();
  const Money down_total = down.position.total_value();
  if (up_total - current != -(down_total - current))
    throw std::logic_error("successor totals are not antisymmetric");

  int direction;
  if (up_total != down_total)
    direction = up_total > down_total ? 1 : -1;
  else
    direction = pos.price > 0 ? -1 : 1;

  PriceStep& chosen = direction > 0 ? up : down;
  if (chosen.position.total_value() < current)
    throw std::logic_error("broker move would decrease total value");
  return {direction, std::move(chosen.position), std::move(chosen.closed)};
}

TurnRecord step_turn(const GamePosition& pos, std::span<const TraderAction> actions) {
  TurnRecord rec;
  rec.turn = pos.turn;
  rec.start = pos;
  GamePosition cur = pos;
  for (const auto& action : actions) {
    std::visit(overloaded{
                   [&](const OpenAction& a) {
                     cur = open_trade(cur, a.trade);
                     rec.trades_opened.push_back(a.trade.id);
                   },
                   [&](const CloseAtWillAction& a) {
                     auto locked = close_at_will(cur, a.id);
                     cur = std::move(locked.position);
                     rec.trades_opened.push_back(locked.counter.id);
                   },
               },
               action);
  }
  if (cur.total_value() != pos.total_value())
    throw std::logic_error("opening trades changed the total value");
  rec.actions.assign(actions.begin(), actions.end());
  rec.after_trader = cur;
  BrokerMove move = broker_move(cur);
  rec.direction = move.direction;
  rec.trades_closed = std::move(move.closed);
  rec.end = std::move(move.position);
  rec.end.turn = pos.turn + 1;
  rec.game_over = rec.end.open_trades.empty();
  return rec;
}

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::live: return "live";
    case GameStatus::ended_broker: return "ended-broker";
    case GameStatus::ended_trader: return "ended-trader";
    case GameStatus::truncated: return "truncated";
  }
  return "live";
}

GameStatus parse_status(std::string_view s) {
  for (auto st : {GameStatus::live, GameStatus::ended_broker, GameStatus::ended_trader,
                  GameStatus::truncated})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown game status '" + std::string(s) + "'");
}

GameStatus status_after(const TurnRecord& last, std::size_t turns_played, std::uint64_t max_turns) {
  if (last.game_over) return last.end.gain < 0 ? GameStatus::ended_trader : GameStatus::ended_broker;
  if (turns_played >= max_turns) return GameStatus::truncated;
  return GameStatus::live;
}

Game::Game(std::uint64_t max_turns) : max_turns_(max_turns) {
  if (max_turns_ == 0) throw std::invalid_argument("max_turns must be positive");
}

const TurnRecord& Game::play(std::span<const TraderAction> actions) {
  if (status_ != GameStatus::live)
    throw GameError(std::string("game over (") + std::string(to_string(status_)) + ")");
  TurnRecord rec = step_turn(position_, actions);
  position_ = rec.end;
  history_.push_back(std::move(rec));
  status_ = status_after(history_.back(), history_.size(), max_turns_);
  return history_.back();
}

}  // namespace maxloss::game
