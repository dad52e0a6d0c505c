#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maxloss/errors.hpp"
#include "maxloss/trade.hpp"

namespace maxloss::game {

// Broker's mark-to-market profit on `t` if it closed at `price`.
Money trade_value(const Trade& t, Price price);

struct GamePosition {
  std::map<std::string, Trade, std::less<>> open_trades;
  Money gain;
  Price price = 0;
  std::uint64_t turn = 0;

  Money value() const;
  Money total_value() const { return value() + gain; }

  friend bool operator==(const GamePosition&, const GamePosition&) = default;
};

struct OpenAction {
  Trade trade;
  friend bool operator==(const OpenAction&, const OpenAction&) = default;
};

struct CloseAtWillAction {
  std::string id;
  friend bool operator==(const CloseAtWillAction&, const CloseAtWillAction&) = default;
};

using TraderAction = std::variant<OpenAction, CloseAtWillAction>;

struct ClosedTrade {
  std::string id;
  Price price = 0;
  Money value;
  bool won = false;
  friend bool operator==(const ClosedTrade&, const ClosedTrade&) = default;
};

struct TurnRecord {
  std::uint64_t turn = 0;
  GamePosition start;         // before the trader acts
  GamePosition after_trader;  // before the broker moves
  GamePosition end;           // after the broker's move and closures
  std::vector<TraderAction> actions;
  std::vector<std::string> trades_opened;
  std::vector<ClosedTrade> trades_closed;
  int direction = 1;
  bool game_over = false;

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

// A rejected trader action, or an action on a finished game.
class GameError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

std::vector<std::string> validate_game_trade(const GamePosition& pos, const Trade& t);

/// Adds `t`, which must open at the current price with its bounds strictly
/// on opposite sides of it. Throws GameError otherwise or on a repeated id.
GamePosition open_trade(const GamePosition& pos, const Trade& t);

struct LockedTrade {
  GamePosition position;
  Trade counter;
};

/// Locks the current value of open trade `id` by adding the mirrored trade
/// (price, lose, win, size). Both then close together at the same price,
/// netting val(T, price).
LockedTrade close_at_will(const GamePosition& pos, std::string_view id);

struct PriceStep {
  GamePosition position;
  std::vector<ClosedTrade> closed;
};

/// Moves the price one unit and banks every trade whose bound is reached.
PriceStep apply_price_step(const GamePosition& pos, int direction);

struct BrokerMove {
  int direction = 1;
  GamePosition position;
  std::vector<ClosedTrade> closed;
};

/// The never-go-down rule: step toward the larger total value; on a tie,
/// toward 0, and up from 0. Throws std::logic_error if the chosen successor
/// would lose total value.
BrokerMove broker_move(const GamePosition& pos);

/// Applies all trader actions (atomically: any invalid action throws and
/// leaves nothing applied), then the broker's move.
TurnRecord step_turn(const GamePosition& pos, std::span<const TraderAction> actions);

enum class GameStatus { live, ended_broker, ended_trader, truncated };

std::string_view to_string(GameStatus s);
GameStatus parse_status(std::string_view s);

inline constexpr std::uint64_t kDefaultMaxTurns = 10000;

// Sequential driver: keeps history and ends the game per the turn cap.
class Game {
 public:
  explicit Game(std::uint64_t max_turns = kDefaultMaxTurns);

  const TurnRecord& play(std::span<const TraderAction> actions);

  const GamePosition& position() const noexcept { return position_; }
  const std::vector<TurnRecord>& history() const noexcept { return history_; }
  GameStatus status() const noexcept { return status_; }
  std::uint64_t max_turns() const noexcept { return max_turns_; }

 private:
  std::uint64_t max_turns_;
  GamePosition position_;
  std::vector<TurnRecord> history_;
  GameStatus status_ = GameStatus::live;
};

GameStatus status_after(const TurnRecord& last, std::size_t turns_played, std::uint64_t max_turns);

}  // namespace maxloss::game
