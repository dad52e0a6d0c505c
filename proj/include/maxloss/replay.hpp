#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxloss/game.hpp"

// JSON forms of game values and the replay log. Money is always an exact
// fraction string; prices are JSON integers.
//
// A replay log is JSON Lines: a header object
//   {"format": "maxloss-replay", "version": 1, "max_turns": N}
// followed by one turn record per line, in play order.
namespace maxloss::replay {

using nlohmann::json;

inline constexpr const char* kFormatName = "maxloss-replay";
inline constexpr int kFormatVersion = 1;

json trade_to_json(const Trade& t);
Trade trade_from_json(const json& j);

json position_to_json(const game::GamePosition& p);
game::GamePosition position_from_json(const json& j);

json action_to_json(const game::TraderAction& a);
/// `current_price` fills in an omitted "open" on open actions.
game::TraderAction action_from_json(const json& j, Price current_price);

json turn_to_json(const game::TurnRecord& r);
game::TurnRecord turn_from_json(const json& j);

struct ReplayLog {
  std::uint64_t max_turns = game::kDefaultMaxTurns;
  std::vector<game::TurnRecord> turns;
};

json header_json(std::uint64_t max_turns);
void write_log(std::ostream& out, const ReplayLog& log);
/// Throws ValidationError naming the offending line.
ReplayLog read_log(std::istream& in, const std::string& source = "<input>");

struct ReplayVerdict {
  bool ok = false;
  std::string message;
  std::size_t turns_checked = 0;
  game::GameStatus status = game::GameStatus::live;
  Money final_gain;
  Money final_total_value;
};

/// Re-executes the recorded trader actions from the empty position and
/// checks every recorded position, closure and broker direction, plus the
/// never-decreasing total value.
ReplayVerdict verify(const ReplayLog& log);

}  // namespace maxloss::replay
