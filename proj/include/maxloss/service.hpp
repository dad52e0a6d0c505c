#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "maxloss/game.hpp"

namespace maxloss::service {

class UnknownSession : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SessionOver : public game::GameError {
 public:
  using game::GameError::GameError;
};

inline constexpr std::uint64_t kMaxSessionTurns = 1'000'000;

struct SessionConfig {
  std::uint64_t max_turns = game::kDefaultMaxTurns;
};

struct SessionState {
  std::string session_id;
  game::GamePosition position;
  std::uint64_t turns_played = 0;
  std::uint64_t max_turns = 0;
  game::GameStatus status = game::GameStatus::live;
};

struct TurnResult {
  game::TurnRecord record;
  SessionState state;
};

// Append-only turn history with a single writer. Readers never take a lock:
// storage is chunked so published records never move, and the published
// count is released after each record is complete.
class TurnLog {
 public:
  explicit TurnLog(std::uint64_t capacity);

  void append(game::TurnRecord record);  // writer only
  std::size_t size() const noexcept { return published_.load(std::memory_order_acquire); }
  const game::TurnRecord& at(std::size_t i) const;

 private:
  static constexpr std::size_t kChunk = 256;
  using Chunk = std::array<std::optional<game::TurnRecord>, kChunk>;
  std::vector<std::unique_ptr<Chunk>> chunks_;
  std::atomic<std::size_t> published_{0};
};

class SessionManager;

// Ordered, gap-free view of one session's turns from a starting turn.
class Subscription {
 public:
  /// The next turn record, waiting up to `timeout` for one to be played.
  std::optional<game::TurnRecord> next(std::chrono::milliseconds timeout);

  /// True once the session has ended and every record was delivered.
  bool finished() const;

  std::size_t position() const noexcept { return next_; }

 private:
  friend class SessionManager;
  struct Handle;
  Subscription(std::shared_ptr<Handle> h, std::size_t from) : handle_(std::move(h)), next_(from) {}

  std::shared_ptr<Handle> handle_;
  std::size_t next_;
};

// In-memory game sessions. Turns on one session are totally ordered;
// different sessions proceed independently. With a log directory, each
// session appends its replay log there and recover() rebuilds sessions from
// those logs.
class SessionManager {
 public:
  explicit SessionManager(std::optional<std::filesystem::path> log_dir = std::nullopt);
  ~SessionManager();

  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  std::string create_session(const SessionConfig& config = {});

  /// Throws UnknownSession, SessionOver, or game::GameError for a rejected
  /// action (nothing is applied in that case).
  TurnResult submit_turn(const std::string& id, std::span<const game::TraderAction> actions);

  /// Builds the actions from the live position while holding the session's
  /// turn lock, so defaults such as the opening price cannot go stale.
  TurnResult submit_turn(
      const std::string& id,
      const std::function<std::vector<game::TraderAction>(const game::GamePosition&)>& build);

  SessionState state(const std::string& id) const;

  /// Records [from, current) at the time of the call.
  std::vector<game::TurnRecord> history(const std::string& id, std::size_t from = 0) const;

  Subscription observe(const std::string& id, std::size_t from = 0) const;

  /// Loads every replay log in the log directory, replacing nothing already
  /// loaded. Returns the number of sessions restored.
  std::size_t recover();

  std::vector<std::string> session_ids() const;

 private:
  friend class Subscription;
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> make_session(std::string id, std::uint64_t max_turns);

  std::optional<std::filesystem::path> log_dir_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_serial_ = 1;
};

}  // namespace maxloss::service
