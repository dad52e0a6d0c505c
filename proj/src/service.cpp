#include "maxloss/service.hpp"

#include <fstream>

#include "maxloss/replay.hpp"

namespace maxloss::service {

TurnLog::TurnLog(std::uint64_t capacity) {
  const std::size_t chunks = static_cast<std::size_t>((capacity + kChunk - 1) / kChunk);
  chunks_.resize(chunks);
}

void TurnLog::append(game::TurnRecord record) {
  const std::size_t i = published_.load(std::memory_order_relaxed);
  if (i / kChunk >= chunks_.size()) throw std::length_error("turn log is full");
  auto& chunk = chunks_[i / kChunk];
  if (!chunk) chunk = std::make_unique<Chunk>();
  (*chunk)[i % kChunk].emplace(std::move(record));
  published_.store(i + 1, std::memory_order_release);
}

const game::TurnRecord& TurnLog::at(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("turn not yet played");
  return *(*chunks_[i / kChunk])[i % kChunk];
}

struct SessionManager::Session {
  Session(std::string session_id, std::uint64_t max_turns)
      : id(std::move(session_id)), game(max_turns), log(max_turns) {}

  std::string id;
  std::mutex turn_mutex;  // serializes submit_turn
  game::Game game;        // guarded by turn_mutex
  std::ofstream persisted;
  TurnLog log;

  // Observers park here between turns.
  std::mutex wake_mutex;
  std::condition_variable wake;

  SessionState snapshot() const {
    SessionState s;
    s.session_id = id;
    s.max_turns = game.max_turns();
    const std::size_t n = log.size();
    s.turns_played = n;
    if (n > 0) {
      const auto& last = log.at(n - 1);
      s.position = last.end;
      s.status = game::status_after(last, n, s.max_turns);
    }
    return s;
  }

  bool ended() const {
    const std::size_t n = log.size();
    return n > 0 && game::status_after(log.at(n - 1), n, game.max_turns()) != game::GameStatus::live;
  }
};

struct Subscription::Handle {
  std::shared_ptr<SessionManager::Session> session;
};

std::optional<game::TurnRecord> Subscription::next(std::chrono::milliseconds timeout) {
  auto& s = *handle_->session;
  if (next_ >= s.log.size()) {
    std::unique_lock lock(s.wake_mutex);
    s.wake.wait_for(lock, timeout, [&] { return next_ < s.log.size() || s.ended(); });
  }
  if (next_ >= s.log.size()) return std::nullopt;
  return s.log.at(next_++);
}

bool Subscription::finished() const {
  const auto& s = *handle_->session;
  return s.ended() && next_ >= s.log.size();
}

SessionManager::SessionManager(std::optional<std::filesystem::path> log_dir)
    : log_dir_(std::move(log_dir)) {
  if (log_dir_) std::filesystem::create_directories(*log_dir_);
}

SessionManager::~SessionManager() = default;

std::shared_ptr<SessionManager::Session> SessionManager::make_session(std::string id,
                                                                      std::uint64_t max_turns) {
  return std::make_shared<Session>(std::move(id), max_turns);
}

std::string SessionManager::create_session(const SessionConfig& config) {
  if (config.max_turns == 0 || config.max_turns > kMaxSessionTurns)
    throw game::GameError("max_turns must be between 1 and " + std::to_string(kMaxSessionTurns));
  std::unique_lock lock(sessions_mutex_);
  std::string id;
  do {
    id = "s" + std::to_string(next_serial_++);
  } while (sessions_.contains(id) || (log_dir_ && std::filesystem::exists(*log_dir_ / (id + ".jsonl"))));
  auto session = make_session(id, config.max_turns);
  if (log_dir_) {
    session->persisted.open(*log_dir_ / (id + ".jsonl"), std::ios::out | std::ios::trunc);
    session->persisted << replay::header_json(config.max_turns).dump() << '\n' << std::flush;
  }
  sessions_.emplace(id, std::move(session));
  return id;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession("unknown session '" + id + "'");
  return it->second;
}

TurnResult SessionManager::submit_turn(const std::string& id,
                                       std::span<const game::TraderAction> actions) {
  const std::vector<game::TraderAction> copy(actions.begin(), actions.end());
  return submit_turn(id, [&](const game::GamePosition&) { return copy; });
}

TurnResult SessionManager::submit_turn(
    const std::string& id,
    const std::function<std::vector<game::TraderAction>(const game::GamePosition&)>& build) {
  auto session = find(id);
  std::lock_guard lock(session->turn_mutex);
  if (session->game.status() != game::GameStatus::live)
    throw SessionOver("game over (" + std::string(game::to_string(session->game.status())) + ")");
  const auto actions = build(session->game.position());
  const game::TurnRecord& rec = session->game.play(actions);
  if (rec.end.total_value() < rec.start.total_value())
    throw std::logic_error("total value decreased during a turn");
  if (session->persisted.is_open())
    session->persisted << replay::turn_to_json(rec).dump() << '\n' << std::flush;
  session->log.append(rec);
  {
    // Pairs with the predicate check in Subscription::next.
    std::lock_guard wake_lock(session->wake_mutex);
  }
  session->wake.notify_all();
  return {rec, session->snapshot()};
}

SessionState SessionManager::state(const std::string& id) const { return find(id)->snapshot(); }

std::vector<game::TurnRecord> SessionManager::history(const std::string& id, std::size_t from) const {
  auto session = find(id);
  std::vector<game::TurnRecord> out;
  const std::size_t n = session->log.size();
  for (std::size_t i = from; i < n; ++i) out.push_back(session->log.at(i));
  return out;
}

Subscription SessionManager::observe(const std::string& id, std::size_t from) const {
  auto session = find(id);
  return Subscription(std::make_shared<Subscription::Handle>(Subscription::Handle{std::move(session)}),
                      from);
}

std::size_t SessionManager::recover() {
  if (!log_dir_) return 0;
  std::size_t restored = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*log_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    const std::string id = entry.path().stem().string();
    {
      std::shared_lock lock(sessions_mutex_);
      if (sessions_.contains(id)) continue;
    }
    std::ifstream in(entry.path());
    replay::ReplayLog log = replay::read_log(in, entry.path().string());
    const auto verdict = replay::verify(log);
    if (!verdict.ok) throw ValidationError(entry.path().string() + ": " + verdict.message);

    if (log.max_turns > kMaxSessionTurns)
      throw ValidationError(entry.path().string() + ": max_turns exceeds the service limit");
    auto session = make_session(id, log.max_turns);
    for (const auto& rec : log.turns) {
      session->game.play(rec.actions);
      session->log.append(session->game.history().back());
    }
    session->persisted.open(entry.path(), std::ios::out | std::ios::app);
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(id, std::move(session));
    ++restored;
  }
  return restored;
}

std::vector<std::string> SessionManager::session_ids() const {
  std::shared_lock lock(sessions_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace maxloss::service
