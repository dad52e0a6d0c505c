#include "maxloss/movement.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "maxloss/errors.hpp"

namespace maxloss {

PriceMovement::PriceMovement(std::vector<Price> turning_points)
    : points_(std::move(turning_points)) {
  if (points_.empty() || points_.front() != 0)
    throw std::invalid_argument("price movement must start at 0");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == points_[i - 1])
      throw std::invalid_argument("consecutive turning points must differ");
  }
}

void PriceMovement::extend_to(Price target) {
  const Price last = points_.back();
  if (target == last) return;
  if (points_.size() >= 2) {
    const Price prev = points_[points_.size() - 2];
    const bool same_direction = (last > prev) == (target > last);
    if (same_direction) {
      points_.back() = target;
      return;
    }
  }
  points_.push_back(target);
}

bool PriceMovement::is_minimal_zigzag() const {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == 0) return false;
    if (i >= 2 && sign_of(points_[i]) == sign_of(points_[i - 1])) return false;
    if (i >= 3) {
      const Price cur = points_[i] < 0 ? -points_[i] : points_[i];
      const Price old = points_[i - 2] < 0 ? -points_[i - 2] : points_[i - 2];
      if (cur <= old) return false;
    }
  }
  return true;
}

std::uint64_t PriceMovement::unit_length() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    // |a - b| < 2^63 for prices within the accepted range.
    const auto a = static_cast<__int128>(points_[i]);
    const auto b = static_cast<__int128>(points_[i - 1]);
    const auto step = static_cast<std::uint64_t>(a > b ? a - b : b - a);
    if (total > kMax - step) return kMax;
    total += step;
  }
  return total;
}

const TradeResult* SessionOutcome::find(std::string_view id) const {
  for (const auto& r : trades)
    if (r.id == id) return &r;
  return nullptr;
}

SessionOutcome simulate(std::span<const Trade> trades, const PriceMovement& m,
                        const ProfitOverrides* overrides) {
  SessionOutcome out;
  out.trades.resize(trades.size());
  std::vector<std::size_t> open(trades.size());
  for (std::size_t i = 0; i < trades.size(); ++i) open[i] = i;

  const auto& pts = m.turning_points();
  for (std::size_t seg = 0; seg + 1 < pts.size() && !open.empty(); ++seg) {
    const Price from = pts[seg];
    const Price to = pts[seg + 1];
    const bool up = to > from;
    // A bound is covered by this segment when it lies in (from, to].
    auto covered = [&](Price x) { return up ? (x > from && x <= to) : (x < from && x >= to); };
    std::vector<std::size_t> still_open;
    still_open.reserve(open.size());
    for (std::size_t idx : open) {
      const Trade& t = trades[idx];
      const bool hit_win = covered(t.win);
      const bool hit_lose = covered(t.lose);
      if (!hit_win && !hit_lose) {
        still_open.push_back(idx);
        continue;
      }
      Price closing;
      if (hit_win && hit_lose) {
        closing = (up ? t.win < t.lose : t.win > t.lose) ? t.win : t.lose;
      } else {
        closing = hit_win ? t.win : t.lose;
      }
      TradeResult& r = out.trades[idx];
      r.id = t.id;
      r.closing = closing;
      r.won = closing == t.win;
      r.segment = seg;
      if (overrides) {
        const ProfitFunction pf = profit_function_for(t, overrides);
        r.profit = trade_profit(t, closing, &pf);
      } else {
        r.profit = trade_profit(t, closing);
      }
    }
    open = std::move(still_open);
  }
  if (!open.empty())
    throw ValidationError("movement does not close trade " + trades[open.front()].id);
  for (const auto& r : out.trades) out.total_profit += r.profit;
  return out;
}

}  // namespace maxloss
