#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxloss/trade.hpp"

namespace maxloss {

// A unit-step price path from 0, stored by the prices where it turns (plus
// its endpoint). The unit sequence between turning points is implicit.
class PriceMovement {
 public:
  /// The empty movement (0).
  PriceMovement() : points_{0} {}

  /// Throws std::invalid_argument unless the list starts at 0 and
  /// consecutive points differ.
  explicit PriceMovement(std::vector<Price> turning_points);

  const std::vector<Price>& turning_points() const noexcept { return points_; }
  std::size_t segment_count() const noexcept { return points_.size() - 1; }
  Price final_price() const noexcept { return points_.back(); }

  /// Continue the path to `target`. A target in the current direction of
  /// travel replaces the endpoint instead of adding a turn; moving to the
  /// current price is a no-op.
  void extend_to(Price target);

  /// Turning points alternate sign and strictly grow in magnitude on each
  /// side.
  bool is_minimal_zigzag() const;

  /// Number of unit steps in the implied path (saturates at UINT64_MAX).
  std::uint64_t unit_length() const;

  friend bool operator==(const PriceMovement&, const PriceMovement&) = default;

 private:
  std::vector<Price> points_;
};

struct TradeResult {
  std::string id;
  Price closing = 0;
  Money profit;
  bool won = false;
  // Index of the segment (0-based) during which the trade closed.
  std::size_t segment = 0;
};

// Result of running a movement over a trade set. Entries follow input order.
struct SessionOutcome {
  std::vector<TradeResult> trades;
  Money total_profit;

  const TradeResult* find(std::string_view id) const;
};

/// Replays `m` over `trades` with first-hit close semantics. Trades already
/// validated; throws ValidationError naming the first trade the movement
/// leaves open.
SessionOutcome simulate(std::span<const Trade> trades, const PriceMovement& m,
                        const ProfitOverrides* overrides = nullptr);

}  // namespace maxloss
