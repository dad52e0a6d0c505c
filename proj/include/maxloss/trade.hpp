#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "maxloss/money.hpp"

namespace maxloss {

// A deterministic bounded trade: it closes at `win` or `lose`, whichever the
// price reaches first. Buys have win > open > lose, sells win < open < lose.
struct Trade {
  std::string id;
  Price open = 0;
  Price win = 0;
  Price lose = 0;
  Money size{1};

  int sign() const noexcept { return win > open ? 1 : -1; }
  bool is_buy() const noexcept { return sign() == 1; }

  friend bool operator==(const Trade&, const Trade&) = default;
};

// Two-valued profit: the value credited when the trade is won or lost.
struct ProfitFunction {
  Money win_profit;
  Money loss_profit;

  /// sign * (closing - open) * size at each bound.
  static ProfitFunction standard(const Trade& t);

  Money weight() const { return win_profit - loss_profit; }
};

// Per-id replacement of the standard profit function. Ids not present use
// ProfitFunction::standard.
using ProfitOverrides = std::map<std::string, ProfitFunction, std::less<>>;

ProfitFunction profit_function_for(const Trade& t, const ProfitOverrides* overrides);

/// Every violated trade invariant, in a fixed order; empty when the trade is
/// valid. Prices are judged relative to the session price 0.
std::vector<std::string> validate_trade(const Trade& t);

/// Throws ValidationError for the first invalid trade or repeated id.
void validate_trade_set(std::span<const Trade> trades);

/// Violations of a custom profit function (wins must be positive, losses
/// negative).
std::vector<std::string> validate_profit_function(const ProfitFunction& pf);

/// Profit realized when `t` closes at `closing`. Throws std::invalid_argument
/// if `closing` is neither bound.
Money trade_profit(const Trade& t, Price closing, const ProfitFunction* pf = nullptr);

/// False iff the two trades can never both be won by one price movement:
/// opposite signs and each losing bound no farther from 0 than the other's
/// winning bound.
bool pair_compatible(const Trade& a, const Trade& b) noexcept;

}  // namespace maxloss
