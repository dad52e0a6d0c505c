#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxloss/metl.hpp"
#include "maxloss/trade.hpp"

// Exhaustive reference solvers. They share only the data types with the
// production solvers: closing order, compatibility and profits are all
// recomputed here from first principles.
namespace maxloss::oracle {

struct OracleBudget {
  std::size_t max_trades = 12;
  // Largest |turning point| explored. Unset means max |closing price| + 1;
  // a value below that is refused since some trade could never close.
  std::optional<Price> price_radius;
};

struct SearchResult {
  Money best_profit;
  std::vector<Price> best_movement;  // turning points, starting at 0
  std::uint64_t movements_explored = 0;
};

/// Best total over all subsets of trades that are pairwise winnable, each
/// pair checked by movement search; losers contribute their loss profit.
Money oracle_mtl(std::span<const Trade> trades, const ProfitOverrides* overrides,
                 const OracleBudget& budget = {});

/// Best total over all minimal zig-zag movements. By default turning points
/// range over the closing prices (every other turning point is outcome
/// equivalent to one of them); `every_integer` walks every integer in the
/// radius instead.
SearchResult search_movements(std::span<const Trade> trades, const ProfitOverrides* overrides,
                              const OracleBudget& budget = {}, bool every_integer = false);

Money oracle_movement_search(std::span<const Trade> trades, const ProfitOverrides* overrides,
                             const OracleBudget& budget = {});

/// Expected-profit optimum by expansion and movement search. The trade
/// budget applies to the probabilistic trades, not their expansion.
Money oracle_metl(std::span<const metl::ProbabilisticTrade> trades, const OracleBudget& budget = {});

/// Whether some movement wins both trades, decided by exhaustive search.
bool winnable_together(const Trade& a, const Trade& b, bool every_integer = false);

}  // namespace maxloss::oracle
