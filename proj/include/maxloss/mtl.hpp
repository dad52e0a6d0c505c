#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxloss/movement.hpp"
#include "maxloss/trade.hpp"

namespace maxloss::mtl {

// Trades as vertices, joined when they cannot both be won. Buys and sells
// form the two sides; vertex order is input order.
struct IncompatibilityGraph {
  std::vector<std::string> ids;
  std::vector<int> sign;
  std::vector<Money> weight;  // win_profit - loss_profit
  // (buy vertex, sell vertex) index pairs.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t vertex_count() const noexcept { return ids.size(); }
  std::vector<std::string> buy_side() const;
  std::vector<std::string> sell_side() const;
};

struct MtlSolution {
  std::vector<std::string> winners;  // input order
  PriceMovement movement;
  Money total_profit;
  std::vector<TradeResult> per_trade;  // input order
};

IncompatibilityGraph build_graph(std::span<const Trade> trades,
                                 const ProfitOverrides* overrides = nullptr);

/// Indices into g's vertex list, ascending. Exact: rational weights are
/// scaled to integers before the min-cut.
std::vector<std::size_t> max_weight_independent_set_indices(const IncompatibilityGraph& g);

std::vector<std::string> max_weight_independent_set(const IncompatibilityGraph& g);

/// A minimal zig-zag movement winning every trade in `winners`. Throws
/// ValidationError with "incompatible set" if some pair cannot both be won.
PriceMovement construct_movement(std::span<const Trade> winners);

MtlSolution solve_mtl(std::span<const Trade> trades, const ProfitOverrides* overrides = nullptr);

}  // namespace maxloss::mtl
