#pragma once

#include <span>
#include <string>
#include <vector>

#include "maxloss/metl.hpp"
#include "maxloss/mtl.hpp"

namespace maxloss::uniform {

// Opens at 0; the winning price is uniform over the |bwin| prices from 0
// (exclusive) to bwin, the losing price likewise toward blose.
struct UniformTrade {
  std::string id;
  Price bwin = 1;
  Price blose = -1;
  Money size{1};

  int sign() const noexcept { return bwin > 0 ? 1 : -1; }
};

std::vector<std::string> validate_uniform_trade(const UniformTrade& t);

// The distinct extreme bounds of a trade set, split by side of 0.
struct CollapseGrid {
  std::vector<Price> above;  // ascending: p_1 < ... < p_n
  std::vector<Price> below;  // descending: q_1 > ... > q_m

  bool contains(Price p) const;
};

CollapseGrid collapse_grid(std::span<const UniformTrade> trades);

// One grid cell of one uniform trade: winning (losing) the deterministic
// trade stands for winning (losing) every expanded trade whose positive-side
// price lies in (p_{i-1}, p_i] and negative-side price in [q_j, q_{j-1}).
struct CollapsedTrade {
  Trade trade;
  ProfitFunction profit;
  std::string origin;
  std::size_t above_index = 0;  // i, 1-based
  std::size_t below_index = 0;  // j, 1-based
};

/// Collapsed trades with their closed-form cell profits. Ids are
/// "{id}#{i}/{j}".
std::vector<CollapsedTrade> collapse(std::span<const UniformTrade> trades);

/// The explicit pmf form. Its expansion has |bwin|*|blose| trades, so this
/// only suits small bounds.
metl::ProbabilisticTrade to_probabilistic(const UniformTrade& t);

mtl::MtlSolution solve_uniform(std::span<const UniformTrade> trades);

std::string origin_id(const std::string& collapsed_id);

}  // namespace maxloss::uniform
