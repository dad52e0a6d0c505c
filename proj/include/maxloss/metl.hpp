#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxloss/mtl.hpp"

namespace maxloss::metl {

// A trade whose winning and losing prices are independent random variables
// with finite support.
struct ProbabilisticTrade {
  std::string id;
  Price open = 0;
  int sign = 1;
  Money size{1};
  // (price, probability), each list summing to exactly 1.
  std::vector<std::pair<Price, Money>> win_pmf;
  std::vector<std::pair<Price, Money>> lose_pmf;
};

std::vector<std::string> validate_probabilistic_trade(const ProbabilisticTrade& t);

/// Sorted union of every pmf support point.
std::vector<Price> support(std::span<const ProbabilisticTrade> trades);

/// One deterministic trade per (win, lose) support pair, sized by the joint
/// probability; ids are "{id}@{win}/{lose}".
std::vector<Trade> expand(const ProbabilisticTrade& t);

std::vector<Trade> expand_all(std::span<const ProbabilisticTrade> trades);

/// The original trade id an expanded id came from.
std::string origin_id(const std::string& expanded_id);

/// Maximum expected profit; total_profit is the expectation.
mtl::MtlSolution solve_metl(std::span<const ProbabilisticTrade> trades);

struct AggregatedProfit {
  std::string id;
  Money expected_profit;
};

/// Expected profit per original trade, summing the expanded entries that
/// share a prefix before the last '@'. Input order of first appearance.
std::vector<AggregatedProfit> aggregate_by_origin(std::span<const TradeResult> per_trade);

}  // namespace maxloss::metl
