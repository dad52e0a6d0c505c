#pragma once

#include <string>
#include <vector>

#include "maxloss/money.hpp"
#include "maxloss/trade.hpp"

namespace maxloss::testing {

inline Trade make_trade(std::string id, Price open, Price win, Price lose, long size = 1) {
  return Trade{std::move(id), open, win, lose, Money{size}};
}

inline Money money(const char* text) { return parse_money(text); }

// The worked four-trade example; its optimum is 52 via the movement (0, 5).
inline std::vector<Trade> four_trades() {
  return {make_trade("T1", 1, 4, -1, 10), make_trade("T2", 0, -4, 3, 5),
          make_trade("T3", 0, 2, -3, 5), make_trade("T4", 2, 5, -2, 9)};
}

}  // namespace maxloss::testing
