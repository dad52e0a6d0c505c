#include "maxloss/trade.hpp"

#include <set>
#include <stdexcept>

#include "maxloss/errors.hpp"

namespace maxloss {
namespace {

Price magnitude(Price p) { return p < 0 ? -p : p; }

bool strictly_between(Price x, Price a, Price b) {
  return (a < x && x < b) || (b < x && x < a);
}

}  // namespace

ProfitFunction ProfitFunction::standard(const Trade& t) {
  const Money s = t.sign();
  return {s * (to_money(t.win) - to_money(t.open)) * t.size,
          s * (to_money(t.lose) - to_money(t.open)) * t.size};
}

ProfitFunction profit_function_for(const Trade& t, const ProfitOverrides* overrides) {
  if (overrides) {
    if (auto it = overrides->find(t.id); it != overrides->end()) return it->second;
  }
  return ProfitFunction::standard(t);
}

std::vector<std::string> validate_trade(const Trade& t) {
  std::vector<std::string> out;
  for (auto [name, value] : {std::pair{"open", t.open}, {"win", t.win}, {"lose", t.lose}}) {
    if (magnitude(value) > kMaxPriceMagnitude)
      out.push_back(std::string(name) + " price exceeds 2^62 in magnitude");
  }
  const bool buy = t.win > t.open && t.open > t.lose;
  const bool sell = t.win < t.open && t.open < t.lose;
  if (!buy && !sell)
    out.emplace_back("bounds must satisfy win > open > lose (buy) or win < open < lose (sell)");
  if (t.win == 0) out.emplace_back("win must differ from the current price 0");
  if (t.lose == 0) out.emplace_back("lose must differ from the current price 0");
  if (strictly_between(t.win, t.open, 0))
    out.emplace_back("win lies strictly between open and the current price 0");
  if (strictly_between(t.lose, t.open, 0))
    out.emplace_back("lose lies strictly between open and the current price 0");
  if (t.size <= 0) out.emplace_back("size must be positive");
  if (t.id.empty()) out.emplace_back("id must be non-empty");
  return out;
}

void validate_trade_set(std::span<const Trade> trades) {
  std::set<std::string_view> seen;
  for (const auto& t : trades) {
    if (auto v = validate_trade(t); !v.empty())
      throw ValidationError("invalid trade '" + t.id + "': " + v.front());
    if (!seen.insert(t.id).second) throw ValidationError("duplicate trade id '" + t.id + "'");
  }
}

std::vector<std::string> validate_profit_function(const ProfitFunction& pf) {
  std::vector<std::string> out;
  if (pf.win_profit <= 0) out.emplace_back("win profit must be positive");
  if (pf.loss_profit >= 0) out.emplace_back("loss profit must be negative");
  return out;
}

Money trade_profit(const Trade& t, Price closing, const ProfitFunction* pf) {
  if (closing != t.win && closing != t.lose)
    throw std::invalid_argument("not a closing price: " + std::to_string(closing) +
                                " for trade '" + t.id + "'");
  if (pf) return closing == t.win ? pf->win_profit : pf->loss_profit;
  return Money{t.sign()} * (to_money(closing) - to_money(t.open)) * t.size;
}

bool pair_compatible(const Trade& a, const Trade& b) noexcept {
  if (a.sign() == b.sign()) return true;
  return !(magnitude(a.lose) <= magnitude(b.win) && magnitude(b.lose) <= magnitude(a.win));
}

}  // namespace maxloss
