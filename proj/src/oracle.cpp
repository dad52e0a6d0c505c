#include "maxloss/oracle.hpp"

#include <algorithm>
#include <set>

#include "maxloss/errors.hpp"

namespace maxloss::oracle {
namespace {

Price magnitude(Price p) { return p < 0 ? -p : p; }

struct Bound {
  int side;         // +1 above 0, -1 below
  Price distance;   // magnitude
};

struct Item {
  Bound win_at;
  Bound lose_at;
  Money if_won;
  Money if_lost;
};

std::vector<Item> prepare(std::span<const Trade> trades, const ProfitOverrides* overrides) {
  std::vector<Item> items;
  items.reserve(trades.size());
  for (const auto& t : trades) {
    Item it;
    it.win_at = {t.win > 0 ? 1 : -1, magnitude(t.win)};
    it.lose_at = {t.lose > 0 ? 1 : -1, magnitude(t.lose)};
    const ProfitOverrides::const_iterator custom =
        overrides ? overrides->find(t.id) : ProfitOverrides::const_iterator{};
    if (overrides && custom != overrides->end()) {
      it.if_won = custom->second.win_profit;
      it.if_lost = custom->second.loss_profit;
    } else {
      const int s = t.win > t.open ? 1 : -1;
      it.if_won = Money{s} * (to_money(t.win) - to_money(t.open)) * t.size;
      it.if_lost = Money{s} * (to_money(t.lose) - to_money(t.open)) * t.size;
    }
    items.push_back(std::move(it));
  }
  return items;
}

Price required_radius(std::span<const Trade> trades) {
  Price r = 0;
  for (const auto& t : trades) r = std::max({r, magnitude(t.win), magnitude(t.lose)});
  return r + 1;
}

Price checked_radius(std::span<const Trade> trades, const OracleBudget& budget) {
  for (const auto& t : trades)
    if (!validate_trade(t).empty()) throw ValidationError("invalid trade '" + t.id + "'");
  const Price needed = required_radius(trades);
  if (budget.price_radius && *budget.price_radius < needed)
    throw BudgetExceeded("price radius " + std::to_string(*budget.price_radius) +
                         " cannot close every trade (needs " + std::to_string(needed) + ")");
  return budget.price_radius.value_or(needed);
}

// Depth-first walk over extents. The state of a session depends only on how
// far the price has travelled on each side and in which order, so a movement
// is a sequence of new extremes on alternating sides.
class Walker {
 public:
  Walker(const std::vector<Item>& items, Price radius, bool every_integer)
      : items_(items), radius_(radius), state_(items.size(), 0) {
    for (int side : {1, -1}) {
      std::set<Price> c;
      if (every_integer) {
        for (Price k = 1; k <= radius; ++k) c.insert(k);
      } else {
        for (const auto& it : items) {
          if (it.win_at.side == side) c.insert(it.win_at.distance);
          if (it.lose_at.side == side) c.insert(it.lose_at.distance);
        }
      }
      (side > 0 ? up_candidates_ : down_candidates_).assign(c.begin(), c.end());
    }
  }

  SearchResult run() {
    path_.assign(1, 0);
    open_ = items_.size();
    if (open_ == 0) {
      result_.best_profit = 0;
      result_.best_movement = {0};
      result_.movements_explored = 1;
      return result_;
    }
    step(1, 0, 0, Money{0});
    step(-1, 0, 0, Money{0});
    return result_;
  }

 private:
  void step(int side, Price up_extent, Price down_extent, const Money& value) {
    const auto& candidates = side > 0 ? up_candidates_ : down_candidates_;
    const Price from = side > 0 ? up_extent : down_extent;
    for (Price target : candidates) {
      if (target <= from || target > radius_) continue;
      std::vector<std::size_t> closed;
      Money next = value;
      for (std::size_t k = 0; k < items_.size(); ++k) {
        if (state_[k] != 0) continue;
        const Item& it = items_[k];
        // Bounds sit on opposite sides of 0; the one on this side decides.
        const Bound& here = it.win_at.side == side ? it.win_at : it.lose_at;
        if (here.distance > from && here.distance <= target) {
          const bool won = &here == &it.win_at;
          state_[k] = won ? 1 : -1;
          next += won ? it.if_won : it.if_lost;
          closed.push_back(k);
        }
      }
      path_.push_back(side * target);
      open_ -= closed.size();
      if (open_ == 0) {
        ++result_.movements_explored;
        if (!have_best_ || next > result_.best_profit) {
          have_best_ = true;
          result_.best_profit = next;
          result_.best_movement = path_;
        }
      } else if (side > 0) {
        step(-1, target, down_extent, next);
      } else {
        step(1, up_extent, target, next);
      }
      open_ += closed.size();
      path_.pop_back();
      for (std::size_t k : closed) state_[k] = 0;
    }
  }

  const std::vector<Item>& items_;
  Price radius_;
  std::vector<Price> up_candidates_, down_candidates_;
  std::vector<int> state_;
  std::vector<Price> path_;
  std::size_t open_ = 0;
  bool have_best_ = false;
  SearchResult result_;
};

}  // namespace

SearchResult search_movements(std::span<const Trade> trades, const ProfitOverrides* overrides,
                              const OracleBudget& budget, bool every_integer) {
  if (trades.size() > budget.max_trades)
    throw BudgetExceeded(std::to_string(trades.size()) + " trades exceed the oracle budget of " +
                         std::to_string(budget.max_trades));
  const Price radius = checked_radius(trades, budget);
  const auto items = prepare(trades, overrides);
  return Walker(items, radius, every_integer).run();
}

Money oracle_movement_search(std::span<const Trade> trades, const ProfitOverrides* overrides,
                             const OracleBudget& budget) {
  return search_movements(trades, overrides, budget).best_profit;
}

bool winnable_together(const Trade& a, const Trade& b, bool every_integer) {
  // Unit stakes: the best movement scores 2 exactly when it wins both.
  Trade first = a, second = b;
  first.id = "first";
  second.id = "second";
  const Trade pair[] = {first, second};
  const ProfitOverrides unit{{"first", {Money{1}, Money{-1}}}, {"second", {Money{1}, Money{-1}}}};
  OracleBudget budget;
  budget.max_trades = 2;
  return search_movements(pair, &unit, budget, every_integer).best_profit == 2;
}

Money oracle_mtl(std::span<const Trade> trades, const ProfitOverrides* overrides,
                 const OracleBudget& budget) {
  const std::size_t n = trades.size();
  if (n > budget.max_trades)
    throw BudgetExceeded(std::to_string(n) + " trades exceed the oracle budget of " +
                         std::to_string(budget.max_trades));
  checked_radius(trades, budget);
  const auto items = prepare(trades, overrides);

  std::vector<std::vector<bool>> together(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      together[i][j] = together[j][i] = winnable_together(trades[i], trades[j]);

  Money best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool feasible = true;
    for (std::size_t i = 0; i < n && feasible; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if ((mask >> j & 1) && !together[i][j]) {
          feasible = false;
          break;
        }
    }
    if (!feasible) continue;
    Money value = 0;
    for (std::size_t i = 0; i < n; ++i) value += (mask >> i & 1) ? items[i].if_won : items[i].if_lost;
    if (!have || value > best) {
      best = value;
      have = true;
    }
  }
  return best;
}

Money oracle_metl(std::span<const metl::ProbabilisticTrade> trades, const OracleBudget& budget) {
  if (trades.size() > budget.max_trades)
    throw BudgetExceeded(std::to_string(trades.size()) +
                         " probabilistic trades exceed the oracle budget of " +
                         std::to_string(budget.max_trades));
  std::vector<Trade> expanded;
  std::size_t serial = 0;
  for (const auto& t : trades) {
    if (auto v = metl::validate_probabilistic_trade(t); !v.empty())
      throw ValidationError("invalid probabilistic trade '" + t.id + "': " + v.front());
    for (const auto& [w, fw] : t.win_pmf)
      for (const auto& [l, gl] : t.lose_pmf)
        expanded.push_back(Trade{std::to_string(serial++), t.open, w, l, fw * gl * t.size});
  }
  OracleBudget inner = budget;
  inner.max_trades = expanded.size();
  return search_movements(expanded, nullptr, inner).best_profit;
}

}  // namespace maxloss::oracle
