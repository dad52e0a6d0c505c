#include "maxloss/mtl.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

#include "maxloss/errors.hpp"
#include "maxloss/max_flow.hpp"

namespace maxloss::mtl {
namespace {

std::vector<std::string> side(const IncompatibilityGraph& g, int s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g.ids.size(); ++i)
    if (g.sign[i] == s) out.push_back(g.ids[i]);
  return out;
}

template <typename Capacity>
std::vector<std::size_t> independent_set_by_cut(const IncompatibilityGraph& g,
                                                const std::vector<Capacity>& cap,
                                                const Capacity& unbounded) {
  const std::size_t n = g.vertex_count();
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  FlowNetwork<Capacity> net(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.sign[i] > 0)
      net.add_arc(source, i, cap[i]);
    else
      net.add_arc(i, sink, cap[i]);
  }
  for (auto [buy, sell] : g.edges) net.add_arc(buy, sell, unbounded);
  net.max_flow(source, sink);
  const auto reachable = net.source_side(source);
  // A buy stays when its source arc is uncut (it is on the source side); a
  // sell stays when its sink arc is uncut (it is on the sink side).
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    if ((g.sign[i] > 0) == static_cast<bool>(reachable[i])) chosen.push_back(i);
  }
  return chosen;
}

}  // namespace

std::vector<std::string> IncompatibilityGraph::buy_side() const { return side(*this, 1); }
std::vector<std::string> IncompatibilityGraph::sell_side() const { return side(*this, -1); }

IncompatibilityGraph build_graph(std::span<const Trade> trades, const ProfitOverrides* overrides) {
  validate_trade_set(trades);
  IncompatibilityGraph g;
  g.ids.reserve(trades.size());
  for (const auto& t : trades) {
    const ProfitFunction pf = profit_function_for(t, overrides);
    if (auto v = validate_profit_function(pf); !v.empty())
      throw ValidationError("invalid profit function for '" + t.id + "': " + v.front());
    g.ids.push_back(t.id);
    g.sign.push_back(t.sign());
    g.weight.push_back(pf.weight());
  }
  for (std::size_t i = 0; i < trades.size(); ++i) {
    if (trades[i].sign() < 0) continue;
    for (std::size_t j = 0; j < trades.size(); ++j) {
      if (trades[j].sign() > 0) continue;
      if (!pair_compatible(trades[i], trades[j])) g.edges.emplace_back(i, j);
    }
  }
  for (auto [a, b] : g.edges)
    if (g.sign[a] < 0 || g.sign[b] > 0) throw std::logic_error("same-side incompatibility edge");
  return g;
}

std::vector<std::size_t> max_weight_independent_set_indices(const IncompatibilityGraph& g) {
  const std::size_t n = g.vertex_count();
  if (g.edges.empty()) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  BigInt common = 1;
  for (const auto& w : g.weight) {
    if (w <= 0) throw ValidationError("vertex weights must be positive");
    common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(w));
  }
  std::vector<BigInt> scaled(n);
  BigInt sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = boost::multiprecision::numerator(g.weight[i]) * (common / boost::multiprecision::denominator(g.weight[i]));
    sum += scaled[i];
  }
  const BigInt unbounded = sum + 1;
  // Every flow value is bounded by `sum`; keep headroom so residual updates
  // never overflow the fast path.
  if (unbounded < BigInt{std::numeric_limits<std::int64_t>::max() / 4}) {
    std::vector<std::int64_t> cap(n);
    for (std::size_t i = 0; i < n; ++i) cap[i] = scaled[i].convert_to<std::int64_t>();
    return independent_set_by_cut<std::int64_t>(g, cap, unbounded.convert_to<std::int64_t>());
  }
  return independent_set_by_cut<BigInt>(g, scaled, unbounded);
}

std::vector<std::string> max_weight_independent_set(const IncompatibilityGraph& g) {
  std::vector<std::string> out;
  for (std::size_t i : max_weight_independent_set_indices(g)) out.push_back(g.ids[i]);
  return out;
}

PriceMovement construct_movement(std::span<const Trade> winners) {
  for (std::size_t i = 0; i < winners.size(); ++i)
    for (std::size_t j = i + 1; j < winners.size(); ++j)
      if (!pair_compatible(winners[i], winners[j]))
        throw ValidationError("incompatible set: '" + winners[i].id + "' and '" + winners[j].id +
                              "' cannot both be won");

  PriceMovement movement;
  std::vector<const Trade*> open;
  for (const auto& t : winners) open.push_back(&t);

  while (!open.empty()) {
    // Nearest closing prices above and below 0 among the still-open trades.
    std::optional<Price> up, down;
    for (const Trade* t : open) {
      for (Price p : {t->win, t->lose}) {
        if (p > 0 && (!up || p < *up)) up = p;
        if (p < 0 && (!down || p > *down)) down = p;
      }
    }
    auto only_wins_at = [&](const std::optional<Price>& p) {
      if (!p) return false;
      for (const Trade* t : open)
        if (t->lose == *p) return false;
      return true;
    };
    // Moving below first when both sides are safe.
    std::optional<Price> target;
    if (only_wins_at(down))
      target = down;
    else if (only_wins_at(up))
      target = up;
    // Pairwise compatibility guarantees one side is safe.
    if (!target) throw ValidationError("incompatible set: no safe side to move to");

    // Revisiting the opposite side is free: every price between 0 and the
    // previous extreme there is already closed, so the path folds into a
    // single zig-zag.
    movement.extend_to(*target);
    std::vector<const Trade*> rest;
    for (const Trade* t : open)
      if (t->win != *target) rest.push_back(t);
    open = std::move(rest);
  }
  return movement;
}

MtlSolution solve_mtl(std::span<const Trade> trades, const ProfitOverrides* overrides) {
  const IncompatibilityGraph g = build_graph(trades, overrides);
  const auto chosen = max_weight_independent_set_indices(g);

  std::vector<Trade> winners;
  winners.reserve(chosen.size());
  for (std::size_t i : chosen) winners.push_back(trades[i]);
  PriceMovement movement = construct_movement(winners);

  // Maximality of the independent set makes every loser close on its
  // losing side along the winners' path; extend toward any that did not.
  std::vector<bool> is_winner(trades.size(), false);
  for (std::size_t i : chosen) is_winner[i] = true;
  for (std::size_t i = 0; i < trades.size(); ++i) {
    if (is_winner[i]) continue;
    const Trade& t = trades[i];
    Price lo = 0, hi = 0;
    for (Price p : movement.turning_points()) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    const bool lose_reached = t.lose > 0 ? hi >= t.lose : lo <= t.lose;
    const bool win_reached = t.win > 0 ? hi >= t.win : lo <= t.win;
    if (!lose_reached && !win_reached) movement.extend_to(t.lose);
  }

  SessionOutcome outcome = simulate(trades, movement, overrides);
  MtlSolution sol;
  sol.movement = std::move(movement);
  sol.total_profit = outcome.total_profit;
  sol.per_trade = std::move(outcome.trades);
  for (std::size_t i : chosen) sol.winners.push_back(trades[i].id);

  for (std::size_t i = 0; i < trades.size(); ++i)
    if (sol.per_trade[i].won != static_cast<bool>(is_winner[i]))
      throw std::logic_error("movement does not realize the chosen winners at '" + trades[i].id + "'");
  return sol;
}

}  // namespace maxloss::mtl
