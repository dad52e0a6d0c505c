#include "maxloss/uniform.hpp"

#include <algorithm>
#include <stdexcept>
#include <functional>
#include <set>

#include "maxloss/errors.hpp"

namespace maxloss::uniform {

std::vector<std::string> validate_uniform_trade(const UniformTrade& t) {
  std::vector<std::string> out;
  if (t.id.empty()) out.emplace_back("id must be non-empty");
  if (t.bwin == 0) out.emplace_back("bwin must be nonzero");
  if (t.blose == 0) out.emplace_back("blose must be nonzero");
  if (t.bwin != 0 && t.blose != 0 && sign_of(t.bwin) == sign_of(t.blose))
    out.emplace_back("bwin and blose must lie on opposite sides of 0");
  for (Price p : {t.bwin, t.blose})
    if (p > kMaxPriceMagnitude || p < -kMaxPriceMagnitude)
      out.emplace_back("bound exceeds 2^62 in magnitude");
  if (t.size <= 0) out.emplace_back("size must be positive");
  return out;
}

bool CollapseGrid::contains(Price p) const {
  return std::binary_search(above.begin(), above.end(), p) ||
         std::binary_search(below.begin(), below.end(), p, std::greater<>{});
}

CollapseGrid collapse_grid(std::span<const UniformTrade> trades) {
  std::set<Price> pos, neg;
  for (const auto& t : trades) {
    for (Price p : {t.bwin, t.blose}) (p > 0 ? pos : neg).insert(p);
  }
  CollapseGrid g;
  g.above.assign(pos.begin(), pos.end());
  g.below.assign(neg.rbegin(), neg.rend());
  return g;
}

std::vector<CollapsedTrade> collapse(std::span<const UniformTrade> trades) {
  std::set<std::string_view> ids;
  for (const auto& t : trades) {
    if (auto v = validate_uniform_trade(t); !v.empty())
      throw ValidationError("invalid uniform trade '" + t.id + "': " + v.front());
    if (!ids.insert(t.id).second) throw ValidationError("duplicate trade id '" + t.id + "'");
  }
  const CollapseGrid grid = collapse_grid(trades);
  std::vector<CollapsedTrade> out;
  for (const auto& t : trades) {
    const Price reach_above = std::max(t.bwin, t.blose);
    const Price reach_below = std::min(t.bwin, t.blose);
    // The trade's own bounds are grid points, so its support is a union of
    // whole cells: cells 1..a above and 1..b below.
    const auto a = static_cast<std::size_t>(
        std::find(grid.above.begin(), grid.above.end(), reach_above) - grid.above.begin()) + 1;
    const auto b = static_cast<std::size_t>(
        std::find(grid.below.begin(), grid.below.end(), reach_below) - grid.below.begin()) + 1;
    if (a > grid.above.size() || b > grid.below.size())
      throw std::logic_error("trade support is not covered by whole grid cells");

    const Money width_scale =
        t.size / (Money{2} * to_money(reach_above) * to_money(-reach_below));
    for (std::size_t i = 1; i <= a; ++i) {
      const Money p_i = to_money(grid.above[i - 1]);
      const Money p_prev = i == 1 ? Money{0} : to_money(grid.above[i - 2]);
      for (std::size_t j = 1; j <= b; ++j) {
        const Money q_j = to_money(grid.below[j - 1]);
        const Money q_prev = j == 1 ? Money{0} : to_money(grid.below[j - 2]);
        // Cell sums of k over (p_{i-1}, p_i] and of h over [q_j, q_{j-1}),
        // each weighted by the other side's cell width.
        const Money above_sum =
            (q_prev - q_j) * width_scale * (p_i * p_i + p_i - p_prev * p_prev - p_prev);
        const Money below_sum =
            (p_i - p_prev) * width_scale * (-q_j * q_j + q_j + q_prev * q_prev - q_prev);

        CollapsedTrade c;
        c.origin = t.id;
        c.above_index = i;
        c.below_index = j;
        c.trade.id = t.id + "#" + std::to_string(i) + "/" + std::to_string(j);
        c.trade.open = 0;
        c.trade.size = t.size;
        if (t.sign() > 0) {
          c.trade.win = grid.above[i - 1];
          c.trade.lose = grid.below[j - 1];
          c.profit = {above_sum, below_sum};
        } else {
          c.trade.win = grid.below[j - 1];
          c.trade.lose = grid.above[i - 1];
          c.profit = {-below_sum, -above_sum};
        }
        if (c.profit.win_profit <= 0 || c.profit.loss_profit >= 0)
          throw std::logic_error("collapsed profit has the wrong sign");
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

metl::ProbabilisticTrade to_probabilistic(const UniformTrade& t) {
  if (auto v = validate_uniform_trade(t); !v.empty())
    throw ValidationError("invalid uniform trade '" + t.id + "': " + v.front());
  metl::ProbabilisticTrade p;
  p.id = t.id;
  p.open = 0;
  p.sign = t.sign();
  p.size = t.size;
  auto uniform_pmf = [](Price bound) {
    std::vector<std::pair<Price, Money>> pmf;
    const Price n = bound > 0 ? bound : -bound;
    const Money prob{BigInt{1}, BigInt{n}};
    for (Price k = 1; k <= n; ++k) pmf.emplace_back(bound > 0 ? k : -k, prob);
    return pmf;
  };
  p.win_pmf = uniform_pmf(t.bwin);
  p.lose_pmf = uniform_pmf(t.blose);
  return p;
}

mtl::MtlSolution solve_uniform(std::span<const UniformTrade> trades) {
  const auto collapsed = collapse(trades);
  std::vector<Trade> deterministic;
  ProfitOverrides profits;
  deterministic.reserve(collapsed.size());
  for (const auto& c : collapsed) {
    deterministic.push_back(c.trade);
    profits.emplace(c.trade.id, c.profit);
  }
  return mtl::solve_mtl(deterministic, &profits);
}

std::string origin_id(const std::string& collapsed_id) {
  auto hash = collapsed_id.rfind('#');
  return hash == std::string::npos ? collapsed_id : collapsed_id.substr(0, hash);
}

}  // namespace maxloss::uniform
