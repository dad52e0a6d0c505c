#include "maxloss/generator.hpp"

#include <algorithm>
#include <set>

namespace maxloss::gen {
namespace {

Price uniform_int(Rng& rng, Price lo, Price hi) {
  return std::uniform_int_distribution<Price>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

std::vector<Trade> random_trades(Rng& rng, const TradeParams& params) {
  std::vector<Trade> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) {
    const bool buy = coin(rng, 0.5);
    const Price up = uniform_int(rng, 1, params.price_range);
    const Price down = -uniform_int(rng, 1, params.price_range);
    Trade t;
    t.id = "T" + std::to_string(i + 1);
    t.win = buy ? up : down;
    t.lose = buy ? down : up;
    // Any open strictly between the bounds keeps both bounds outside
    // (open, 0) since they straddle 0.
    t.open = uniform_int(rng, down + 1, up - 1);
    t.size = Money{uniform_int(rng, 1, params.max_size)};
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<metl::ProbabilisticTrade> random_probabilistic_trades(Rng& rng,
                                                                  const ProbabilisticParams& params) {
  // A shared pool keeps |union of supports| within the limit.
  std::set<Price> pool_set;
  const std::size_t want = std::max<std::size_t>(2, params.support_limit);
  pool_set.insert(uniform_int(rng, 1, params.price_range));
  pool_set.insert(-uniform_int(rng, 1, params.price_range));
  for (int tries = 0; pool_set.size() < want && tries < 200; ++tries) {
    Price p = uniform_int(rng, 1, params.price_range);
    pool_set.insert(coin(rng, 0.5) ? p : -p);
  }
  const std::vector<Price> pool(pool_set.begin(), pool_set.end());

  std::vector<metl::ProbabilisticTrade> out;
  for (std::size_t i = 0; i < params.count; ++i) {
    metl::ProbabilisticTrade t;
    t.id = "P" + std::to_string(i + 1);
    t.sign = coin(rng, 0.5) ? 1 : -1;
    t.size = Money{uniform_int(rng, 1, params.max_size)};
    std::vector<Price> win_side, lose_side;
    for (Price p : pool) (sign_of(p) == t.sign ? win_side : lose_side).push_back(p);
    if (win_side.empty() || lose_side.empty()) {
      t.sign = -t.sign;
      std::swap(win_side, lose_side);
    }
    // open lies strictly between the nearest support points on both sides.
    const Price near_win = t.sign > 0 ? *std::min_element(win_side.begin(), win_side.end())
                                      : *std::max_element(win_side.begin(), win_side.end());
    const Price near_lose = t.sign > 0 ? *std::max_element(lose_side.begin(), lose_side.end())
                                       : *std::min_element(lose_side.begin(), lose_side.end());
    t.open = uniform_int(rng, std::min(near_win, near_lose) + 1, std::max(near_win, near_lose) - 1);

    auto pick_pmf = [&](const std::vector<Price>& side) {
      std::vector<Price> chosen;
      for (Price p : side)
        if (coin(rng, 0.5)) chosen.push_back(p);
      if (chosen.empty()) chosen.push_back(side[static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<Price>(side.size()) - 1))]);
      std::vector<Price> weights;
      Price total = 0;
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        weights.push_back(uniform_int(rng, 1, 4));
        total += weights.back();
      }
      std::vector<std::pair<Price, Money>> pmf;
      for (std::size_t k = 0; k < chosen.size(); ++k)
        pmf.emplace_back(chosen[k], Money{BigInt{weights[k]}, BigInt{total}});
      return pmf;
    };
    t.win_pmf = pick_pmf(win_side);
    t.lose_pmf = pick_pmf(lose_side);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<uniform::UniformTrade> random_uniform_trades(Rng& rng, const UniformParams& params) {
  std::vector<uniform::UniformTrade> out;
  for (std::size_t i = 0; i < params.count; ++i) {
    const bool buy = coin(rng, 0.5);
    const Price w = uniform_int(rng, 1, params.bound_range);
    const Price l = uniform_int(rng, 1, params.bound_range);
    out.push_back({"U" + std::to_string(i + 1), buy ? w : -w, buy ? -l : l,
                   Money{uniform_int(rng, 1, params.max_size)}});
  }
  return out;
}

std::string_view to_string(TraderKind kind) {
  switch (kind) {
    case TraderKind::random_opener: return "random-opener";
    case TraderKind::martingale_doubler: return "martingale-doubler";
    case TraderKind::close_at_will_mixer: return "close-at-will-mixer";
  }
  return "random-opener";
}

namespace {
const Money kMaxStake{1 << 20};
}  // namespace

TraderScript::TraderScript(TraderKind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}

Trade TraderScript::fresh_trade(const game::GamePosition& pos, Price max_distance, Money size) {
  const bool buy = coin(rng_, 0.5);
  const Price up = pos.price + uniform_int(rng_, 1, max_distance);
  const Price down = pos.price - uniform_int(rng_, 1, max_distance);
  return Trade{"t" + std::to_string(++serial_), pos.price, buy ? up : down, buy ? down : up,
               std::move(size)};
}

std::vector<game::TraderAction> TraderScript::next(const game::GamePosition& pos,
                                                   const game::TurnRecord* last) {
  std::vector<game::TraderAction> actions;
  switch (kind_) {
    case TraderKind::random_opener: {
      if (pos.open_trades.size() < 12) {
        const auto k = uniform_int(rng_, 0, 2);
        for (Price i = 0; i < k; ++i)
          actions.push_back(game::OpenAction{fresh_trade(pos, 6, Money{uniform_int(rng_, 1, 5)})});
      }
      break;
    }
    case TraderKind::martingale_doubler: {
      // The game ends once nothing is open, so rounds overlap: a new bet
      // goes on every turn, doubled after each bet the trader lost.
      if (last) {
        for (const auto& c : last->trades_closed) {
          if (c.value > 0 && stake_ < kMaxStake) stake_ *= 2;
          if (c.value < 0) stake_ = 1;
        }
      }
      if (pos.open_trades.size() < 8) actions.push_back(game::OpenAction{fresh_trade(pos, 6, stake_)});
      break;
    }
    case TraderKind::close_at_will_mixer: {
      if (pos.open_trades.size() < 10 && (pos.open_trades.empty() || coin(rng_, 0.6)))
        actions.push_back(game::OpenAction{fresh_trade(pos, 6, Money{uniform_int(rng_, 1, 3)})});
      if (!pos.open_trades.empty() && pos.open_trades.size() < 16 && coin(rng_, 0.5)) {
        auto it = pos.open_trades.begin();
        std::advance(it, uniform_int(rng_, 0, static_cast<Price>(pos.open_trades.size()) - 1));
        actions.push_back(game::CloseAtWillAction{it->first});
      }
      break;
    }
  }
  return actions;
}

}  // namespace maxloss::gen
