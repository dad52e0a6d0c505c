#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "maxloss/game.hpp"
#include "maxloss/metl.hpp"
#include "maxloss/uniform.hpp"

// Seeded random instances and scripted traders. Everything here is a pure
// function of the engine state passed in, so a seed fixes the output.
namespace maxloss::gen {

using Rng = std::mt19937_64;

struct TradeParams {
  std::size_t count = 8;
  Price price_range = 12;  // closing prices in [-range, range] \ {0}
  int max_size = 5;        // sizes in 1..max_size
};

std::vector<Trade> random_trades(Rng& rng, const TradeParams& params);

struct ProbabilisticParams {
  std::size_t count = 3;
  std::size_t support_limit = 8;  // |union of supports|
  Price price_range = 8;
  int max_size = 4;
};

std::vector<metl::ProbabilisticTrade> random_probabilistic_trades(Rng& rng,
                                                                  const ProbabilisticParams& params);

struct UniformParams {
  std::size_t count = 3;
  Price bound_range = 6;
  int max_size = 4;
};

std::vector<uniform::UniformTrade> random_uniform_trades(Rng& rng, const UniformParams& params);

enum class TraderKind { random_opener, martingale_doubler, close_at_will_mixer };

// A scripted trader.
class TraderScript {
 public:
  TraderScript(TraderKind kind, std::uint64_t seed);

  /// Actions for the next turn. `last` is the previous turn, if any.
  std::vector<game::TraderAction> next(const game::GamePosition& pos, const game::TurnRecord* last);

  TraderKind kind() const noexcept { return kind_; }

 private:
  Trade fresh_trade(const game::GamePosition& pos, Price max_distance, Money size);

  TraderKind kind_;
  Rng rng_;
  std::uint64_t serial_ = 0;
  Money stake_{1};
};

std::string_view to_string(TraderKind kind);

}  // namespace maxloss::gen
