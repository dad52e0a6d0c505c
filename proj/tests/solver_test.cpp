#include <doctest.h>

#include <fstream>
#include <set>

#include "helpers.hpp"
#include "maxloss/errors.hpp"
#include "maxloss/generator.hpp"
#include "maxloss/mtl.hpp"
#include "maxloss/oracle.hpp"
#include "maxloss/trade_io.hpp"
#include "maxloss/uniform.hpp"

using namespace maxloss;
using maxloss::testing::four_trades;
using maxloss::testing::make_trade;

namespace {

metl::ProbabilisticTrade prob(std::string id, Price open, int sign, long size,
                              std::vector<std::pair<Price, Money>> win,
                              std::vector<std::pair<Price, Money>> lose) {
  return {std::move(id), open, sign, Money{size}, std::move(win), std::move(lose)};
}

const Money half = Money{1} / 2;

}  // namespace

TEST_SUITE("mtl") {

TEST_CASE("incompatibility graph") {
  const std::vector<Trade> same{make_trade("a", 0, 3, -1), make_trade("b", 0, 5, -2)};
  CHECK(mtl::build_graph(same).edges.empty());
  CHECK(mtl::build_graph(std::vector<Trade>{}).vertex_count() == 0);

  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  const auto g = mtl::build_graph(pair);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.weight == std::vector<Money>{3, 3});
  CHECK(g.buy_side() == std::vector<std::string>{"a"});
  CHECK(g.sell_side() == std::vector<std::string>{"b"});

  const auto four = mtl::build_graph(four_trades());
  std::set<std::pair<std::string, std::string>> edges;
  for (auto [b, s] : four.edges) edges.emplace(four.ids[b], four.ids[s]);
  CHECK(edges == std::set<std::pair<std::string, std::string>>{{"T1", "T2"}, {"T4", "T2"}});
}

TEST_CASE("maximum weight independent set") {
  const std::vector<Trade> same{make_trade("a", 0, 3, -1), make_trade("b", 0, 5, -2)};
  CHECK(mtl::max_weight_independent_set(mtl::build_graph(same)).size() == 2);

  // Equal weights on a single edge: the minimal source side of the cut
  // leaves out the buy, so the sell is chosen.
  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(mtl::max_weight_independent_set(mtl::build_graph(pair)) == std::vector<std::string>{"b"});

  mtl::IncompatibilityGraph path;
  path.ids = {"t1", "t2", "t3"};
  path.sign = {1, -1, 1};
  path.weight = {5, 4, 5};
  path.edges = {{0, 1}, {2, 1}};
  CHECK(mtl::max_weight_independent_set(path) == std::vector<std::string>{"t1", "t3"});

  mtl::IncompatibilityGraph frac;
  frac.ids = {"x", "y", "z"};
  frac.sign = {1, -1, -1};
  frac.weight = {Money{5} / 3, Money{5} / 6, Money{5} / 6 + Money{1} / 100};
  frac.edges = {{0, 1}, {0, 2}};
  CHECK(mtl::max_weight_independent_set(frac) == std::vector<std::string>{"y", "z"});
}

TEST_CASE("movement construction") {
  const std::vector<Trade> one{make_trade("a", 0, 5, -3)};
  CHECK(mtl::construct_movement(one).turning_points() == std::vector<Price>{0, 5});
  const std::vector<Trade> two{make_trade("a", 0, 2, -5), make_trade("b", 0, -4, 3)};
  CHECK(mtl::construct_movement(two).turning_points() == std::vector<Price>{0, -4, 2});
  CHECK(mtl::construct_movement(std::vector<Trade>{}).turning_points() == std::vector<Price>{0});
  const std::vector<Trade> bad{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK_THROWS_WITH_AS(mtl::construct_movement(bad), doctest::Contains("incompatible set"),
                       ValidationError);
}

TEST_CASE("solve_mtl examples") {
  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(mtl::solve_mtl(pair).total_profit == 1);

  std::vector<Trade> ladder;
  for (int k = 1; k <= 4; ++k) ladder.push_back(make_trade("k" + std::to_string(k), 0, k, -1));
  const auto s = mtl::solve_mtl(ladder);
  CHECK(s.total_profit == 10);
  CHECK(s.winners.size() == 4);
  CHECK(s.movement.turning_points() == std::vector<Price>{0, 4});

  const auto empty = mtl::solve_mtl(std::vector<Trade>{});
  CHECK(empty.total_profit == 0);
  CHECK(empty.movement.turning_points() == std::vector<Price>{0});
}

TEST_CASE("worked four-trade example") {
  std::ifstream f(MAXLOSS_TEST_DATA "/four_trades.trades");
  REQUIRE(f);
  const auto trades = io::read_trades(f, "four_trades.trades");
  CHECK(trades == four_trades());
  // The reconstruction matches the example only if the reference search agrees.
  REQUIRE(oracle::oracle_mtl(trades, nullptr) == 52);
  REQUIRE(oracle::oracle_movement_search(trades, nullptr) == 52);
  const auto s = mtl::solve_mtl(trades);
  CHECK(s.total_profit == 52);
  CHECK(s.winners == std::vector<std::string>{"T1", "T3", "T4"});
  CHECK(s.movement.turning_points() == std::vector<Price>{0, 5});
  CHECK(s.per_trade[0].profit == 30);
  CHECK(s.per_trade[1].profit == -15);
  CHECK(s.per_trade[2].profit == 10);
  CHECK(s.per_trade[3].profit == 27);
}

TEST_CASE("custom profit functions") {
  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  ProfitOverrides o{{"b", {Money{10}, Money{-1}}}};
  const auto s = mtl::solve_mtl(pair, &o);
  CHECK(s.winners == std::vector<std::string>{"b"});
  CHECK(s.total_profit == 9);
  CHECK(s.total_profit == oracle::oracle_mtl(pair, &o));
  ProfitOverrides bad{{"a", {Money{-1}, Money{-2}}}};
  CHECK_THROWS_AS(mtl::solve_mtl(pair, &bad), ValidationError);
}

TEST_CASE("extreme prices stay exact") {
  const Price big = kMaxPriceMagnitude;
  const std::vector<Trade> t{make_trade("a", 0, big, -big, 3), make_trade("b", 0, -big, big, 1),
                             make_trade("c", big - 1, big, -1, 2)};
  const auto s = mtl::solve_mtl(t);
  CHECK(s.total_profit == Money{BigInt{big} * 3 - BigInt{big} + 2});
}

}  // TEST_SUITE

TEST_SUITE("metl") {

TEST_CASE("expansion") {
  const auto point = prob("p", 1, 1, 3, {{2, 1}}, {{-1, 1}});
  const auto e = metl::expand(point);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == Trade{"p@2/-1", 1, 2, -1, Money{3}});

  const auto four = prob("q", 0, 1, 4, {{1, half}, {2, half}}, {{-1, half}, {-2, half}});
  const auto f = metl::expand(four);
  REQUIRE(f.size() == 4);
  Money total;
  for (const auto& t : f) {
    CHECK(t.size == 1);
    total += t.size;
  }
  CHECK(total == 4);
  CHECK(metl::origin_id("q@1/-2") == "q");
  CHECK(metl::support(std::vector{four}) == std::vector<Price>{-2, -1, 1, 2});
}

TEST_CASE("pmf validation") {
  CHECK(metl::validate_probabilistic_trade(prob("a", 0, 1, 1, {{1, 1}}, {{-1, 1}})).empty());
  CHECK_FALSE(metl::validate_probabilistic_trade(prob("a", 0, 1, 1, {{1, half}}, {{-1, 1}})).empty());
  CHECK_FALSE(metl::validate_probabilistic_trade(prob("a", 0, 1, 1, {{-1, 1}}, {{-2, 1}})).empty());
  CHECK_FALSE(
      metl::validate_probabilistic_trade(prob("a", 0, 1, 1, {{1, half}, {1, half}}, {{-1, 1}})).empty());
  CHECK_FALSE(metl::validate_probabilistic_trade(prob("a", 2, 1, 1, {{3, 1}}, {{1, 1}})).empty());
}

TEST_CASE("solve_metl") {
  const std::vector point{prob("a", 0, 1, 1, {{2, 1}}, {{-1, 1}}), prob("b", 0, -1, 1, {{-2, 1}}, {{1, 1}})};
  const std::vector<Trade> det{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(metl::solve_metl(point).total_profit == mtl::solve_mtl(det).total_profit);

  const std::vector single{prob("a", 0, 1, 2, {{1, half}, {2, half}}, {{-1, 1}})};
  REQUIRE(oracle::oracle_metl(single) == 3);
  const auto s = metl::solve_metl(single);
  CHECK(s.total_profit == 3);
  const auto agg = metl::aggregate_by_origin(s.per_trade);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].expected_profit == 3);

  const auto none = metl::solve_metl(std::vector<metl::ProbabilisticTrade>{});
  CHECK(none.total_profit == 0);
  CHECK(none.movement.turning_points() == std::vector<Price>{0});
}

}  // TEST_SUITE

TEST_SUITE("uniform") {

TEST_CASE("single trade closed form") {
  const std::vector t{uniform::UniformTrade{"U", 2, -2, Money{4}}};
  const auto grid = uniform::collapse_grid(t);
  CHECK(grid.above == std::vector<Price>{2});
  CHECK(grid.below == std::vector<Price>{-2});
  const auto cells = uniform::collapse(t);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].trade.id == "U#1/1");
  CHECK(cells[0].profit.win_profit == 6);
  CHECK(cells[0].profit.loss_profit == -6);
  REQUIRE(oracle::oracle_metl(std::vector{uniform::to_probabilistic(t[0])}) == 6);
  const auto s = uniform::solve_uniform(t);
  CHECK(s.total_profit == 6);
  CHECK(s.movement.turning_points() == std::vector<Price>{0, 2});
  CHECK(uniform::origin_id("U#1/1") == "U");
}

TEST_CASE("degenerate uniform is deterministic") {
  const std::vector t{uniform::UniformTrade{"U", 1, -1, Money{1}}};
  CHECK(uniform::solve_uniform(t).total_profit == 1);
}

TEST_CASE("unit-width cell equals one expanded trade") {
  // Grid {1, 2} on the win side and {-1} below: cell (2, 1) covers only
  // win price 2.
  const std::vector t{uniform::UniformTrade{"A", 2, -1, Money{6}}, uniform::UniformTrade{"B", 1, -1, Money{1}}};
  const auto cells = uniform::collapse(t);
  const auto it = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.trade.id == "A#2/1"; });
  REQUIRE(it != cells.end());
  CHECK(it->profit.win_profit == Money{6} / (2 * 1) * 2);
}

TEST_CASE("cells outside a trade's support are skipped") {
  const std::vector t{uniform::UniformTrade{"A", 1, -1, Money{1}}, uniform::UniformTrade{"B", 3, -3, Money{1}}};
  for (const auto& c : uniform::collapse(t))
    if (c.origin == "A") CHECK(c.trade.id == "A#1/1");
}

TEST_CASE("buy and sell agree with the expanded instance") {
  const std::vector t{uniform::UniformTrade{"B", 2, -2, Money{1}}, uniform::UniformTrade{"S", -2, 2, Money{1}}};
  std::vector<metl::ProbabilisticTrade> p;
  for (const auto& u : t) p.push_back(uniform::to_probabilistic(u));
  const Money expected = metl::solve_metl(p).total_profit;
  REQUIRE(expected == oracle::oracle_metl(p));
  CHECK(uniform::solve_uniform(t).total_profit == expected);
}

TEST_CASE("invalid uniform trades") {
  CHECK_FALSE(uniform::validate_uniform_trade({"U", 2, 3, Money{1}}).empty());
  CHECK_FALSE(uniform::validate_uniform_trade({"U", 0, -3, Money{1}}).empty());
  CHECK_FALSE(uniform::validate_uniform_trade({"U", 2, -3, Money{0}}).empty());
}

}  // TEST_SUITE

TEST_SUITE("oracle") {

TEST_CASE("subset oracle") {
  CHECK(oracle::oracle_mtl(std::vector{make_trade("a", 0, 1, -1)}, nullptr) == 1);
  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(oracle::oracle_mtl(pair, nullptr) == 1);
  const std::vector<Trade> three{make_trade("a", 0, 3, -1), make_trade("b", 0, 5, -2, 2),
                                 make_trade("c", 0, -4, 6)};
  CHECK(oracle::oracle_mtl(three, nullptr) == 3 + 10 + 4);
}

TEST_CASE("movement search") {
  const auto r = oracle::search_movements(std::vector{make_trade("a", 0, 1, -1)}, nullptr);
  CHECK(r.best_profit == 1);
  CHECK(r.best_movement == std::vector<Price>{0, 1});
  const std::vector<Trade> pair{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(oracle::oracle_movement_search(pair, nullptr) == 1);
  CHECK(oracle::oracle_movement_search(std::vector<Trade>{}, nullptr) == 0);
  CHECK_FALSE(oracle::winnable_together(pair[0], pair[1]));
  CHECK_FALSE(oracle::winnable_together(pair[0], pair[1], true));
  CHECK(oracle::winnable_together(make_trade("a", 0, 2, -5), make_trade("b", 0, -4, 3), true));
}

TEST_CASE("probabilistic oracle") {
  const std::vector point{prob("a", 0, 1, 1, {{2, 1}}, {{-1, 1}}), prob("b", 0, -1, 1, {{-2, 1}}, {{1, 1}})};
  const std::vector<Trade> det{make_trade("a", 0, 2, -1), make_trade("b", 0, -2, 1)};
  CHECK(oracle::oracle_metl(point) == oracle::oracle_mtl(det, nullptr));
  const std::vector mixed{prob("a", 0, 1, 2, {{1, half}, {3, half}}, {{-2, 1}}),
                          prob("b", 1, -1, 3, {{-1, Money{1} / 3}, {-3, Money{2} / 3}}, {{2, 1}})};
  CHECK(oracle::oracle_metl(mixed) == metl::solve_metl(mixed).total_profit);
}

TEST_CASE("budget refusals") {
  gen::Rng rng(5);
  const auto many = gen::random_trades(rng, {13, 6, 2});
  CHECK_THROWS_AS(oracle::oracle_mtl(many, nullptr), BudgetExceeded);
  oracle::OracleBudget wide;
  wide.max_trades = 13;
  CHECK_NOTHROW(oracle::oracle_movement_search(many, nullptr, wide));
  oracle::OracleBudget narrow;
  narrow.price_radius = 2;
  CHECK_THROWS_AS(oracle::oracle_movement_search(std::vector{make_trade("a", 0, 5, -1)}, nullptr, narrow),
                  BudgetExceeded);
}

TEST_CASE("sparse and dense candidate prices agree") {
  gen::Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto t = gen::random_trades(rng, {5, 6, 3});
    CHECK(oracle::search_movements(t, nullptr).best_profit ==
          oracle::search_movements(t, nullptr, {}, true).best_profit);
  }
}

}  // TEST_SUITE
