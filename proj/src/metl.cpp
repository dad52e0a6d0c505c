#include "maxloss/metl.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "maxloss/errors.hpp"

namespace maxloss::metl {
namespace {

bool strictly_between(Price x, Price a, Price b) {
  return (a < x && x < b) || (b < x && x < a);
}

void check_pmf(const std::vector<std::pair<Price, Money>>& pmf, const char* name,
               const ProbabilisticTrade& t, bool winning, std::vector<std::string>& out) {
  if (pmf.empty()) {
    out.push_back(std::string(name) + " pmf is empty");
    return;
  }
  Money total = 0;
  std::set<Price> seen;
  for (auto [p, prob] : pmf) {
    if (prob <= 0) out.push_back(std::string(name) + " probability at " + std::to_string(p) +
                                 " must be positive");
    if (!seen.insert(p).second)
      out.push_back(std::string(name) + " pmf lists price " + std::to_string(p) + " twice");
    total += prob;
    if (p == 0) out.push_back(std::string(name) + " support contains the current price 0");
    if (strictly_between(p, t.open, 0))
      out.push_back(std::string(name) + " support point " + std::to_string(p) +
                    " lies between open and 0");
    if (p > kMaxPriceMagnitude || p < -kMaxPriceMagnitude)
      out.push_back(std::string(name) + " support point exceeds 2^62 in magnitude");
    // Winning prices lie on the sign side of open, losing prices opposite.
    const int side = winning ? t.sign : -t.sign;
    if (sign_of(p - t.open) != side)
      out.push_back(std::string(name) + " support point " + std::to_string(p) +
                    " is on the wrong side of open");
  }
  if (total != 1) out.push_back(std::string(name) + " pmf sums to " + format_money(total) + ", not 1");
}

}  // namespace

std::vector<std::string> validate_probabilistic_trade(const ProbabilisticTrade& t) {
  std::vector<std::string> out;
  if (t.id.empty()) out.emplace_back("id must be non-empty");
  if (t.sign != 1 && t.sign != -1) out.emplace_back("sign must be +1 or -1");
  if (t.size <= 0) out.emplace_back("size must be positive");
  if (t.sign == 1 || t.sign == -1) {
    check_pmf(t.win_pmf, "win", t, true, out);
    check_pmf(t.lose_pmf, "lose", t, false, out);
  }
  return out;
}

std::vector<Price> support(std::span<const ProbabilisticTrade> trades) {
  std::set<Price> s;
  for (const auto& t : trades) {
    for (const auto& [p, _] : t.win_pmf) s.insert(p);
    for (const auto& [p, _] : t.lose_pmf) s.insert(p);
  }
  return {s.begin(), s.end()};
}

std::vector<Trade> expand(const ProbabilisticTrade& t) {
  if (auto v = validate_probabilistic_trade(t); !v.empty())
    throw ValidationError("invalid probabilistic trade '" + t.id + "': " + v.front());
  std::vector<Trade> out;
  out.reserve(t.win_pmf.size() * t.lose_pmf.size());
  for (const auto& [w, fw] : t.win_pmf) {
    for (const auto& [l, gl] : t.lose_pmf) {
      out.push_back(Trade{t.id + "@" + std::to_string(w) + "/" + std::to_string(l), t.open, w, l,
                          fw * gl * t.size});
    }
  }
  return out;
}

std::vector<Trade> expand_all(std::span<const ProbabilisticTrade> trades) {
  std::set<std::string_view> ids;
  std::vector<Trade> out;
  for (const auto& t : trades) {
    if (!ids.insert(t.id).second) throw ValidationError("duplicate trade id '" + t.id + "'");
    auto part = expand(t);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::string origin_id(const std::string& expanded_id) {
  auto at = expanded_id.rfind('@');
  return at == std::string::npos ? expanded_id : expanded_id.substr(0, at);
}

mtl::MtlSolution solve_metl(std::span<const ProbabilisticTrade> trades) {
  const auto expanded = expand_all(trades);
  return mtl::solve_mtl(expanded);
}

std::vector<AggregatedProfit> aggregate_by_origin(std::span<const TradeResult> per_trade) {
  std::vector<AggregatedProfit> out;
  std::map<std::string, std::size_t> index;
  for (const auto& r : per_trade) {
    std::string origin = origin_id(r.id);
    auto [it, fresh] = index.try_emplace(origin, out.size());
    if (fresh) out.push_back({origin, Money{0}});
    out[it->second].expected_profit += r.profit;
  }
  return out;
}

}  // namespace maxloss::metl
