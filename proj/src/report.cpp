#include "maxloss/report.hpp"

#include <ostream>

#include "maxloss/metl.hpp"
#include "maxloss/uniform.hpp"

namespace maxloss::report {
namespace {

std::string money(const Money& m, bool decimal) {
  return decimal ? "~" + format_decimal(m) : format_money(m);
}

}  // namespace

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::deterministic: return "mtl";
    case Kind::probabilistic: return "metl";
    case Kind::uniform: return "uniform";
  }
  return "mtl";
}

SolutionReport make_report(Kind kind, mtl::MtlSolution solution) {
  SolutionReport r;
  r.kind = kind;
  r.solution = std::move(solution);
  if (kind == Kind::probabilistic) {
    for (auto& a : metl::aggregate_by_origin(r.solution.per_trade))
      r.by_origin.push_back({std::move(a.id), std::move(a.expected_profit)});
  } else if (kind == Kind::uniform) {
    for (const auto& t : r.solution.per_trade) {
      std::string origin = uniform::origin_id(t.id);
      if (r.by_origin.empty() || r.by_origin.back().id != origin)
        r.by_origin.push_back({std::move(origin), Money{0}});
      r.by_origin.back().profit += t.profit;
    }
  }
  return r;
}

void write_text(std::ostream& out, const SolutionReport& r, bool decimal) {
  const auto& s = r.solution;
  out << "kind " << to_string(r.kind) << '\n';
  out << "total " << money(s.total_profit, decimal) << '\n';
  out << "movement";
  for (Price p : s.movement.turning_points()) out << ' ' << p;
  out << '\n';
  out << "movement_steps " << s.movement.unit_length() << '\n';
  out << "winners";
  for (const auto& w : s.winners) out << ' ' << w;
  out << '\n';
  for (const auto& t : s.per_trade)
    out << "trade " << t.id << ' ' << (t.won ? "won" : "lost") << " at " << t.closing << " profit "
        << money(t.profit, decimal) << '\n';
  for (const auto& o : r.by_origin) out << "origin " << o.id << " profit " << money(o.profit, decimal) << '\n';
  if (r.oracle_total) {
    out << "oracle " << money(*r.oracle_total, decimal) << ' '
        << (*r.oracle_total == s.total_profit ? "agrees" : "DISAGREES") << '\n';
  }
}

nlohmann::json to_json(const SolutionReport& r, bool decimal) {
  const auto& s = r.solution;
  nlohmann::json trades = nlohmann::json::array();
  for (const auto& t : s.per_trade)
    trades.push_back({{"id", t.id}, {"won", t.won}, {"closing", t.closing}, {"profit", money(t.profit, decimal)}});
  nlohmann::json j = {{"kind", to_string(r.kind)},
                      {"total_profit", money(s.total_profit, decimal)},
                      {"movement", s.movement.turning_points()},
                      {"movement_steps", s.movement.unit_length()},
                      {"winners", s.winners},
                      {"trades", std::move(trades)}};
  if (!r.by_origin.empty()) {
    nlohmann::json origins = nlohmann::json::array();
    for (const auto& o : r.by_origin) origins.push_back({{"id", o.id}, {"profit", money(o.profit, decimal)}});
    j["by_origin"] = std::move(origins);
  }
  if (r.oracle_total)
    j["oracle"] = {{"total_profit", money(*r.oracle_total, decimal)},
                   {"agrees", *r.oracle_total == s.total_profit}};
  return j;
}

}  // namespace maxloss::report
