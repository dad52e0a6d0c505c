#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxloss/mtl.hpp"

namespace maxloss::report {

enum class Kind { deterministic, probabilistic, uniform };

std::string_view to_string(Kind k);

struct OriginTotal {
  std::string id;
  Money profit;
};

struct SolutionReport {
  Kind kind = Kind::deterministic;
  mtl::MtlSolution solution;
  // Per original trade for probabilistic and uniform inputs.
  std::vector<OriginTotal> by_origin;
  std::optional<Money> oracle_total;
};

SolutionReport make_report(Kind kind, mtl::MtlSolution solution);

/// Human-readable form. With `decimal`, money is written as "~x.xxxxxx"
/// approximations instead of exact fractions.
void write_text(std::ostream& out, const SolutionReport& r, bool decimal = false);

nlohmann::json to_json(const SolutionReport& r, bool decimal = false);

}  // namespace maxloss::report
