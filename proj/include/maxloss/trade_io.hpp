#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "maxloss/metl.hpp"
#include "maxloss/trade.hpp"
#include "maxloss/uniform.hpp"

// Line-oriented trade-set files. One record per line, whitespace separated;
// '#' starts a comment; blank lines are ignored. Numbers that carry a size or
// probability are exact: integers, fractions ("3/2") or plain decimals
// ("0.25").
//
//   deterministic:  <id> <open> <win> <lose> <size>
//   probabilistic:  <id> <open> <sign> <size> win <p>:<prob>... lose <p>:<prob>...
//                   sign is +1, -1, buy or sell
//   uniform:        <id> <bwin> <blose> <size>
//
// Parsers validate every record and throw ParseError naming the line.
namespace maxloss::io {

std::vector<Trade> read_trades(std::istream& in, const std::string& source = "<input>");
std::vector<metl::ProbabilisticTrade> read_probabilistic_trades(std::istream& in,
                                                                const std::string& source = "<input>");
std::vector<uniform::UniformTrade> read_uniform_trades(std::istream& in,
                                                       const std::string& source = "<input>");

void write_trades(std::ostream& out, std::span<const Trade> trades);
void write_probabilistic_trades(std::ostream& out, std::span<const metl::ProbabilisticTrade> trades);
void write_uniform_trades(std::ostream& out, std::span<const uniform::UniformTrade> trades);

/// Strict integer price: optional sign then digits, within +-2^62.
Price parse_price(const std::string& token);

}  // namespace maxloss::io
