#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace maxloss {

// Prices are integer ticks relative to the price at session start.
using Price = std::int64_t;

// Largest accepted |price|. Differences of two prices still fit in 64 bits
// only up to 2^62, so all profit arithmetic goes through Money.
inline constexpr Price kMaxPriceMagnitude = Price{1} << 62;

using BigInt = boost::multiprecision::cpp_int;
using Money = boost::multiprecision::cpp_rational;

inline Money to_money(Price p) { return Money{BigInt{p}}; }

/// Parses an exact rational: "7", "-3/2", "0.125". Exponents, infinities and
/// hex are rejected. Throws std::invalid_argument on malformed input.
Money parse_money(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_money(const Money& m);

/// Fixed-point rendering rounded half away from zero; approximations only.
std::string format_decimal(const Money& m, int digits = 6);

inline int sign_of(Price p) { return (p > 0) - (p < 0); }

}  // namespace maxloss
