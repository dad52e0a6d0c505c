#include "maxloss/money.hpp"

#include <cctype>
#include <stdexcept>

namespace maxloss {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_unsigned(std::string_view s) {
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Money parse_money(std::string_view text) {
  const std::string original{text};
  auto fail = [&]() -> Money {
    throw std::invalid_argument("not an exact number: '" + original + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Money value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    BigInt d = parse_unsigned(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + original + "'");
    value = Money{parse_unsigned(num), d};
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      return fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = (whole.empty() ? BigInt{0} : parse_unsigned(whole)) * scale +
                 (frac.empty() ? BigInt{0} : parse_unsigned(frac));
    value = Money{num, scale};
  } else {
    if (!all_digits(text)) return fail();
    value = Money{parse_unsigned(text)};
  }
  return negative ? Money{-value} : value;
}

std::string format_money(const Money& m) {
  const BigInt& num = boost::multiprecision::numerator(m);
  const BigInt& den = boost::multiprecision::denominator(m);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_decimal(const Money& m, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = boost::multiprecision::numerator(m);
  const BigInt& den = boost::multiprecision::denominator(m);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

}  // namespace maxloss
