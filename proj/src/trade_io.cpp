#include "maxloss/trade_io.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "maxloss/errors.hpp"

namespace maxloss::io {
namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

// Splits the stream into non-empty records with comments removed.
std::vector<Line> records(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream fields(text);
    Line line{number, {}};
    for (std::string f; fields >> f;) line.fields.push_back(std::move(f));
    if (!line.fields.empty()) out.push_back(std::move(line));
  }
  return out;
}

template <typename F>
auto at_line(const std::string& source, int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(source, line, e.what());
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

void check_unique(std::set<std::string>& seen, const std::string& id, const std::string& source,
                  int line) {
  if (!seen.insert(id).second) throw ParseError(source, line, "duplicate trade id '" + id + "'");
}

std::pair<Price, Money> parse_mass(const std::string& token) {
  auto colon = token.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected <price>:<probability>, got '" + token + "'");
  return {parse_price(token.substr(0, colon)), parse_money(token.substr(colon + 1))};
}

}  // namespace

Price parse_price(const std::string& token) {
  std::size_t i = (!token.empty() && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
  if (i == token.size()) throw std::invalid_argument("expected an integer price, got '" + token + "'");
  for (std::size_t k = i; k < token.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(token[k])))
      throw std::invalid_argument("expected an integer price, got '" + token + "'");
  BigInt v{token.substr(i)};
  if (v > BigInt{kMaxPriceMagnitude})
    throw std::invalid_argument("price '" + token + "' exceeds 2^62 in magnitude");
  const auto magnitude = v.convert_to<Price>();
  return token[0] == '-' ? -magnitude : magnitude;
}

std::vector<Trade> read_trades(std::istream& in, const std::string& source) {
  std::vector<Trade> out;
  std::set<std::string> seen;
  for (const auto& [line, f] : records(in)) {
    if (f.size() != 5)
      throw ParseError(source, line,
                       "expected 5 fields <id> <open> <win> <lose> <size>, got " +
                           std::to_string(f.size()));
    Trade t = at_line(source, line, [&] {
      return Trade{f[0], parse_price(f[1]), parse_price(f[2]), parse_price(f[3]), parse_money(f[4])};
    });
    if (auto v = validate_trade(t); !v.empty())
      throw ParseError(source, line, "invalid trade '" + t.id + "': " + join(v));
    check_unique(seen, t.id, source, line);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<metl::ProbabilisticTrade> read_probabilistic_trades(std::istream& in,
                                                                const std::string& source) {
  std::vector<metl::ProbabilisticTrade> out;
  std::set<std::string> seen;
  for (const auto& [line, f] : records(in)) {
    if (f.size() < 8)
      throw ParseError(source, line,
                       "expected <id> <open> <sign> <size> win <p>:<prob>... lose <p>:<prob>...");
    metl::ProbabilisticTrade t = at_line(source, line, [&] {
      metl::ProbabilisticTrade p;
      p.id = f[0];
      p.open = parse_price(f[1]);
      if (f[2] == "+1" || f[2] == "1" || f[2] == "buy")
        p.sign = 1;
      else if (f[2] == "-1" || f[2] == "sell")
        p.sign = -1;
      else
        throw std::invalid_argument("sign must be +1, -1, buy or sell, got '" + f[2] + "'");
      p.size = parse_money(f[3]);
      if (f[4] != "win") throw std::invalid_argument("expected keyword 'win', got '" + f[4] + "'");
      std::size_t k = 5;
      for (; k < f.size() && f[k] != "lose"; ++k) p.win_pmf.push_back(parse_mass(f[k]));
      if (k == f.size()) throw std::invalid_argument("missing keyword 'lose'");
      for (++k; k < f.size(); ++k) p.lose_pmf.push_back(parse_mass(f[k]));
      return p;
    });
    if (auto v = metl::validate_probabilistic_trade(t); !v.empty())
      throw ParseError(source, line, "invalid probabilistic trade '" + t.id + "': " + join(v));
    check_unique(seen, t.id, source, line);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<uniform::UniformTrade> read_uniform_trades(std::istream& in, const std::string& source) {
  std::vector<uniform::UniformTrade> out;
  std::set<std::string> seen;
  for (const auto& [line, f] : records(in)) {
    if (f.size() != 4)
      throw ParseError(source, line,
                       "expected 4 fields <id> <bwin> <blose> <size>, got " + std::to_string(f.size()));
    uniform::UniformTrade t = at_line(source, line, [&] {
      return uniform::UniformTrade{f[0], parse_price(f[1]), parse_price(f[2]), parse_money(f[3])};
    });
    if (auto v = uniform::validate_uniform_trade(t); !v.empty())
      throw ParseError(source, line, "invalid uniform trade '" + t.id + "': " + join(v));
    check_unique(seen, t.id, source, line);
    out.push_back(std::move(t));
  }
  return out;
}

void write_trades(std::ostream& out, std::span<const Trade> trades) {
  out << "# id open win lose size\n";
  for (const auto& t : trades)
    out << t.id << ' ' << t.open << ' ' << t.win << ' ' << t.lose << ' ' << format_money(t.size) << '\n';
}

void write_probabilistic_trades(std::ostream& out, std::span<const metl::ProbabilisticTrade> trades) {
  out << "# id open sign size win <price>:<prob>... lose <price>:<prob>...\n";
  for (const auto& t : trades) {
    out << t.id << ' ' << t.open << ' ' << (t.sign > 0 ? "+1" : "-1") << ' ' << format_money(t.size)
        << " win";
    for (const auto& [p, prob] : t.win_pmf) out << ' ' << p << ':' << format_money(prob);
    out << " lose";
    for (const auto& [p, prob] : t.lose_pmf) out << ' ' << p << ':' << format_money(prob);
    out << '\n';
  }
}

void write_uniform_trades(std::ostream& out, std::span<const uniform::UniformTrade> trades) {
  out << "# id bwin blose size\n";
  for (const auto& t : trades)
    out << t.id << ' ' << t.bwin << ' ' << t.blose << ' ' << format_money(t.size) << '\n';
}

}  // namespace maxloss::io
