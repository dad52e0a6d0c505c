#include "maxloss/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "maxloss/errors.hpp"
#include "maxloss/generator.hpp"
#include "maxloss/http_server.hpp"
#include "maxloss/oracle.hpp"
#include "maxloss/replay.hpp"
#include "maxloss/report.hpp"
#include "maxloss/trade_io.hpp"

namespace maxloss::cli {
namespace {

struct CliConfig {
  std::string input = "-";
  std::string output;
  std::string format = "text";
  bool decimal = false;
  bool oracle = false;
  std::size_t budget_trades = oracle::OracleBudget{}.max_trades;
  Price budget_radius = 0;  // 0: derive from the instance
  std::uint64_t seed = 1;

  // gen
  std::string kind = "mtl";
  std::size_t count = 8;
  Price price_range = 12;
  int max_size = 5;
  std::size_t support = 8;
  std::uint64_t turns = 200;
  std::string trader = "random-opener";

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_dir;
};

oracle::OracleBudget budget_of(const CliConfig& c) {
  oracle::OracleBudget b;
  b.max_trades = c.budget_trades;
  if (c.budget_radius > 0) b.price_radius = c.budget_radius;
  return b;
}

// Opens the input named by the config; "-" is the caller's stream.
class Input {
 public:
  Input(const std::string& path, std::istream& fallback) : name_(path == "-" ? "<stdin>" : path) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open input '" + path + "'");
      stream_ = &file_;
    }
  }
  std::istream& stream() { return *stream_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

void emit(const CliConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw ValidationError("cannot write output '" + c.output + "'");
  f << text;
}

void write_report(const CliConfig& c, std::ostream& out, const report::SolutionReport& r) {
  std::ostringstream text;
  if (c.format == "json")
    text << report::to_json(r, c.decimal).dump(2) << '\n';
  else
    report::write_text(text, r, c.decimal);
  emit(c, out, text.str());
}

// Every reported movement is re-simulated before it is printed.
void check_realized(std::span<const Trade> trades, const ProfitOverrides* profits,
                    const mtl::MtlSolution& s) {
  const SessionOutcome again = simulate(trades, s.movement, profits);
  if (again.total_profit != s.total_profit)
    throw std::logic_error("reported movement does not reproduce the reported total");
}

int solve_deterministic(const CliConfig& c, std::istream& in, std::ostream& out) {
  Input input(c.input, in);
  const auto trades = io::read_trades(input.stream(), input.name());
  auto sol = mtl::solve_mtl(trades);
  check_realized(trades, nullptr, sol);
  auto r = report::make_report(report::Kind::deterministic, std::move(sol));
  if (c.oracle) r.oracle_total = oracle::oracle_mtl(trades, nullptr, budget_of(c));
  write_report(c, out, r);
  return kExitOk;
}

int solve_probabilistic(const CliConfig& c, std::istream& in, std::ostream& out) {
  Input input(c.input, in);
  const auto trades = io::read_probabilistic_trades(input.stream(), input.name());
  auto sol = metl::solve_metl(trades);
  check_realized(metl::expand_all(trades), nullptr, sol);
  auto r = report::make_report(report::Kind::probabilistic, std::move(sol));
  if (c.oracle) r.oracle_total = oracle::oracle_metl(trades, budget_of(c));
  write_report(c, out, r);
  return kExitOk;
}

int solve_uniform_cmd(const CliConfig& c, std::istream& in, std::ostream& out) {
  Input input(c.input, in);
  const auto trades = io::read_uniform_trades(input.stream(), input.name());
  auto sol = uniform::solve_uniform(trades);
  {
    std::vector<Trade> collapsed;
    ProfitOverrides profits;
    for (auto& ct : uniform::collapse(trades)) {
      profits.emplace(ct.trade.id, ct.profit);
      collapsed.push_back(std::move(ct.trade));
    }
    check_realized(collapsed, &profits, sol);
  }
  auto r = report::make_report(report::Kind::uniform, std::move(sol));
  if (c.oracle) {
    std::vector<metl::ProbabilisticTrade> expanded;
    for (const auto& t : trades) expanded.push_back(uniform::to_probabilistic(t));
    r.oracle_total = oracle::oracle_metl(expanded, budget_of(c));
  }
  write_report(c, out, r);
  return kExitOk;
}

int oracle_cmd(const CliConfig& c, std::istream& in, std::ostream& out) {
  Input input(c.input, in);
  Money total;
  if (c.kind == "mtl") {
    const auto trades = io::read_trades(input.stream(), input.name());
    const Money by_subsets = oracle::oracle_mtl(trades, nullptr, budget_of(c));
    const auto search = oracle::search_movements(trades, nullptr, budget_of(c));
    if (by_subsets != search.best_profit)
      throw std::logic_error("subset and movement oracles disagree");
    total = by_subsets;
  } else if (c.kind == "prob") {
    total = oracle::oracle_metl(io::read_probabilistic_trades(input.stream(), input.name()), budget_of(c));
  } else if (c.kind == "uniform") {
    std::vector<metl::ProbabilisticTrade> expanded;
    for (const auto& t : io::read_uniform_trades(input.stream(), input.name()))
      expanded.push_back(uniform::to_probabilistic(t));
    total = oracle::oracle_metl(expanded, budget_of(c));
  } else {
    throw ValidationError("unknown kind '" + c.kind + "'");
  }
  const std::string rendered = c.decimal ? "~" + format_decimal(total) : format_money(total);
  if (c.format == "json")
    emit(c, out, nlohmann::json{{"kind", c.kind}, {"oracle_total", rendered}}.dump(2) + "\n");
  else
    emit(c, out, "oracle " + rendered + "\n");
  return kExitOk;
}

gen::TraderKind trader_kind(const std::string& name) {
  for (auto k : {gen::TraderKind::random_opener, gen::TraderKind::martingale_doubler,
                 gen::TraderKind::close_at_will_mixer})
    if (gen::to_string(k) == name) return k;
  throw ValidationError("unknown trader '" + name + "'");
}

int gen_cmd(const CliConfig& c, std::ostream& out) {
  gen::Rng rng(c.seed);
  std::ostringstream text;
  if (c.kind == "mtl") {
    io::write_trades(text, gen::random_trades(rng, {c.count, c.price_range, c.max_size}));
  } else if (c.kind == "prob") {
    io::write_probabilistic_trades(
        text, gen::random_probabilistic_trades(rng, {c.count, c.support, c.price_range, c.max_size}));
  } else if (c.kind == "uniform") {
    io::write_uniform_trades(text, gen::random_uniform_trades(rng, {c.count, c.price_range, c.max_size}));
  } else if (c.kind == "game") {
    gen::TraderScript script(trader_kind(c.trader), c.seed);
    game::Game g(c.turns);
    while (g.status() == game::GameStatus::live) {
      const auto actions = script.next(g.position(), g.history().empty() ? nullptr : &g.history().back());
      g.play(actions);
    }
    replay::write_log(text, {c.turns, g.history()});
  } else {
    throw ValidationError("unknown kind '" + c.kind + "'");
  }
  emit(c, out, text.str());
  return kExitOk;
}

int replay_cmd(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
  Input input(c.input, in);
  const auto log = replay::read_log(input.stream(), input.name());
  const auto verdict = replay::verify(log);
  if (!verdict.ok) {
    err << input.name() << ": replay mismatch at " << verdict.message << '\n';
    return kExitInvalid;
  }
  std::ostringstream text;
  text << verdict.message << '\n'
       << "status " << game::to_string(verdict.status) << '\n'
       << "gain " << format_money(verdict.final_gain) << '\n'
       << "total_value " << format_money(verdict.final_total_value) << '\n';
  emit(c, out, text.str());
  return kExitOk;
}

service::HttpServer* g_server = nullptr;

int serve_cmd(const CliConfig& c, std::ostream& out) {
  std::optional<std::filesystem::path> dir;
  if (!c.log_dir.empty()) dir = c.log_dir;
  service::SessionManager sessions(dir);
  const std::size_t restored = sessions.recover();
  service::HttpServer server(sessions);
  int port = c.port;
  if (port == 0) {
    port = server.bind_any_port(c.host);
    if (port < 0) throw ValidationError("cannot bind " + c.host);
  } else if (!server.bind(c.host, port)) {
    throw ValidationError("cannot bind " + c.host + ":" + std::to_string(port));
  }
  out << "listening on http://" << c.host << ':' << port << " (" << restored << " sessions restored)"
      << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  const bool ok = server.listen_after_bind();
  g_server = nullptr;
  return ok ? kExitOk : kExitInvalid;
}

void add_output_options(CLI::App* cmd, CliConfig& c) {
  cmd->add_option("-o,--output", c.output, "Write to this file instead of stdout");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--decimal", c.decimal, "Render money as decimal approximations");
}

void add_budget_options(CLI::App* cmd, CliConfig& c) {
  cmd->add_option("--budget-trades", c.budget_trades, "Oracle limit on the number of trades");
  cmd->add_option("--budget-radius", c.budget_radius, "Oracle limit on |turning point|");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Adversarial price movements against bounded trades", "maxloss"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Maximum-loss movement for deterministic trades");
  auto* solve_prob = app.add_subcommand("solve-prob", "Maximum expected loss for probabilistic trades");
  auto* solve_unif = app.add_subcommand("solve-uniform", "Maximum expected loss for uniform trades");
  for (auto* cmd : {solve, solve_prob, solve_unif}) {
    cmd->add_option("input", c.input, "Trade-set file ('-' for stdin)");
    add_output_options(cmd, c);
    add_budget_options(cmd, c);
    cmd->add_flag("--oracle", c.oracle, "Also report the exhaustive reference optimum");
  }

  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference optimum (small inputs)");
  oracle->add_option("input", c.input, "Trade-set file ('-' for stdin)");
  oracle->add_option("--kind", c.kind, "Input kind")->check(CLI::IsMember({"mtl", "prob", "uniform"}));
  add_output_options(oracle, c);
  add_budget_options(oracle, c);

  auto* gen = app.add_subcommand("gen", "Seeded random instance or game log");
  gen->add_option("--kind", c.kind, "What to generate")->check(CLI::IsMember({"mtl", "prob", "uniform", "game"}));
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--count", c.count, "Number of trades");
  gen->add_option("--price-range", c.price_range, "Largest |closing price| or |bound|")->check(CLI::PositiveNumber);
  gen->add_option("--max-size", c.max_size, "Sizes drawn from 1..max-size")->check(CLI::PositiveNumber);
  gen->add_option("--support", c.support, "Probabilistic: size of the shared support");
  gen->add_option("--turns", c.turns, "Game: maximum turns")->check(CLI::PositiveNumber);
  gen->add_option("--trader", c.trader, "Game: scripted trader")
      ->check(CLI::IsMember({"random-opener", "martingale-doubler", "close-at-will-mixer"}));
  gen->add_option("-o,--output", c.output, "Write to this file instead of stdout");

  auto* replay = app.add_subcommand("replay", "Verify a game replay log");
  replay->add_option("input", c.input, "Replay log ('-' for stdin)");
  replay->add_option("-o,--output", c.output, "Write to this file instead of stdout");

  auto* serve = app.add_subcommand("serve", "Run the game service");
  serve->add_option("--host", c.host, "Listen address");
  serve->add_option("--port", c.port, "Listen port (0 picks one)");
  serve->add_option("--log-dir", c.log_dir, "Persist replay logs here and restore them on start");

  std::vector<const char*> argv{"maxloss"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitInvalid;
  }

  try {
    if (*solve) return solve_deterministic(c, in, out);
    if (*solve_prob) return solve_probabilistic(c, in, out);
    if (*solve_unif) return solve_uniform_cmd(c, in, out);
    if (*oracle) return oracle_cmd(c, in, out);
    if (*gen) return gen_cmd(c, out);
    if (*replay) return replay_cmd(c, in, out, err);
    if (*serve) return serve_cmd(c, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace maxloss::cli
