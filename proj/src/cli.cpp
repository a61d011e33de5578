// Copyright 2026 The m2o Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "m2o/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "m2o/core.hpp"
#include "m2o/error.hpp"
#include "m2o/game.hpp"
#include "m2o/kaneko.hpp"
#include "m2o/market_io.hpp"
#include "m2o/matching.hpp"
#include "m2o/maxmin.hpp"
#include "m2o/solutions.hpp"
#include "m2o/tight_digraph.hpp"

namespace m2o::cli {

namespace {

// Command-line misuse detected after CLI11 has accepted the arguments.
class UsageError : public Error {
public:
  using Error::Error;
};

struct Settings {
  std::string market_path;
  int digits = -1;
  unsigned jobs = 1;
};

class Session {
public:
  Session(const Settings &s, std::ostream &out) : s_(s), out_(out) {}

  std::string num(const Rational &q) const { return s_.digits < 0 ? q.str() : q.decimal(s_.digits); }
  std::string vec(const std::vector<Rational> &v) const {
    return "(" + format_rationals(v, ",", s_.digits) + ")";
  }
  std::string alloc(const Allocation &a) const { return a.str(s_.digits); }
  std::string yes(bool b) const { return b ? "yes" : "no"; }

  const MarketFile &file() {
    if (!file_) {
      if (s_.market_path.empty())
        throw UsageError("--market is required for this command");
      file_ = read_market_file(s_.market_path);
    }
    return *file_;
  }

  const Market &market() {
    const auto &f = file();
    if (!f.market)
      throw InvalidArgument("this command needs a job-market file; use the kaneko "
                            "commands for a buyer-seller market");
    return *f.market;
  }

  const BuyerMarket &buyers() {
    const auto &f = file();
    if (!f.buyers)
      throw InvalidArgument("kaneko commands need a buyer-seller market file");
    return *f.buyers;
  }

  const GameTable &game() {
    if (!game_)
      game_ = build_game(market());
    return *game_;
  }

  std::ostream &out() { return out_; }
  const Settings &settings() const { return s_; }

  // "x1,..;y1,.." with optional parentheses, or a worker vector alone.
  static std::string strip_parens(std::string text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos)
      return "";
    text = text.substr(first, last - first + 1);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
      text = text.substr(1, text.size() - 2);
    return text;
  }

  static std::vector<Rational> parse_list(const std::string &text) {
    if (text.find_first_not_of(" \t") == std::string::npos)
      return {};
    return parse_rational_list(text);
  }

  static std::vector<Rational> parse_vector(const std::string &text) {
    const std::string body = strip_parens(text);
    if (body.find(';') != std::string::npos)
      throw UsageError("expected a payoff vector without ';', got \"" + text + "\"");
    return parse_list(body);
  }

  static Allocation parse_allocation(const std::string &text) {
    const std::string body = strip_parens(text);
    const auto semi = body.find(';');
    if (semi == std::string::npos || body.find(';', semi + 1) != std::string::npos)
      throw UsageError("expected an allocation \"x1,...;y1,...\", got \"" + text + "\"");
    Allocation a;
    a.x = parse_list(body.substr(0, semi));
    a.y = parse_list(body.substr(semi + 1));
    return a;
  }

private:
  const Settings &s_;
  std::ostream &out_;
  std::optional<MarketFile> file_;
  std::optional<GameTable> game_;
};

// Columns padded to their widest cell, two spaces apart.
void print_table(std::ostream &os, const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width;
  for (const auto &r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c)
        width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  for (const auto &r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size())
        line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << line << "\n";
  }
}

std::string node_name(const Market &m, std::size_t node) {
  return node == 0 ? "0" : "y(" + m.worker_id(node - 1) + ")";
}

std::string constraint_text(Session &s, const Market &m, const DifferenceConstraint &c) {
  if (c.tail == 0)
    return node_name(m, c.head) + " >= " + s.num(c.bound);
  if (c.head == 0)
    return node_name(m, c.tail) + " <= " + s.num(-c.bound);
  return node_name(m, c.head) + " - " + node_name(m, c.tail) + " >= " + s.num(c.bound);
}

void print_blocking(Session &s, const Allocation &a) {
  const GameTable &g = s.game();
  for (Coalition c : blocking_coalitions(g, a))
    s.out() << "blocking coalition: " << coalition_to_string(g, c) << " (payoff "
            << s.num(g.sum(a.flat(), c)) << " < value " << s.num(g[c]) << ")\n";
}

void print_core_check(Session &s, const Allocation &a) {
  const CoreCheck c = check_core_allocation(s.game(), a);
  s.out() << "efficient: " << s.yes(c.efficient) << "\n";
  s.out() << "in core: " << s.yes(c.in_core()) << "\n";
  print_blocking(s, a);
}

void print_digraph(Session &s, const Market &m, const TightDigraph &d, bool dot) {
  auto &os = s.out();
  if (dot) {
    os << to_dot(d);
    return;
  }
  os << "nodes: 0";
  for (std::size_t v = 1; v < d.num_nodes(); ++v)
    os << ", " << v << "=" << m.worker_id(v - 1);
  os << "\n";
  os << "arcs:";
  for (const auto &a : d.arcs())
    os << " " << a.tail << "->" << a.head;
  os << "\n";
  os << "minimum: " << s.yes(is_minimum(d)) << "\n";
  os << "maximum: " << s.yes(is_maximum(d)) << "\n";
  os << "extreme: " << s.yes(is_extreme(d)) << "\n";
}

std::vector<std::string> order_strings(const std::vector<ExtendedOrder> &orders) {
  std::vector<std::string> out;
  for (const auto &o : orders)
    out.push_back(o.str());
  return out;
}

std::string joined(const std::vector<std::string> &parts, const std::string &sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k)
    out += (k ? sep : "") + parts[k];
  return out;
}

nlohmann::ordered_json exact_json(const std::vector<Rational> &v) {
  auto out = nlohmann::ordered_json::array();
  for (const auto &q : v)
    out.push_back(q.str());
  return out;
}

void cmd_match(Session &s) {
  const Market &m = s.market();
  const auto r = optimal_matching(m);
  s.out() << "matching: " << to_string(r.matching, m) << "\n";
  s.out() << "value: " << s.num(r.value) << "\n";
}

void cmd_core_check(Session &s, const std::string &text) {
  const Market &m = s.market();
  if (Session::strip_parens(text).find(';') != std::string::npos) {
    const Allocation a = Session::parse_allocation(text);
    s.out() << "allocation: " << s.alloc(a) << "\n";
    print_core_check(s, a);
    return;
  }
  // salary vector: checked against the worker-space constraint system
  const SalaryVector y = Session::parse_vector(text);
  const BalancedMarket bal = balance(m);
  const auto sys = core_constraints(bal);
  const SalaryVector lifted = bal.lift_workers(y);
  const auto bad = sys.violation(lifted);
  s.out() << "salaries: " << s.vec(y) << "\n";
  s.out() << "allocation: " << s.alloc(firm_payoffs(bal, sys.matching(), lifted)) << "\n";
  s.out() << "in core: " << s.yes(!bad) << "\n";
  if (bad)
    s.out() << "violated: " << constraint_text(s, bal.market(), *bad) << "\n";
}

void cmd_salaries(Session &s, bool low) {
  const Market &m = s.market();
  const SalaryVector y = low ? min_competitive_salaries(m) : max_competitive_salaries(m);
  const BalancedMarket bal = balance(m);
  const Matching mu = optimal_matching(bal.market()).matching;
  s.out() << (low ? "minimum" : "maximum") << " salaries: " << s.vec(y) << "\n";
  s.out() << "allocation: " << s.alloc(firm_payoffs(bal, mu, bal.lift_workers(y))) << "\n";
}

enum class ExtremesView { Table, Json, Witnesses };

void cmd_extremes(Session &s, ExtremesView view) {
  const BalancedMarket bal = balance(s.market());
  EnumerationOptions opt;
  opt.jobs = s.settings().jobs;
  opt.keep_table = view == ExtremesView::Witnesses;
  const ExtremeSet set = enumerate_extremes(bal, opt);
  auto &os = s.out();
  if (view == ExtremesView::Json) {
    nlohmann::ordered_json j;
    j["orders"] = set.total_orders;
    j["in_core_orders"] = set.in_core_orders;
    auto points = nlohmann::ordered_json::array();
    for (const auto &p : set.points)
      points.push_back({{"salaries", exact_json(p.allocation.y)},
                        {"firm_payoffs", exact_json(p.allocation.x)},
                        {"witnesses", order_strings(p.witnesses)}});
    j["extreme_points"] = std::move(points);
    os << j.dump(2) << "\n";
    return;
  }
  if (view == ExtremesView::Witnesses) {
    std::vector<std::vector<std::string>> rows{{"order", "max-min vector", "in core"}};
    for (const auto &r : set.table)
      rows.push_back({r.order.str(), s.vec(bal.project_workers(r.y)), s.yes(r.in_core)});
    print_table(os, rows);
    os << "orders: " << set.total_orders << ", in core: " << set.in_core_orders
       << ", extreme points: " << set.points.size() << "\n";
    return;
  }
  std::vector<std::vector<std::string>> rows{{"#", "salaries", "firm payoffs", "orders"}};
  for (std::size_t k = 0; k < set.points.size(); ++k) {
    const auto &p = set.points[k];
    rows.push_back({std::to_string(k + 1), s.vec(p.allocation.y), s.vec(p.allocation.x),
                    std::to_string(p.witnesses.size())});
  }
  print_table(os, rows);
  os << "extreme points: " << set.points.size() << ", orders: " << set.total_orders
     << ", in core: " << set.in_core_orders << "\n";
}

void cmd_digraph(Session &s, const std::string &text, bool dot) {
  const BalancedMarket bal = balance(s.market());
  const Matching mu = optimal_matching(bal.market()).matching;
  const SalaryVector y = bal.lift_workers(Session::parse_vector(text));
  print_digraph(s, bal.market(), build_tight_digraph(bal, mu, y), dot);
}

void print_solution(Session &s, const std::string &name, const Allocation &a) {
  s.out() << name << ": " << s.alloc(a) << "\n";
  s.out() << "in core: " << s.yes(is_core_allocation(s.game(), a)) << "\n";
  print_blocking(s, a);
}

void cmd_tau(Session &s) {
  const GameTable &g = s.game();
  s.out() << "utopia: " << s.vec(utopia_vector(g)) << "\n";
  s.out() << "minimum rights: " << s.vec(minimum_rights(g)) << "\n";
  print_solution(s, "tau-value", tau_value(g));
}

void cmd_kernel_check(Session &s, const std::string &text) {
  const GameTable &g = s.game();
  const Allocation a = Session::parse_allocation(text);
  auto &os = s.out();
  os << "allocation: " << s.alloc(a) << "\n";
  const bool imputation = is_imputation(g, a);
  os << "imputation: " << s.yes(imputation) << "\n";
  if (!imputation) {
    os << "in kernel: no\n";
    return;
  }
  const bool in = is_in_kernel(g, a);
  os << "in kernel: " << s.yes(in) << "\n";
  if (in)
    return;
  const std::size_t n = g.num_players();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational sij = max_surplus(g, a, i, j);
      const Rational sji = max_surplus(g, a, j, i);
      if (sij != sji) {
        os << "unbalanced pair: s(" << g.player(i) << "," << g.player(j)
           << ") = " << s.num(sij) << ", s(" << g.player(j) << "," << g.player(i)
           << ") = " << s.num(sji) << "\n";
        return;
      }
    }
}

void cmd_dominant_diagonal(Session &s) {
  const Market &m = s.market();
  const auto mu = dominant_diagonal_matching(m);
  s.out() << "dominant diagonal: " << s.yes(mu.has_value()) << "\n";
  if (!mu)
    return;
  const auto [firms, workers] = side_optimal_allocations(m);
  s.out() << "matching: " << to_string(*mu, m) << "\n";
  s.out() << "firm-optimal: " << s.alloc(firms) << "\n";
  s.out() << "worker-optimal: " << s.alloc(workers) << "\n";
}

void cmd_convex(Session &s) {
  s.out() << "convex market: " << s.yes(is_convex_market(s.market())) << "\n";
  s.out() << "convex game: " << s.yes(is_convex_game(s.game())) << "\n";
}

std::string price_text(Session &s, const std::vector<std::optional<Rational>> &p) {
  std::vector<std::string> parts;
  for (const auto &q : p)
    parts.push_back(q ? s.num(*q) : "-");
  return "(" + joined(parts, ",") + ")";
}

void cmd_kaneko_extremes(Session &s) {
  const BuyerMarket &bm = s.buyers();
  const CeVertexSet set = ce_vertices(bm, 6, s.settings().jobs);
  std::vector<std::vector<std::string>> rows{{"#", "buyers", "sellers", "prices", "orders"}};
  for (std::size_t k = 0; k < set.points.size(); ++k) {
    const auto &p = set.points[k];
    rows.push_back({std::to_string(k + 1), s.vec(p.payoff.buyers), s.vec(p.payoff.sellers),
                    price_text(s, p.prices), std::to_string(p.witnesses.size())});
  }
  print_table(s.out(), rows);
  s.out() << "CE vertices: " << set.points.size() << "\n";
  s.out() << "pairwise condition for core = CE: " << s.yes(ce_equals_core(bm)) << "\n";
  if (set.discrepancy)
    s.out() << "warning: the max-min enumeration found "
            << set.maxmin_points.size() << " points; the vertex search is used\n";
}

void cmd_kaneko_digraph(Session &s, const std::string &text, bool dot) {
  const BuyerMarket &bm = s.buyers();
  const auto x = Session::parse_vector(text);
  print_digraph(s, balance(bm).market(), extended_tight_digraph(bm, x), dot);
}

void cmd_kaneko_ce_check(Session &s, const std::string &text) {
  const BuyerMarket &bm = s.buyers();
  const auto x = Session::parse_vector(text);
  const auto sys = ce_constraints(bm);
  auto &os = s.out();
  os << "payoff: " << buyer_seller_payoff(bm, sys, x).str(s.settings().digits) << "\n";
  const bool core = in_buyer_core(bm, x);
  const bool ce = is_ce_payoff(bm, x);
  os << "in core: " << s.yes(core) << "\n";
  os << "competitive equilibrium: " << s.yes(ce) << "\n";
  if (ce)
    os << "prices: " << price_text(s, ce_prices(bm, sys, x)) << "\n";
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact solver for many-to-one assignment markets", "m2o"};
  app.fallthrough();
  app.require_subcommand(1);
  Settings settings;
  app.add_option("-m,--market", settings.market_path, "Market file (JSON)");
  app.add_option("--decimal", settings.digits, "Print numbers as decimals with this many digits")
      ->check(CLI::Range(0, 60));
  app.add_option("--jobs", settings.jobs, "Worker threads for enumerations")
      ->check(CLI::Range(1u, 256u));

  std::function<void(Session &)> action;

  app.add_subcommand("match", "Optimal matching and its value")->callback([&] {
    action = cmd_match;
  });

  std::string text;
  auto *core = app.add_subcommand("core", "Core membership");
  core->require_subcommand(1);
  auto *core_check = core->add_subcommand("check", "Check an allocation x;y or salaries y");
  core_check->add_option("allocation", text)->required();
  core_check->callback([&] { action = [&](Session &s) { cmd_core_check(s, text); }; });

  auto *salaries = app.add_subcommand("salaries", "Minimum or maximum competitive salaries");
  auto *low = salaries->add_flag("--min", "Minimum salaries");
  auto *high = salaries->add_flag("--max", "Maximum salaries");
  low->excludes(high);
  salaries->callback([&] {
    if (!*low && !*high)
      throw CLI::RequiredError("--min or --max");
    action = [&](Session &s) { cmd_salaries(s, low->count() > 0); };
  });

  auto *extremes = app.add_subcommand("extremes", "Extreme core allocations by max-min orders");
  auto *as_table = extremes->add_flag("--table", "Table of extreme points (default)");
  auto *as_json = extremes->add_flag("--json", "JSON output");
  auto *as_orders = extremes->add_flag("--witnesses", "Every extended order with its vector");
  as_table->excludes(as_json)->excludes(as_orders);
  as_json->excludes(as_orders);
  extremes->callback([&] {
    const auto view = *as_json     ? ExtremesView::Json
                      : *as_orders ? ExtremesView::Witnesses
                                   : ExtremesView::Table;
    action = [view](Session &s) { cmd_extremes(s, view); };
  });

  bool dot = false;
  auto *digraph = app.add_subcommand("digraph", "Tight digraph at a salary vector");
  digraph->add_option("salaries", text)->required();
  digraph->add_flag("--dot", dot, "Graphviz output");
  digraph->callback([&] { action = [&](Session &s) { cmd_digraph(s, text, dot); }; });

  app.add_subcommand("nucleolus", "Nucleolus")->callback([&] {
    action = [](Session &s) { print_solution(s, "nucleolus", nucleolus(s.market(), s.game())); };
  });
  app.add_subcommand("tau", "Tau-value")->callback([&] { action = cmd_tau; });
  app.add_subcommand("shapley", "Shapley value")->callback([&] {
    action = [](Session &s) { print_solution(s, "shapley", shapley(s.game())); };
  });
  app.add_subcommand("fair-division", "Midpoint of the side-optimal core allocations")
      ->callback([&] {
        action = [](Session &s) { print_solution(s, "fair division", fair_division(s.market())); };
      });

  auto *kernel = app.add_subcommand("kernel", "Kernel membership");
  kernel->require_subcommand(1);
  auto *kernel_check = kernel->add_subcommand("check", "Check an allocation x;y");
  kernel_check->add_option("allocation", text)->required();
  kernel_check->callback([&] { action = [&](Session &s) { cmd_kernel_check(s, text); }; });

  app.add_subcommand("dominant-diagonal", "Dominant diagonal and side-optimal allocations")
      ->callback([&] { action = cmd_dominant_diagonal; });
  app.add_subcommand("convex", "Convexity of the market and of its game")->callback([&] {
    action = cmd_convex;
  });

  auto *kaneko = app.add_subcommand("kaneko", "Buyer-seller market commands");
  kaneko->require_subcommand(1);
  kaneko->add_subcommand("extremes", "Competitive equilibrium vertices")->callback([&] {
    action = cmd_kaneko_extremes;
  });
  auto *kdigraph = kaneko->add_subcommand("digraph", "Extended tight digraph at buyer payoffs");
  kdigraph->add_option("payoffs", text)->required();
  kdigraph->add_flag("--dot", dot, "Graphviz output");
  kdigraph->callback([&] { action = [&](Session &s) { cmd_kaneko_digraph(s, text, dot); }; });
  auto *ce_check = kaneko->add_subcommand("ce-check", "Core and equilibrium test of buyer payoffs");
  ce_check->add_option("payoffs", text)->required();
  ce_check->callback([&] { action = [&](Session &s) { cmd_kaneko_ce_check(s, text); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  Session session(settings, out);
  try {
    action(session);
  } catch (const UsageError &e) {
    err << "m2o: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const MarketFileError &e) {
    err << "m2o: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const ParseError &e) {
    // payoff text given on the command line
    err << "m2o: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error &e) {
    err << "m2o: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

} // namespace m2o::cli
