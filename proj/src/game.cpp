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

#include "m2o/game.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "m2o/error.hpp"

namespace m2o {

GameTable::GameTable(std::vector<std::string> players,
                     std::vector<Rational> values)
    : players_(std::move(players)), values_(std::move(values)) {
  if (players_.size() > 31)
    throw LimitExceeded("GameTable players", players_.size(), 31);
  if (values_.size() != (std::size_t{1} << players_.size()))
    throw InvalidArgument("game needs one value per coalition");
  if (!values_[0].is_zero())
    throw InvalidArgument("value of the empty coalition must be 0");
}

Rational GameTable::sum(const std::vector<Rational> &payoff, Coalition s) const {
  if (payoff.size() != players_.size())
    throw InvalidArgument("payoff has " + std::to_string(payoff.size()) +
                          " entries, game has " +
                          std::to_string(players_.size()) + " players");
  Rational total;
  for (std::size_t p = 0; p < players_.size(); ++p)
    if (s >> p & 1U)
      total += payoff[p];
  return total;
}

Coalition make_coalition(const Market &m, const std::vector<std::size_t> &firms,
                         const std::vector<std::size_t> &workers) {
  Coalition s = 0;
  for (auto i : firms) {
    if (i >= m.num_firms())
      throw InvalidArgument("firm index out of range");
    s |= Coalition{1} << firm_player(i);
  }
  for (auto j : workers) {
    if (j >= m.num_workers())
      throw InvalidArgument("worker index out of range");
    s |= Coalition{1} << worker_player(m, j);
  }
  return s;
}

std::string coalition_to_string(const GameTable &g, Coalition s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    if (!(s >> p & 1U))
      continue;
    if (!first)
      os << ',';
    first = false;
    os << g.player(p);
  }
  os << '}';
  return os.str();
}

GameTable build_game(const Market &m, std::size_t max_players) {
  const std::size_t nf = m.num_firms(), nw = m.num_workers();
  const std::size_t players = nf + nw;
  if (players > max_players || players > 31)
    throw LimitExceeded("build_game", players, std::min<std::size_t>(max_players, 31));

  // weight[i][U] = sum of a_ij over j in U
  const std::size_t wspace = std::size_t{1} << nw;
  std::vector<std::vector<Rational>> weight(nf, std::vector<Rational>(wspace));
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t u = 1; u < wspace; ++u) {
      const auto low = static_cast<std::size_t>(std::countr_zero(u));
      weight[i][u] = weight[i][u & (u - 1)] + m.surplus(i, low);
    }

  // best[S][T]: S firm mask, T worker mask
  const std::size_t fspace = std::size_t{1} << nf;
  std::vector<Rational> best(fspace * wspace);
  for (std::size_t s = 1; s < fspace; ++s) {
    const auto i = static_cast<std::size_t>(std::countr_zero(s));
    const std::size_t rest = s & (s - 1);
    const int cap = m.capacity(i);
    for (std::size_t t = 0; t < wspace; ++t) {
      Rational v = best[rest * wspace + t];
      // every U subset of T hired by firm i
      for (std::size_t u = t; u; u = (u - 1) & t) {
        if (std::popcount(u) > cap)
          continue;
        Rational cand = weight[i][u] + best[rest * wspace + (t & ~u)];
        if (v < cand)
          v = std::move(cand);
      }
      best[s * wspace + t] = std::move(v);
    }
  }

  std::vector<std::string> names = m.firm_ids();
  names.insert(names.end(), m.worker_ids().begin(), m.worker_ids().end());
  std::vector<Rational> values(std::size_t{1} << players);
  for (std::size_t c = 0; c < values.size(); ++c)
    values[c] = best[(c & (fspace - 1)) * wspace + (c >> nf)];
  GameTable g(std::move(names), std::move(values));
  g.capacities_ = m.capacities();
  return g;
}

Rational dual_value(const GameTable &g, Coalition s) {
  return g.value(g.grand()) - g.value(g.grand() & ~s);
}

namespace {

std::vector<Coalition> candidates(std::size_t nf, std::size_t nw,
                                  const std::vector<int> &caps) {
  std::vector<Coalition> out;
  for (std::size_t p = 0; p < nf + nw; ++p)
    out.push_back(Coalition{1} << p);
  for (std::size_t i = 0; i < nf; ++i) {
    const std::size_t limit = std::min<std::size_t>(caps[i], nw);
    for (std::size_t size = 1; size <= limit; ++size)
      for (std::uint32_t t = 1; t < (std::uint32_t{1} << nw); ++t)
        if (static_cast<std::size_t>(std::popcount(t)) == size)
          out.push_back((Coalition{1} << i) | (t << nf));
  }
  return out;
}

} // namespace

std::vector<Coalition> essential_candidates(const Market &m) {
  if (m.num_firms() + m.num_workers() > 31)
    throw LimitExceeded("essential_candidates", m.num_firms() + m.num_workers(), 31);
  return candidates(m.num_firms(), m.num_workers(), m.capacities());
}

std::vector<Coalition> essential_candidates(const GameTable &g) {
  if (g.num_firms() == 0)
    throw InvalidArgument("game was not built from a market");
  return candidates(g.num_firms(), g.num_workers(), g.capacities());
}

bool is_inessential(const GameTable &g, Coalition s) {
  if (s == 0)
    throw InvalidArgument("is_inessential: empty coalition");
  // each split {T, S\T} once: T ranges over proper submasks holding the
  // lowest member of S
  const Coalition low = s & (~s + 1);
  const Coalition rest = s & ~low;
  for (Coalition u = rest;; u = (u - 1) & rest) {
    const Coalition t = u | low;
    if (t != s && !(g[s] > g[t] + g[s & ~t]))
      return true;
    if (u == 0)
      break;
  }
  return false;
}

void check_order(const GameTable &g, const PlayerOrder &order) {
  std::vector<char> seen(g.num_players(), 0);
  if (order.size() != g.num_players())
    throw InvalidArgument("order must list every player once");
  for (auto p : order) {
    if (p >= g.num_players() || seen[p])
      throw InvalidArgument("order must list every player once");
    seen[p] = 1;
  }
}

std::vector<Rational> marginal_vector(const GameTable &g,
                                      const PlayerOrder &order) {
  check_order(g, order);
  std::vector<Rational> x(g.num_players());
  Coalition before = 0;
  for (auto p : order) {
    const Coalition with = before | (Coalition{1} << p);
    x[p] = g[with] - g[before];
    before = with;
  }
  return x;
}

std::vector<Rational> lemaral_vector(const GameTable &g,
                                     const PlayerOrder &order) {
  check_order(g, order);
  std::vector<Rational> x(g.num_players());
  Coalition before = 0;
  for (auto p : order) {
    const Coalition self = Coalition{1} << p;
    Rational low = dual_value(g, self);
    for (Coalition q = before; q; q = (q - 1) & before) {
      Rational cand = dual_value(g, q | self) - g.sum(x, q);
      if (cand < low)
        low = std::move(cand);
    }
    x[p] = low;
    before |= self;
  }
  return x;
}

} // namespace m2o
