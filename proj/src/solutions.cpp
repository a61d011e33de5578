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

#include "m2o/solutions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "m2o/error.hpp"
#include "m2o/linear_program.hpp"

namespace m2o {

namespace {

std::vector<Rational> flat_checked(const GameTable &g, const Allocation &z) {
  if (z.x.size() != g.num_firms() || z.x.size() + z.y.size() != g.num_players())
    throw InvalidArgument("allocation does not match the players of the game");
  return z.flat();
}

void require_imputation(const GameTable &g, const Allocation &z) {
  if (!is_imputation(g, z))
    throw InvalidArgument("not an imputation: " + z.str());
}

// Incremental row-reduced basis of 0/1 incidence vectors.
class Span {
public:
  explicit Span(std::size_t n) : n_(n) {}

  std::size_t rank() const { return rows_.size(); }

  bool contains(Coalition s) const { return reduce(indicator(s)).empty(); }

  void add(Coalition s) {
    auto v = reduce(indicator(s));
    if (v.empty())
      return;
    std::size_t lead = 0;
    while (v[lead].is_zero())
      ++lead;
    const Rational p = v[lead];
    for (auto &c : v)
      c = c / p;
    for (auto &row : rows_) {
      const Rational f = row.second[lead];
      if (!f.is_zero())
        for (std::size_t k = 0; k < n_; ++k)
          row.second[k] -= f * v[k];
    }
    rows_.emplace_back(lead, std::move(v));
  }

private:
  std::vector<Rational> indicator(Coalition s) const {
    std::vector<Rational> v(n_);
    for (std::size_t p = 0; p < n_; ++p)
      if (s >> p & 1)
        v[p] = 1;
    return v;
  }

  // Remainder after elimination; empty when in the span.
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (const auto &[lead, row] : rows_) {
      const Rational f = v[lead];
      if (!f.is_zero())
        for (std::size_t k = 0; k < n_; ++k)
          v[k] -= f * row[k];
    }
    for (const auto &c : v)
      if (!c.is_zero())
        return v;
    return {};
  }

  std::size_t n_;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

std::vector<Rational> indicator_row(std::size_t n, Coalition s) {
  std::vector<Rational> row(n + 1);
  for (std::size_t p = 0; p < n; ++p)
    if (s >> p & 1)
      row[p] = 1;
  return row;
}

Rational surplus_over(const GameTable &g, const std::vector<Rational> &z,
                      std::size_t i, std::size_t j,
                      const std::vector<Coalition> &family) {
  std::optional<Rational> best;
  for (Coalition s : family) {
    if (!(s >> i & 1) || (s >> j & 1))
      continue;
    Rational e = g[s] - g.sum(z, s);
    if (!best || *best < e)
      best = std::move(e);
  }
  if (!best)
    throw Error("no coalition separates the two players");
  return *best;
}

} // namespace

Rational excess(const GameTable &g, Coalition s, const Allocation &z) {
  return g[s] - g.sum(flat_checked(g, z), s);
}

ExcessProfile excess_profile(const GameTable &g, const Allocation &z) {
  const auto flat = flat_checked(g, z);
  std::vector<std::pair<Rational, Coalition>> items;
  for (Coalition s = 1; s < g.grand(); ++s)
    items.emplace_back(g[s] - g.sum(flat, s), s);
  std::stable_sort(items.begin(), items.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  ExcessProfile out;
  for (auto &[e, s] : items) {
    out.coalitions.push_back(s);
    out.excesses.push_back(std::move(e));
  }
  return out;
}

bool is_imputation(const GameTable &g, const Allocation &z) {
  const auto flat = flat_checked(g, z);
  if (g.sum(flat, g.grand()) != g[g.grand()])
    return false;
  for (std::size_t p = 0; p < g.num_players(); ++p)
    if (flat[p] < g[Coalition{1} << p])
      return false;
  return true;
}

Rational max_surplus(const GameTable &g, const Allocation &z, std::size_t i,
                     std::size_t j) {
  require_imputation(g, z);
  if (i == j || i >= g.num_players() || j >= g.num_players())
    throw InvalidArgument("max_surplus needs two distinct players");
  std::vector<Coalition> all;
  for (Coalition s = 1; s <= g.grand(); ++s)
    all.push_back(s);
  return surplus_over(g, z.flat(), i, j, all);
}

bool is_in_kernel(const GameTable &g, const Allocation &z) {
  require_imputation(g, z);
  const std::size_t n = g.num_players();
  const auto flat = z.flat();
  // s[i][j] for all ordered pairs in one sweep over the coalitions
  std::vector<std::vector<std::optional<Rational>>> s(
      n, std::vector<std::optional<Rational>>(n));
  for (Coalition c = 1; c < g.grand(); ++c) {
    const Rational e = g[c] - g.sum(flat, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(c >> i & 1))
        continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!(c >> j & 1) && (!s[i][j] || *s[i][j] < e))
          s[i][j] = e;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (*s[i][j] != *s[j][i])
        return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> kernel_pairs(const Market &m) {
  const auto all = all_optimal_matchings(m);
  const std::size_t nf = m.num_firms(), n = nf + m.num_workers();
  // block of a player in mu: the firm index, or nothing for a lone worker
  auto block = [&](const Matching &mu, std::size_t p) -> std::optional<std::size_t> {
    if (p < nf)
      return p;
    return mu.firm_of(p - nf);
  };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = std::max(p + 1, nf); q < n; ++q) {
      const bool together = std::all_of(all.begin(), all.end(), [&](const Matching &mu) {
        const auto a = block(mu, p);
        return a && a == block(mu, q);
      });
      if (together)
        out.emplace_back(p, q);
    }
  return out;
}

bool kernel_core_test(const Market &m, const GameTable &g, const Allocation &z) {
  if (!is_core_allocation(g, z))
    throw InvalidArgument("not a core allocation: " + z.str());
  const auto cands = essential_candidates(m);
  const auto flat = z.flat();
  for (const auto &[i, j] : kernel_pairs(m))
    if (surplus_over(g, flat, i, j, cands) != surplus_over(g, flat, j, i, cands))
      return false;
  return true;
}

Allocation nucleolus(const Market &m, const GameTable &g) {
  const std::size_t n = g.num_players();
  if (n != m.num_firms() + m.num_workers())
    throw InvalidArgument("game and market have different players");
  const Coalition grand = g.grand();

  std::vector<Coalition> active;
  for (Coalition s : essential_candidates(m))
    if (s != grand && std::find(active.begin(), active.end(), s) == active.end())
      active.push_back(s);

  std::vector<std::pair<Coalition, Rational>> fixed;
  Span span(n);
  span.add(grand);
  std::vector<Rational> z(n);
  if (n == 1)
    z[0] = g[grand];

  // variables z_0..z_{n-1}, t; minimize t
  while (!active.empty()) {
    LinearProgram lp(n + 1);
    std::fill(lp.free.begin(), lp.free.end(), true);
    lp.objective[n] = 1;
    auto row = indicator_row(n, grand);
    lp.add_row(row, LinearProgram::Sense::Equal, g[grand]);
    for (const auto &[s, e] : fixed)
      lp.add_row(indicator_row(n, s), LinearProgram::Sense::Equal, g[s] - e);
    const std::size_t first_active = lp.rows.size();
    for (Coalition s : active) {
      auto r = indicator_row(n, s);
      r[n] = 1;
      lp.add_row(std::move(r), LinearProgram::Sense::GreaterEqual, g[s]);
    }
    const LpResult res = solve(lp);
    if (!res.optimal())
      throw Error("nucleolus: linear program not solved to optimality");
    z.assign(res.x.begin(), res.x.begin() + static_cast<long>(n));

    std::vector<Coalition> rest;
    bool progress = false;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (res.duals[first_active + k].sign() > 0) {
        fixed.emplace_back(active[k], res.value);
        span.add(active[k]);
        progress = true;
      } else {
        rest.push_back(active[k]);
      }
    }
    if (!progress)
      throw Error("nucleolus: no coalition with a positive multiplier");
    active.clear();
    for (Coalition s : rest)
      if (!span.contains(s))
        active.push_back(s);
    if (span.rank() == n)
      break;
  }
  return Allocation::split(z, g.num_firms());
}

Allocation shapley(const GameTable &g) {
  const std::size_t n = g.num_players();
  std::vector<Rational> fact(n + 1, Rational(1));
  for (std::size_t k = 1; k <= n; ++k)
    fact[k] = fact[k - 1] * Rational(static_cast<long>(k));
  std::vector<Rational> weight(n);
  for (std::size_t k = 0; k < n; ++k)
    weight[k] = fact[k] * fact[n - k - 1] / fact[n];
  std::vector<Rational> phi(n);
  for (Coalition s = 0; s <= g.grand(); ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    for (std::size_t i = 0; i < n; ++i) {
      const Coalition bit = Coalition{1} << i;
      if (s & bit)
        continue;
      const Rational gain = g[s | bit] - g[s];
      if (!gain.is_zero())
        phi[i] += weight[size] * gain;
    }
    if (s == g.grand())
      break;
  }
  return Allocation::split(phi, g.num_firms());
}

std::vector<Rational> utopia_vector(const GameTable &g) {
  std::vector<Rational> M(g.num_players());
  for (std::size_t i = 0; i < M.size(); ++i)
    M[i] = g[g.grand()] - g[g.grand() & ~(Coalition{1} << i)];
  return M;
}

std::vector<Rational> minimum_rights(const GameTable &g) {
  const auto M = utopia_vector(g);
  const std::size_t n = g.num_players();
  std::vector<std::optional<Rational>> best(n);
  for (Coalition s = 1; s <= g.grand(); ++s) {
    const Rational total = g.sum(M, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1))
        continue;
      Rational r = g[s] - (total - M[i]);
      if (!best[i] || *best[i] < r)
        best[i] = std::move(r);
    }
    if (s == g.grand())
      break;
  }
  std::vector<Rational> out;
  for (auto &b : best)
    out.push_back(std::move(*b));
  return out;
}

Allocation tau_value(const GameTable &g) {
  const auto M = utopia_vector(g);
  const auto lo = minimum_rights(g);
  Rational sum_M, sum_m;
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (M[i] < lo[i])
      throw InvalidArgument("tau-value: minimum right exceeds utopia payoff of " +
                            g.player(i));
    sum_M += M[i];
    sum_m += lo[i];
  }
  const Rational &vN = g[g.grand()];
  if (vN < sum_m || sum_M < vN)
    throw InvalidArgument("tau-value: v(N) outside [m(N), M(N)]");
  std::vector<Rational> tau = lo;
  if (sum_M != sum_m) {
    const Rational kappa = (vN - sum_m) / (sum_M - sum_m);
    for (std::size_t i = 0; i < tau.size(); ++i)
      tau[i] += kappa * (M[i] - lo[i]);
  }
  return Allocation::split(tau, g.num_firms());
}

Allocation fair_division(const Market &m) {
  auto bm = balance(m);
  const auto mu = optimal_matching(bm.market()).matching;
  const auto low = firm_payoffs(bm, mu, bm.lift_workers(min_competitive_salaries(m)));
  const auto high = firm_payoffs(bm, mu, bm.lift_workers(max_competitive_salaries(m)));
  const Rational half(1, 2);
  Allocation mid;
  for (std::size_t i = 0; i < low.x.size(); ++i)
    mid.x.push_back((low.x[i] + high.x[i]) * half);
  for (std::size_t j = 0; j < low.y.size(); ++j)
    mid.y.push_back((low.y[j] + high.y[j]) * half);
  return mid;
}

std::optional<Matching> dominant_diagonal_matching(const Market &m) {
  if (!m.is_capacity_balanced())
    throw InvalidArgument("dominant diagonal needs a capacity-balanced market");
  auto mu = optimal_matching(m).matching;
  for (std::size_t i = 0; i < m.num_firms(); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < m.num_workers(); ++j)
      row.push_back(m.surplus(i, j));
    std::sort(row.begin(), row.end(), std::greater<>());
    Rational top, held;
    for (int k = 0; k < m.capacity(i); ++k)
      top += row[static_cast<std::size_t>(k)];
    for (auto j : mu.workers_of(i))
      held += m.surplus(i, j);
    if (held != top)
      return std::nullopt;
  }
  for (std::size_t j = 0; j < m.num_workers(); ++j) {
    const auto f = mu.firm_of(j);
    const Rational own = f ? m.surplus(*f, j) : Rational(0);
    for (std::size_t i = 0; i < m.num_firms(); ++i)
      if (own < m.surplus(i, j))
        return std::nullopt;
  }
  return mu;
}

bool has_dominant_diagonal(const Market &m) {
  return dominant_diagonal_matching(m).has_value();
}

std::pair<Allocation, Allocation> side_optimal_allocations(const Market &m) {
  const auto mu = dominant_diagonal_matching(m);
  if (!mu)
    throw InvalidArgument("market has no dominant diagonal");
  Allocation firm_opt{std::vector<Rational>(m.num_firms()),
                      std::vector<Rational>(m.num_workers())};
  Allocation worker_opt = firm_opt;
  for (std::size_t j = 0; j < m.num_workers(); ++j)
    if (auto f = mu->firm_of(j)) {
      firm_opt.x[*f] += m.surplus(*f, j);
      worker_opt.y[j] = m.surplus(*f, j);
    }
  return {firm_opt, worker_opt};
}

bool is_convex_market(const Market &m) {
  for (std::size_t i = 0; i < m.num_firms(); ++i) {
    int positive = 0;
    for (std::size_t j = 0; j < m.num_workers(); ++j)
      positive += m.surplus(i, j).sign() > 0;
    if (positive > m.capacity(i))
      return false;
  }
  for (std::size_t j = 0; j < m.num_workers(); ++j) {
    int positive = 0;
    for (std::size_t i = 0; i < m.num_firms(); ++i)
      positive += m.surplus(i, j).sign() > 0;
    if (positive > 1)
      return false;
  }
  return true;
}

bool is_convex_game(const GameTable &g) {
  const std::size_t n = g.num_players();
  for (std::size_t i = 0; i < n; ++i) {
    const Coalition bi = Coalition{1} << i;
    for (Coalition s = 0; s <= g.grand(); ++s) {
      if (s & bi)
        continue;
      const Rational gain = g[s | bi] - g[s];
      for (std::size_t k = 0; k < n; ++k) {
        const Coalition bk = Coalition{1} << k;
        if ((s & bk) || k == i)
          continue;
        if (g[s | bk | bi] - g[s | bk] < gain)
          return false;
      }
      if (s == g.grand())
        break;
    }
  }
  return true;
}

} // namespace m2o
