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

#include "m2o/core.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "m2o/error.hpp"

namespace m2o {

std::vector<Rational> Allocation::flat() const {
  std::vector<Rational> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Allocation Allocation::split(const std::vector<Rational> &flat,
                             std::size_t num_firms) {
  if (flat.size() < num_firms)
    throw InvalidArgument("allocation shorter than the number of firms");
  Allocation a;
  a.x.assign(flat.begin(), flat.begin() + static_cast<long>(num_firms));
  a.y.assign(flat.begin() + static_cast<long>(num_firms), flat.end());
  return a;
}

std::string Allocation::str(int digits) const {
  return "(" + format_rationals(x, ",", digits) + ";" +
         format_rationals(y, ",", digits) + ")";
}

Rational DifferenceConstraint::lhs(const SalaryVector &y) const {
  Rational h = head ? y[head - 1] : Rational(0);
  Rational t = tail ? y[tail - 1] : Rational(0);
  return h - t;
}

bool DifferenceConstraint::holds(const SalaryVector &y) const {
  return lhs(y) >= bound;
}

bool DifferenceConstraint::is_tight(const SalaryVector &y) const {
  return lhs(y) == bound;
}

const Rational &CoreConstraintSystem::upper(std::size_t worker) const {
  return market_.surplus(*mu_.firm_of(worker), worker);
}

std::optional<DifferenceConstraint>
CoreConstraintSystem::violation(const SalaryVector &y) const {
  if (y.size() != num_workers())
    throw InvalidArgument("salary vector has " + std::to_string(y.size()) +
                          " entries, market has " +
                          std::to_string(num_workers()) + " workers");
  for (const auto &c : constraints_)
    if (!c.holds(y))
      return c;
  return std::nullopt;
}

bool CoreConstraintSystem::contains(const SalaryVector &y) const {
  return !violation(y).has_value();
}

Matching complete_matching(const Market &balanced, const Matching &mu) {
  if (!is_optimal(balanced, mu))
    throw InvalidArgument("matching is not optimal for the market");
  Matching out = mu;
  std::vector<int> free(balanced.num_firms());
  for (std::size_t i = 0; i < balanced.num_firms(); ++i)
    free[i] = balanced.capacity(i) - static_cast<int>(mu.workers_of(i).size());
  std::size_t i = 0;
  for (std::size_t j = 0; j < balanced.num_workers(); ++j) {
    if (out.firm_of(j))
      continue;
    while (i < free.size() && free[i] == 0)
      ++i;
    if (i == free.size())
      throw InvalidArgument("market is not capacity-balanced");
    out.assign(j, i);
    --free[i];
  }
  return out;
}

CoreConstraintSystem core_constraints(const BalancedMarket &bm,
                                      const Matching &mu, bool same_firm_pairs) {
  const Market &m = bm.market();
  Matching full = complete_matching(m, mu);
  const std::size_t n = m.num_workers();
  using Kind = DifferenceConstraint::Kind;
  std::vector<DifferenceConstraint> cs;
  for (std::size_t k = 0; k < n; ++k)
    cs.push_back({k + 1, 0, Rational(0), Kind::Lower});
  for (std::size_t j = 0; j < n; ++j)
    cs.push_back({0, j + 1, -m.surplus(*full.firm_of(j), j), Kind::Upper});
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t fj = *full.firm_of(j);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j)
        continue;
      const bool same = *full.firm_of(k) == fj;
      if (same && !same_firm_pairs)
        continue;
      cs.push_back({k + 1, j + 1, m.surplus(fj, k) - m.surplus(fj, j),
                    same ? Kind::SameFirm : Kind::Cross});
    }
  }
  return CoreConstraintSystem(m, std::move(full), std::move(cs));
}

CoreConstraintSystem core_constraints(const BalancedMarket &bm,
                                      bool same_firm_pairs) {
  return core_constraints(bm, optimal_matching(bm.market()).matching,
                          same_firm_pairs);
}

bool is_in_CW(const CoreConstraintSystem &sys, const SalaryVector &y) {
  return sys.contains(y);
}

Allocation firm_payoffs(const BalancedMarket &bm, const Matching &mu,
                        const SalaryVector &y) {
  const Market &m = bm.market();
  if (y.size() != m.num_workers())
    throw InvalidArgument("salary vector has " + std::to_string(y.size()) +
                          " entries, market has " +
                          std::to_string(m.num_workers()) + " workers");
  if (!mu.is_feasible(m))
    throw InvalidArgument("matching does not fit the market");
  Allocation a;
  a.x.assign(bm.num_original_firms(), Rational(0));
  for (std::size_t j = 0; j < m.num_workers(); ++j) {
    auto f = mu.firm_of(j);
    if (f && !bm.is_dummy_firm(*f))
      a.x[*f] += m.surplus(*f, j) - y[j];
  }
  a.y = bm.project_workers(y);
  return a;
}

namespace {

CoreCheck check_over(const GameTable &g, const Allocation &alloc,
                     const std::function<void(const std::function<bool(Coalition)> &)> &each) {
  const auto z = alloc.flat();
  if (z.size() != g.num_players())
    throw InvalidArgument("allocation has " + std::to_string(z.size()) +
                          " entries, game has " +
                          std::to_string(g.num_players()) + " players");
  if (alloc.x.size() != g.num_firms())
    throw InvalidArgument("allocation has " + std::to_string(alloc.x.size()) +
                          " firm payoffs, market has " +
                          std::to_string(g.num_firms()) + " firms");
  CoreCheck check;
  check.efficient = g.sum(z, g.grand()) == g[g.grand()];
  each([&](Coalition s) {
    if (g.sum(z, s) < g[s]) {
      check.blocking = s;
      return false;
    }
    return true;
  });
  return check;
}

} // namespace

CoreCheck check_core_allocation(const GameTable &g, const Allocation &alloc) {
  const auto family = essential_candidates(g);
  return check_over(g, alloc, [&](const std::function<bool(Coalition)> &visit) {
    for (Coalition s : family)
      if (!visit(s))
        return;
  });
}

std::vector<Coalition> blocking_coalitions(const GameTable &g, const Allocation &alloc) {
  // validates the dimensions
  if (!check_core_allocation(g, alloc).blocking)
    return {};
  const auto z = alloc.flat();
  std::vector<Coalition> out;
  for (Coalition s : essential_candidates(g))
    if (g.sum(z, s) < g[s])
      out.push_back(s);
  return out;
}

bool is_core_allocation(const GameTable &g, const Allocation &alloc) {
  return check_core_allocation(g, alloc).in_core();
}

CoreCheck check_core_allocation_full(const GameTable &g,
                                     const Allocation &alloc) {
  return check_over(g, alloc, [&](const std::function<bool(Coalition)> &visit) {
    for (Coalition s = 1; s != 0 && s <= g.grand(); ++s)
      if (!visit(s))
        return;
  });
}

bool is_competitive_equilibrium(const Market &m, const Matching &mu,
                                const SalaryVector &y) {
  if (y.size() != m.num_workers())
    throw InvalidArgument("salary vector has " + std::to_string(y.size()) +
                          " entries, market has " +
                          std::to_string(m.num_workers()) + " workers");
  if (!mu.is_feasible(m))
    return false;
  for (std::size_t j = 0; j < m.num_workers(); ++j) {
    if (y[j].sign() < 0)
      return false;
    if (!mu.firm_of(j) && !y[j].is_zero())
      return false;
  }
  for (std::size_t i = 0; i < m.num_firms(); ++i) {
    std::vector<Rational> net;
    for (std::size_t j = 0; j < m.num_workers(); ++j)
      net.push_back(m.surplus(i, j) - y[j]);
    Rational held;
    for (auto j : mu.workers_of(i))
      held += net[j];
    std::sort(net.begin(), net.end(), std::greater<>());
    Rational demand;
    for (std::size_t k = 0; k < net.size() && k < static_cast<std::size_t>(m.capacity(i)); ++k)
      if (net[k].sign() > 0)
        demand += net[k];
    if (held != demand)
      return false;
  }
  return true;
}

SalaryVector max_competitive_salaries(const Market &m) {
  const Rational total = optimal_value(m);
  std::vector<std::size_t> firms(m.num_firms());
  for (std::size_t i = 0; i < firms.size(); ++i)
    firms[i] = i;
  SalaryVector y;
  for (std::size_t j = 0; j < m.num_workers(); ++j) {
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < m.num_workers(); ++k)
      if (k != j)
        others.push_back(k);
    y.push_back(total - coalition_value(m, firms, others));
  }
  return y;
}

SalaryVector min_competitive_salaries(const Market &m) {
  const Rational total = optimal_value(m);
  SalaryVector y;
  for (std::size_t j = 0; j < m.num_workers(); ++j)
    y.push_back(duplicated_column_value(m, j) - total);
  return y;
}

std::pair<RawMarket, DecreaseReport>
constant_decrease(const RawMarket &raw, std::size_t i0, const Rational &c,
                  std::size_t max_workers) {
  raw.validate();
  if (i0 >= raw.firm_ids.size())
    throw InvalidArgument("firm index out of range");
  if (c.sign() < 0)
    throw InvalidArgument("decrease must be non-negative");
  RawMarket out = raw;
  // h - c below zero gives the same clamped surplus as 0
  for (std::size_t j = 0; j < raw.worker_ids.size(); ++j)
    out.hire_values(i0, j) = max(raw.hire_values(i0, j) - c, 0);

  const Market before = surplus_matrix(raw);
  const Market after = surplus_matrix(out);
  DecreaseReport report;
  const Matching mu = optimal_matching(before).matching;
  report.bounded_by_matched = true;
  for (auto j : mu.workers_of(i0))
    if (c > before.surplus(i0, j))
      report.bounded_by_matched = false;
  report.keeps_optimal_matchings = true;
  for (const auto &nu : all_optimal_matchings(before, max_workers))
    if (!is_optimal(after, nu)) {
      report.keeps_optimal_matchings = false;
      break;
    }
  return {out, report};
}

Rational max_valid_decrease(const Market &m, std::size_t i0) {
  if (i0 >= m.num_firms())
    throw InvalidArgument("firm index out of range");
  const BalancedMarket bm = balance(m);
  const Matching mu = optimal_matching(bm.market()).matching;
  const SalaryVector low = min_competitive_salaries(m);
  std::optional<Rational> best;
  for (auto j : mu.workers_of(i0)) {
    if (bm.is_dummy_worker(j))
      continue;
    Rational slack = m.surplus(i0, j) - low[j];
    if (!best || slack < *best)
      best = std::move(slack);
  }
  if (!best)
    throw InvalidArgument("firm " + m.firm_id(i0) +
                          " has no worker in the optimal matching");
  return *best;
}

} // namespace m2o
