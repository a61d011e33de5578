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

#include "m2o/maxmin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "m2o/error.hpp"

namespace m2o {

std::string ExtendedOrder::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < workers.size(); ++k) {
    if (k)
      s += ',';
    s += std::to_string(workers[k] + 1);
    s += is_max[k] ? '^' : '_';
  }
  return s + ")";
}

ExtendedOrder ExtendedOrder::parse(std::string_view text) {
  auto fail = [&] {
    return ParseError("not an extended order: \"" + std::string(text) + "\"");
  };
  std::string_view s = text;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw fail();
  s = s.substr(1, s.size() - 2);
  ExtendedOrder order;
  while (!s.empty()) {
    auto comma = s.find(',');
    auto item = s.substr(0, comma);
    if (item.size() < 2)
      throw fail();
    const char flag = item.back();
    if (flag != '_' && flag != '^')
      throw fail();
    std::size_t number = 0;
    for (char c : item.substr(0, item.size() - 1)) {
      if (c < '0' || c > '9')
        throw fail();
      number = number * 10 + static_cast<std::size_t>(c - '0');
    }
    if (number == 0)
      throw fail();
    order.workers.push_back(number - 1);
    order.is_max.push_back(flag == '^');
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
    if (s.empty())
      throw fail();
  }
  std::vector<std::size_t> sorted = order.workers;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k)
      throw fail();
  return order;
}

namespace {

// Salary of the worker at position r given the salaries of positions < r.
Rational next_salary(const CoreConstraintSystem &sys,
                     const std::vector<std::size_t> &perm, std::size_t r,
                     bool is_max, const SalaryVector &y, bool all) {
  const Market &m = sys.market();
  const Matching &mu = sys.matching();
  const std::size_t jr = perm[r];
  const std::size_t fr = *mu.firm_of(jr);
  if (!is_max) {
    Rational low(0);
    for (std::size_t p = 0; p < r; ++p) {
      const std::size_t j = perm[p];
      const std::size_t fj = *mu.firm_of(j);
      if (!all && fj == fr)
        continue;
      Rational cand = y[j] - m.surplus(fj, j) + m.surplus(fj, jr);
      if (low < cand)
        low = std::move(cand);
    }
    return low;
  }
  Rational high = m.surplus(fr, jr);
  for (std::size_t p = 0; p < r; ++p) {
    const std::size_t j = perm[p];
    if (!all && *mu.firm_of(j) == fr)
      continue;
    Rational cand = y[j] - m.surplus(fr, j) + m.surplus(fr, jr);
    if (cand < high)
      high = std::move(cand);
  }
  return high;
}

struct Partial {
  std::vector<OrderRecord> table;
  std::vector<ExtremePoint> points;
  std::map<SalaryVector, std::size_t> index;
  std::size_t total = 0;
  std::size_t in_core = 0;
};

void record(Partial &part, const CoreConstraintSystem &sys,
            const ExtendedOrder &order, const SalaryVector &y,
            const EnumerationOptions &opt) {
  ++part.total;
  const bool inside = sys.contains(y);
  if (opt.keep_table)
    part.table.push_back({order, y, inside});
  if (!inside)
    return;
  ++part.in_core;
  auto [it, fresh] = part.index.emplace(y, part.points.size());
  if (fresh)
    part.points.push_back({y, {}, {}});
  if (opt.keep_witnesses)
    part.points[it->second].witnesses.push_back(order);
}

void walk_flags(Partial &part, const CoreConstraintSystem &sys,
                ExtendedOrder &order, std::size_t r, SalaryVector &y,
                const EnumerationOptions &opt) {
  if (r == order.workers.size()) {
    record(part, sys, order, y, opt);
    return;
  }
  for (bool flag : {false, true}) {
    order.is_max[r] = flag;
    y[order.workers[r]] =
        next_salary(sys, order.workers, r, flag, y, opt.same_firm_pairs);
    walk_flags(part, sys, order, r + 1, y, opt);
  }
}

} // namespace

SalaryVector maxmin_vector(const CoreConstraintSystem &sys,
                           const ExtendedOrder &order, bool all_predecessors) {
  const std::size_t n = sys.num_workers();
  if (order.workers.size() != n || order.is_max.size() != n)
    throw InvalidArgument("extended order must list every worker once");
  std::vector<char> seen(n, 0);
  for (auto j : order.workers) {
    if (j >= n || seen[j])
      throw InvalidArgument("extended order must list every worker once");
    seen[j] = 1;
  }
  SalaryVector y(n);
  for (std::size_t r = 0; r < n; ++r)
    y[order.workers[r]] = next_salary(sys, order.workers, r, order.is_max[r], y,
                                      all_predecessors);
  return y;
}

SalaryVector maxmin_vector(const BalancedMarket &bm, const Matching &mu,
                           const ExtendedOrder &order) {
  return maxmin_vector(core_constraints(bm, mu), order);
}

ExtremeSet enumerate_extremes(const BalancedMarket &bm, const Matching &mu,
                              const EnumerationOptions &opt) {
  const std::size_t n = bm.market().num_workers();
  if (n > opt.max_workers)
    throw LimitExceeded("enumerate_extremes", n, opt.max_workers);
  const CoreConstraintSystem sys = core_constraints(bm, mu, opt.same_firm_pairs);

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do
    perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const std::size_t jobs =
      std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(perms.size(), 1));
  std::vector<Partial> parts(jobs);
  auto work = [&](std::size_t part) {
    const std::size_t lo = perms.size() * part / jobs;
    const std::size_t hi = perms.size() * (part + 1) / jobs;
    for (std::size_t p = lo; p < hi; ++p) {
      ExtendedOrder order{perms[p], std::vector<bool>(n, false)};
      SalaryVector y(n);
      walk_flags(parts[part], sys, order, 0, y, opt);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t)
      threads.emplace_back(work, t);
    for (auto &t : threads)
      t.join();
  }

  // merge chunks in enumeration order
  ExtremeSet result;
  std::map<SalaryVector, std::size_t> index;
  for (auto &part : parts) {
    result.total_orders += part.total;
    result.in_core_orders += part.in_core;
    for (auto &rec : part.table)
      result.table.push_back(std::move(rec));
    for (auto &pt : part.points) {
      auto [it, fresh] = index.emplace(pt.y, result.points.size());
      if (fresh) {
        result.points.push_back(std::move(pt));
      } else {
        auto &w = result.points[it->second].witnesses;
        w.insert(w.end(), pt.witnesses.begin(), pt.witnesses.end());
      }
    }
  }
  for (auto &pt : result.points)
    pt.allocation = firm_payoffs(bm, sys.matching(), pt.y);
  return result;
}

ExtremeSet enumerate_extremes(const BalancedMarket &bm,
                              const EnumerationOptions &opt) {
  return enumerate_extremes(bm, optimal_matching(bm.market()).matching, opt);
}

namespace {

struct Row {
  std::vector<Rational> coef;
  Rational rhs;
  std::size_t pivot = 0;
};

// Basis rows live in per-depth buffers that are reused across the search,
// so GMP storage is recycled instead of reallocated at every branch.
struct VertexSearch {
  const std::vector<Row> &rows;
  const CoreConstraintSystem &sys;
  std::set<SalaryVector> &found;
  std::size_t n;
  std::vector<std::vector<Row>> level;
  std::vector<Row> scratch;
  SalaryVector y;

  VertexSearch(const std::vector<Row> &r, const CoreConstraintSystem &s,
               std::set<SalaryVector> &f)
      : rows(r), sys(s), found(f), n(s.num_workers()),
        level(n + 1, std::vector<Row>(n, Row{std::vector<Rational>(n), Rational(0), 0})),
        scratch(n, Row{std::vector<Rational>(n), Rational(0), 0}), y(n) {}

  // level[depth + 1] = level[depth] extended by `row`, kept in reduced form.
  void extend(std::size_t depth, Row &row) {
    const std::vector<Row> &basis = level[depth];
    std::vector<Row> &next = level[depth + 1];
    for (std::size_t k = 0; k < depth; ++k)
      next[k] = basis[k];
    Row &added = next[depth];
    added = row;
    const Rational p = added.coef[added.pivot];
    for (auto &c : added.coef)
      c /= p;
    added.rhs /= p;
    for (std::size_t k = 0; k < depth; ++k) {
      Row &b = next[k];
      if (b.coef[added.pivot].is_zero())
        continue;
      const Rational f = b.coef[added.pivot];
      for (std::size_t c = 0; c < n; ++c)
        if (!added.coef[c].is_zero())
          b.coef[c] -= f * added.coef[c];
      b.rhs -= f * added.rhs;
    }
  }

  bool reduce(Row &row, std::size_t depth) const {
    for (std::size_t k = 0; k < depth; ++k) {
      const Row &b = level[depth][k];
      if (row.coef[b.pivot].is_zero())
        continue;
      const Rational f = row.coef[b.pivot];
      for (std::size_t c = 0; c < n; ++c)
        if (!b.coef[c].is_zero())
          row.coef[c] -= f * b.coef[c];
      row.rhs -= f * b.rhs;
    }
    for (std::size_t c = 0; c < n; ++c)
      if (!row.coef[c].is_zero()) {
        row.pivot = c;
        return true;
      }
    return false;
  }

  void run(std::size_t start, std::size_t depth) {
    if (depth == n) {
      for (const auto &b : level[n])
        y[b.pivot] = b.rhs;
      if (sys.contains(y))
        found.insert(y);
      return;
    }
    const std::size_t need = n - depth;
    for (std::size_t r = start; r + need <= rows.size(); ++r) {
      Row &row = scratch[depth];
      row = rows[r];
      if (!reduce(row, depth))
        continue;
      extend(depth, row);
      run(r + 1, depth + 1);
    }
  }
};

} // namespace

std::vector<SalaryVector> brute_force_vertices(const CoreConstraintSystem &sys,
                                               std::size_t max_workers) {
  const std::size_t n = sys.num_workers();
  if (n > max_workers)
    throw LimitExceeded("brute_force_vertices", n, max_workers);
  if (n == 0)
    return {SalaryVector{}};
  std::set<std::pair<std::vector<Rational>, Rational>> unique;
  std::vector<Row> rows;
  for (const auto &c : sys.constraints()) {
    Row row{std::vector<Rational>(n), c.bound, 0};
    if (c.head)
      row.coef[c.head - 1] += Rational(1);
    if (c.tail)
      row.coef[c.tail - 1] -= Rational(1);
    if (unique.emplace(row.coef, row.rhs).second)
      rows.push_back(std::move(row));
  }
  std::set<SalaryVector> found;
  VertexSearch(rows, sys, found).run(0, 0);
  return {found.begin(), found.end()};
}

std::vector<SalaryVector> brute_force_vertices(const BalancedMarket &bm,
                                               std::size_t max_workers) {
  if (bm.market().num_workers() > max_workers)
    throw LimitExceeded("brute_force_vertices", bm.market().num_workers(),
                        max_workers);
  return brute_force_vertices(core_constraints(bm), max_workers);
}

std::vector<ExtendedOrder> witnesses_for(const BalancedMarket &bm,
                                         const SalaryVector &y,
                                         std::size_t max_workers) {
  const Matching mu = optimal_matching(bm.market()).matching;
  const CoreConstraintSystem sys = core_constraints(bm, mu);
  if (y.size() != sys.num_workers())
    throw InvalidArgument("salary vector has " + std::to_string(y.size()) +
                          " entries, market has " +
                          std::to_string(sys.num_workers()) + " workers");
  EnumerationOptions opt;
  opt.max_workers = max_workers;
  const ExtremeSet set = enumerate_extremes(bm, mu, opt);
  for (const auto &pt : set.points)
    if (pt.y == y)
      return pt.witnesses;
  return {};
}

} // namespace m2o
