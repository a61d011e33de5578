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

#include "m2o/matching.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "flow.hpp"
#include "m2o/error.hpp"

namespace m2o {

namespace {

// Optimal value of m restricted to the active workers with the given
// residual firm capacities.
Rational restricted_value(const Market &m, const std::vector<int> &caps,
                          const std::vector<char> &active) {
  const std::size_t nf = m.num_firms(), nw = m.num_workers();
  const std::size_t source = 0, sink = 1 + nf + nw;
  detail::MinCostFlow flow(nf + nw + 2);
  int total = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    if (caps[i] <= 0)
      continue;
    flow.add_edge(source, 1 + i, caps[i], Rational(0));
    total += caps[i];
    for (std::size_t j = 0; j < nw; ++j)
      if (active[j] && m.surplus(i, j).sign() > 0)
        flow.add_edge(1 + i, 1 + nf + j, 1, -m.surplus(i, j));
  }
  for (std::size_t j = 0; j < nw; ++j)
    if (active[j])
      flow.add_edge(1 + nf + j, sink, 1, Rational(0));
  return -flow.solve(source, sink, total, true).cost;
}

} // namespace

Matching Matching::from_pairs(
    std::size_t num_firms, std::size_t num_workers,
    const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
  Matching mu(num_firms, num_workers);
  for (auto [i, j] : pairs) {
    if (i >= num_firms || j >= num_workers)
      throw InvalidArgument("matching pair out of range");
    if (mu.firm_of_[j])
      throw InvalidArgument("worker " + std::to_string(j + 1) +
                            " matched twice");
    mu.firm_of_[j] = i;
  }
  return mu;
}

std::vector<std::size_t> Matching::workers_of(std::size_t firm) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < firm_of_.size(); ++j)
    if (firm_of_[j] == firm)
      out.push_back(j);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Matching::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < firm_of_.size(); ++j)
    if (firm_of_[j])
      out.emplace_back(*firm_of_[j], j);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(firm_of_.begin(), firm_of_.end(),
                    [](const auto &f) { return f.has_value(); }));
}

bool Matching::is_feasible(const Market &m) const {
  if (num_firms_ != m.num_firms() || firm_of_.size() != m.num_workers())
    return false;
  std::vector<int> load(num_firms_, 0);
  for (const auto &f : firm_of_)
    if (f && ++load[*f] > m.capacity(*f))
      return false;
  return true;
}

Rational Matching::value(const Market &m) const {
  Rational total;
  for (std::size_t j = 0; j < firm_of_.size(); ++j)
    if (firm_of_[j])
      total += m.surplus(*firm_of_[j], j);
  return total;
}

bool operator<(const Matching &a, const Matching &b) {
  const std::size_t n = std::min(a.firm_of_.size(), b.firm_of_.size());
  for (std::size_t j = 0; j < n; ++j) {
    const auto &x = a.firm_of_[j];
    const auto &y = b.firm_of_[j];
    if (x == y)
      continue;
    if (!x)
      return false;
    if (!y)
      return true;
    return *x < *y;
  }
  return a.firm_of_.size() < b.firm_of_.size();
}

std::string to_string(const Matching &mu, const Market &m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [i, j] : mu.pairs()) {
    if (!first)
      os << ',';
    first = false;
    os << '(' << m.firm_id(i) << ',' << m.worker_id(j) << ')';
  }
  os << '}';
  return os.str();
}

Rational optimal_value(const Market &m) {
  return restricted_value(m, m.capacities(),
                          std::vector<char>(m.num_workers(), 1));
}

MatchingResult optimal_matching(const Market &m) {
  const std::size_t nf = m.num_firms(), nw = m.num_workers();
  const Rational best = optimal_value(m);
  std::vector<int> caps = m.capacities();
  std::vector<char> active(nw, 1);
  Matching mu(nf, nw);
  Rational fixed;
  for (std::size_t j = 0; j < nw; ++j) {
    active[j] = 0;
    for (std::size_t i = 0; i < nf; ++i) {
      if (caps[i] == 0)
        continue;
      --caps[i];
      if (fixed + m.surplus(i, j) + restricted_value(m, caps, active) == best) {
        mu.assign(j, i);
        fixed += m.surplus(i, j);
        break;
      }
      ++caps[i];
    }
  }
  MatchingResult result{mu, mu.value(m), false};
  result.optimal = mu.is_feasible(m) && result.value == best;
  return result;
}

bool is_optimal(const Market &m, const Matching &mu) {
  return mu.is_feasible(m) && mu.value(m) == optimal_value(m);
}

namespace {

// Depth-first walk over firm-of-worker vectors in lexicographic order.
// `keep` decides whether a complete matching is recorded; `bound` prunes.
void walk(const Market &m, Matching &mu, std::vector<int> &caps,
          std::size_t j, const Rational &acc,
          const std::function<bool(const Rational &, std::size_t)> &prune,
          const std::function<void(const Matching &, const Rational &)> &emit) {
  if (j == m.num_workers()) {
    emit(mu, acc);
    return;
  }
  for (std::size_t i = 0; i < m.num_firms(); ++i) {
    if (caps[i] == 0)
      continue;
    Rational next = acc + m.surplus(i, j);
    if (prune(next, j + 1))
      continue;
    --caps[i];
    mu.assign(j, i);
    walk(m, mu, caps, j + 1, next, prune, emit);
    mu.unassign(j);
    ++caps[i];
  }
  if (!prune(acc, j + 1))
    walk(m, mu, caps, j + 1, acc, prune, emit);
}

} // namespace

std::vector<Matching> all_optimal_matchings(const Market &m,
                                            std::size_t max_workers) {
  if (m.num_workers() > max_workers)
    throw LimitExceeded("all_optimal_matchings", m.num_workers(), max_workers);
  const Rational best = optimal_value(m);
  // suffix[j] = sum over workers >= j of their best column entry
  std::vector<Rational> suffix(m.num_workers() + 1);
  for (std::size_t j = m.num_workers(); j-- > 0;) {
    Rational col;
    for (std::size_t i = 0; i < m.num_firms(); ++i)
      col = max(col, m.surplus(i, j));
    suffix[j] = suffix[j + 1] + col;
  }
  std::vector<Matching> out;
  Matching mu(m.num_firms(), m.num_workers());
  std::vector<int> caps = m.capacities();
  walk(
      m, mu, caps, 0, Rational(0),
      [&](const Rational &acc, std::size_t next) {
        return acc + suffix[next] < best;
      },
      [&](const Matching &x, const Rational &value) {
        if (value == best)
          out.push_back(x);
      });
  return out;
}

std::vector<Matching> all_feasible_matchings(const Market &m,
                                             std::size_t max_workers) {
  if (m.num_workers() > max_workers)
    throw LimitExceeded("all_feasible_matchings", m.num_workers(), max_workers);
  std::vector<Matching> out;
  Matching mu(m.num_firms(), m.num_workers());
  std::vector<int> caps = m.capacities();
  walk(
      m, mu, caps, 0, Rational(0),
      [](const Rational &, std::size_t) { return false; },
      [&](const Matching &x, const Rational &) { out.push_back(x); });
  return out;
}

Rational duplicated_column_value(const Market &m, std::size_t worker) {
  if (worker >= m.num_workers())
    throw InvalidArgument("worker index out of range");
  const std::size_t nf = m.num_firms(), nw = m.num_workers();
  // nodes: source, firms, per-firm gate for the two copies, workers, copy, sink
  const std::size_t source = 0;
  const std::size_t firm0 = 1, gate0 = firm0 + nf, worker0 = gate0 + nf;
  const std::size_t copy = worker0 + nw, sink = copy + 1;
  detail::MinCostFlow flow(sink + 1);
  int total = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    flow.add_edge(source, firm0 + i, m.capacity(i), Rational(0));
    total += m.capacity(i);
    for (std::size_t j = 0; j < nw; ++j)
      if (j != worker && m.surplus(i, j).sign() > 0)
        flow.add_edge(firm0 + i, worker0 + j, 1, -m.surplus(i, j));
    if (m.surplus(i, worker).sign() > 0) {
      flow.add_edge(firm0 + i, gate0 + i, 1, Rational(0));
      flow.add_edge(gate0 + i, worker0 + worker, 1, -m.surplus(i, worker));
      flow.add_edge(gate0 + i, copy, 1, -m.surplus(i, worker));
    }
  }
  for (std::size_t j = 0; j < nw; ++j)
    flow.add_edge(worker0 + j, sink, 1, Rational(0));
  flow.add_edge(copy, sink, 1, Rational(0));
  return -flow.solve(source, sink, total, true).cost;
}

Rational coalition_value(const Market &m, const std::vector<std::size_t> &firms,
                         const std::vector<std::size_t> &workers) {
  if (firms.empty() || workers.empty())
    return Rational(0);
  return optimal_value(restrict(m, firms, workers));
}

CoalitionValues::CoalitionValues(Market m) : market_(std::move(m)) {
  if (market_.num_firms() > 64)
    throw LimitExceeded("CoalitionValues firms", market_.num_firms(), 64);
  if (market_.num_workers() > 64)
    throw LimitExceeded("CoalitionValues workers", market_.num_workers(), 64);
}

Rational CoalitionValues::value(std::uint64_t firm_mask,
                                std::uint64_t worker_mask) const {
  const auto key = std::make_pair(firm_mask, worker_mask);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
  }
  std::vector<std::size_t> firms, workers;
  for (std::size_t i = 0; i < market_.num_firms(); ++i)
    if (firm_mask >> i & 1)
      firms.push_back(i);
  for (std::size_t j = 0; j < market_.num_workers(); ++j)
    if (worker_mask >> j & 1)
      workers.push_back(j);
  Rational v = coalition_value(market_, firms, workers);
  std::lock_guard lock(mutex_);
  return memo_.emplace(key, std::move(v)).first->second;
}

std::size_t CoalitionValues::cached() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

} // namespace m2o
