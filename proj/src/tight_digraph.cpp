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

#include "m2o/tight_digraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "m2o/error.hpp"

namespace m2o {

TightDigraph::TightDigraph(std::size_t num_workers, std::vector<TightArc> arcs)
    : out_(num_workers + 1), in_(num_workers + 1) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> merged;
  for (auto &a : arcs) {
    if (a.tail > num_workers || a.head > num_workers || a.tail == a.head)
      throw InvalidArgument("arc endpoint out of range");
    auto &slot = merged[{a.tail, a.head}];
    slot.insert(slot.end(), a.constraints.begin(), a.constraints.end());
  }
  for (auto &[key, ids] : merged) {
    std::sort(ids.begin(), ids.end());
    arcs_.push_back({key.first, key.second, std::move(ids)});
    out_[key.first].push_back(key.second);
    in_[key.second].push_back(key.first);
  }
}

bool TightDigraph::has_arc(std::size_t tail, std::size_t head) const {
  if (tail >= out_.size())
    return false;
  const auto &o = out_[tail];
  return std::find(o.begin(), o.end(), head) != o.end();
}

std::vector<char> TightDigraph::reachable(std::size_t start, bool reverse) const {
  const auto &adj = reverse ? in_ : out_;
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  return seen;
}

TightDigraph build_tight_digraph(const CoreConstraintSystem &sys,
                                 const SalaryVector &y) {
  if (auto bad = sys.violation(y))
    throw InvalidArgument("salary vector is not in the core");
  std::vector<TightArc> arcs;
  const auto &cs = sys.constraints();
  for (std::size_t c = 0; c < cs.size(); ++c)
    if (cs[c].is_tight(y))
      arcs.push_back({cs[c].tail, cs[c].head, {c}});
  return TightDigraph(sys.num_workers(), std::move(arcs));
}

TightDigraph build_tight_digraph(const BalancedMarket &bm, const Matching &mu,
                                 const SalaryVector &y) {
  return build_tight_digraph(core_constraints(bm, mu), y);
}

bool is_extreme(const TightDigraph &d) {
  std::vector<char> seen(d.num_nodes(), 0);
  std::vector<std::vector<std::size_t>> adj(d.num_nodes());
  for (const auto &a : d.arcs()) {
    adj[a.tail].push_back(a.head);
    adj[a.head].push_back(a.tail);
  }
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        queue.push_back(v);
      }
  }
  return count == d.num_nodes();
}

bool is_minimum(const TightDigraph &d) {
  auto seen = d.reachable(0);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_maximum(const TightDigraph &d) {
  auto seen = d.reachable(0, true);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_extreme(const BalancedMarket &bm, const Matching &mu,
                const SalaryVector &y) {
  return is_extreme(build_tight_digraph(bm, mu, y));
}

bool is_minimum(const BalancedMarket &bm, const Matching &mu,
                const SalaryVector &y) {
  return is_minimum(build_tight_digraph(bm, mu, y));
}

bool is_maximum(const BalancedMarket &bm, const Matching &mu,
                const SalaryVector &y) {
  return is_maximum(build_tight_digraph(bm, mu, y));
}

std::string to_dot(const TightDigraph &d) {
  std::ostringstream os;
  os << "digraph tight {\n";
  for (std::size_t v = 0; v < d.num_nodes(); ++v)
    os << "  " << v << " [label=\"" << v << "\"];\n";
  for (const auto &a : d.arcs())
    os << "  " << a.tail << " -> " << a.head << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace m2o
