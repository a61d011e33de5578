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

#include "flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>

namespace m2o::detail {

std::size_t MinCostFlow::add_edge(std::size_t from, std::size_t to, int cap,
                                  const Rational &cost) {
  const std::size_t id = edges_.size();
  edges_.push_back({to, cap, 0, cost});
  edges_.push_back({from, 0, 0, -cost});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

MinCostFlow::Result MinCostFlow::solve(std::size_t source, std::size_t sink,
                                       int max_flow, bool stop_at_nonnegative) {
  Result result;
  const std::size_t n = adj_.size();
  while (result.flow < max_flow) {
    // SPFA variant of Bellman-Ford.
    std::vector<std::optional<Rational>> dist(n);
    std::vector<std::size_t> via(n, std::numeric_limits<std::size_t>::max());
    std::vector<char> queued(n, 0);
    std::deque<std::size_t> queue;
    dist[source] = Rational(0);
    queue.push_back(source);
    queued[source] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (std::size_t e : adj_[u]) {
        const Edge &edge = edges_[e];
        if (edge.cap - edge.flow <= 0)
          continue;
        Rational candidate = *dist[u] + edge.cost;
        if (!dist[edge.to] || candidate < *dist[edge.to]) {
          dist[edge.to] = std::move(candidate);
          via[edge.to] = e;
          if (!queued[edge.to]) {
            queued[edge.to] = 1;
            queue.push_back(edge.to);
          }
        }
      }
    }
    if (!dist[sink])
      break;
    if (stop_at_nonnegative && dist[sink]->sign() >= 0)
      break;

    int push = max_flow - result.flow;
    for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to)
      push = std::min(push, edges_[via[v]].cap - edges_[via[v]].flow);
    for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
      edges_[via[v]].flow += push;
      edges_[via[v] ^ 1].flow -= push;
    }
    result.flow += push;
    result.cost += *dist[sink] * Rational(push);
  }
  return result;
}

} // namespace m2o::detail
