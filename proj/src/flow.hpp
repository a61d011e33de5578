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

#pragma once

#include <cstddef>
#include <vector>

#include "m2o/rational.hpp"

namespace m2o::detail {

// Successive shortest paths on a small residual network with exact costs.
// Shortest paths come from Bellman-Ford, so negative arc costs are fine as
// long as the initial network has no negative cycle.
class MinCostFlow {
public:
  explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, int cap,
                       const Rational &cost);

  struct Result {
    int flow = 0;
    Rational cost;
  };

  // Pushes up to max_flow units. With stop_at_nonnegative, augmentation ends
  // as soon as the cheapest path no longer lowers the total cost.
  Result solve(std::size_t source, std::size_t sink, int max_flow,
               bool stop_at_nonnegative);

  int flow(std::size_t edge) const { return edges_[edge].flow; }
  std::size_t from(std::size_t edge) const { return edges_[edge ^ 1].to; }
  std::size_t to(std::size_t edge) const { return edges_[edge].to; }

private:
  struct Edge {
    std::size_t to;
    int cap;
    int flow;
    Rational cost;
  };
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

} // namespace m2o::detail
