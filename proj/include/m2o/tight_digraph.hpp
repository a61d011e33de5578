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
#include <string>
#include <vector>

#include "m2o/core.hpp"

namespace m2o {

/// Arc tail -> head on nodes 0..n (0 is the fictitious worker, worker j is
/// node j + 1), with the indices of the constraints it comes from.
struct TightArc {
  std::size_t tail;
  std::size_t head;
  std::vector<std::size_t> constraints;
};

/// Digraph of the constraints that hold with equality at a salary vector.
class TightDigraph {
public:
  TightDigraph(std::size_t num_workers, std::vector<TightArc> arcs);

  std::size_t num_nodes() const { return out_.size(); }
  /// Sorted by (tail, head), no duplicates.
  const std::vector<TightArc> &arcs() const { return arcs_; }
  bool has_arc(std::size_t tail, std::size_t head) const;
  /// Nodes reachable from `start` along arc directions (or against them).
  std::vector<char> reachable(std::size_t start, bool reverse = false) const;

private:
  std::vector<TightArc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Throws InvalidArgument if y violates a constraint of sys.
TightDigraph build_tight_digraph(const CoreConstraintSystem &sys,
                                 const SalaryVector &y);
TightDigraph build_tight_digraph(const BalancedMarket &bm, const Matching &mu,
                                 const SalaryVector &y);

/// Base graph connected.
bool is_extreme(const TightDigraph &d);
/// Every node reachable from 0.
bool is_minimum(const TightDigraph &d);
/// 0 reachable from every node.
bool is_maximum(const TightDigraph &d);

bool is_extreme(const BalancedMarket &bm, const Matching &mu, const SalaryVector &y);
bool is_minimum(const BalancedMarket &bm, const Matching &mu, const SalaryVector &y);
bool is_maximum(const BalancedMarket &bm, const Matching &mu, const SalaryVector &y);

/// Graphviz text: "digraph tight {", one node line per node, one arc line per
/// arc in sorted order, "}". LF line endings.
std::string to_dot(const TightDigraph &d);

} // namespace m2o
