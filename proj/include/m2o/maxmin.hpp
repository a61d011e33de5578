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

/// Worker permutation with a MIN/MAX flag per position.
struct ExtendedOrder {
  std::vector<std::size_t> workers;
  std::vector<bool> is_max;

  /// "(3_,1_,2^)" with 1-based worker numbers; '_' is MIN, '^' is MAX.
  std::string str() const;
  /// Inverse of str(); throws ParseError.
  static ExtendedOrder parse(std::string_view text);

  friend bool operator==(const ExtendedOrder &, const ExtendedOrder &) = default;
  /// Permutation first, then flags, MIN before MAX.
  friend auto operator<=>(const ExtendedOrder &a, const ExtendedOrder &b) {
    if (auto c = a.workers <=> b.workers; c != 0)
      return c;
    return a.is_max <=> b.is_max;
  }
};

/// Salaries fixed one worker at a time along the order. A MIN worker gets
/// the largest lower bound implied by the predecessors working for other
/// firms (and 0), a MAX worker the smallest upper bound (and a_{j^mu j}).
/// With `all_predecessors` every predecessor is scanned, which is the
/// buyer-seller variant.
SalaryVector maxmin_vector(const CoreConstraintSystem &sys,
                           const ExtendedOrder &order,
                           bool all_predecessors = false);
SalaryVector maxmin_vector(const BalancedMarket &bm, const Matching &mu,
                           const ExtendedOrder &order);

struct OrderRecord {
  ExtendedOrder order;
  SalaryVector y;
  bool in_core = false;
};

struct ExtremePoint {
  SalaryVector y;
  /// Payoffs mapped back to the original market.
  Allocation allocation;
  std::vector<ExtendedOrder> witnesses;
};

struct ExtremeSet {
  /// In order of first appearance along the enumeration.
  std::vector<ExtremePoint> points;
  /// Every evaluated order; filled only when requested.
  std::vector<OrderRecord> table;
  std::size_t total_orders = 0;
  std::size_t in_core_orders = 0;
};

struct EnumerationOptions {
  std::size_t max_workers = 8;
  unsigned jobs = 1;
  bool keep_table = false;
  bool keep_witnesses = true;
  /// Use the competitive-equilibrium system of the buyer-seller model
  /// and scan every predecessor.
  bool same_firm_pairs = false;
};

/// Evaluates all n! 2^n extended orders, permutations in lexicographic order
/// and flags as a counter with MIN first, and keeps the vectors that satisfy
/// the constraint system.
ExtremeSet enumerate_extremes(const BalancedMarket &bm,
                              const EnumerationOptions &options = {});
ExtremeSet enumerate_extremes(const BalancedMarket &bm, const Matching &mu,
                              const EnumerationOptions &options = {});

/// Vertices of the constraint system by solving every non-singular n x n
/// subsystem of constraints taken as equalities. Sorted lexicographically.
std::vector<SalaryVector> brute_force_vertices(const CoreConstraintSystem &sys,
                                               std::size_t max_workers = 6);
std::vector<SalaryVector> brute_force_vertices(const BalancedMarket &bm,
                                               std::size_t max_workers = 6);

/// Orders whose max-min vector equals y. Empty when y is not extreme.
std::vector<ExtendedOrder> witnesses_for(const BalancedMarket &bm,
                                         const SalaryVector &y,
                                         std::size_t max_workers = 8);

} // namespace m2o
