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
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "m2o/market.hpp"
#include "m2o/rational.hpp"

namespace m2o {

/// Assignment of workers to firms. Each worker has at most one firm and
/// firm i receives at most r_i workers.
class Matching {
public:
  Matching() = default;
  Matching(std::size_t num_firms, std::size_t num_workers)
      : num_firms_(num_firms), firm_of_(num_workers) {}
  /// From (firm, worker) pairs; throws InvalidArgument on a repeated worker
  /// or an out-of-range index.
  static Matching from_pairs(std::size_t num_firms, std::size_t num_workers,
                             const std::vector<std::pair<std::size_t, std::size_t>> &pairs);

  std::size_t num_firms() const { return num_firms_; }
  std::size_t num_workers() const { return firm_of_.size(); }

  /// j^mu, or nullopt if j is unmatched.
  std::optional<std::size_t> firm_of(std::size_t worker) const {
    return firm_of_[worker];
  }
  /// mu(i) in ascending worker order.
  std::vector<std::size_t> workers_of(std::size_t firm) const;
  /// Pairs sorted by (firm, worker).
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t size() const;

  void assign(std::size_t worker, std::size_t firm) { firm_of_[worker] = firm; }
  void unassign(std::size_t worker) { firm_of_[worker].reset(); }

  /// True when no firm exceeds its capacity.
  bool is_feasible(const Market &m) const;
  Rational value(const Market &m) const;

  friend bool operator==(const Matching &, const Matching &) = default;
  /// Lexicographic on the firm-of-worker vector; unmatched sorts last.
  friend bool operator<(const Matching &a, const Matching &b);

private:
  std::size_t num_firms_ = 0;
  std::vector<std::optional<std::size_t>> firm_of_;
};

/// Renders {(f1,w1),(f1,w2),(f2,w3)} using the market's ids.
std::string to_string(const Matching &mu, const Market &m);

struct MatchingResult {
  Matching matching;
  Rational value;
  /// Set when the value was confirmed against an independent solve.
  bool optimal = false;
};

/// Maximum total surplus over feasible matchings, by min-cost flow.
Rational optimal_value(const Market &m);

/// An optimal matching. Among all optimal matchings the one whose
/// firm-of-worker vector is lexicographically smallest is returned (firms in
/// index order, "unmatched" after every firm). On a capacity-balanced market
/// the result saturates every firm.
MatchingResult optimal_matching(const Market &m);

/// True when mu is feasible and attains optimal_value(m).
bool is_optimal(const Market &m, const Matching &mu);

/// Every optimal matching, sorted by operator<. Throws LimitExceeded when
/// the number of workers is above `max_workers`.
std::vector<Matching> all_optimal_matchings(const Market &m,
                                            std::size_t max_workers = 10);

/// Every feasible matching, value ignored. Exhaustive; intended as a test
/// oracle for tiny markets.
std::vector<Matching> all_feasible_matchings(const Market &m,
                                             std::size_t max_workers = 8);

/// Optimal value of the market with an extra copy of worker column j, where
/// no firm may hire both copies.
Rational duplicated_column_value(const Market &m, std::size_t worker);

/// v(S u T) for firm set S and worker set T.
Rational coalition_value(const Market &m, const std::vector<std::size_t> &firms,
                         const std::vector<std::size_t> &workers);

/// Thread-safe memo of coalition values keyed by (firm mask, worker mask).
class CoalitionValues {
public:
  /// Throws LimitExceeded if either side has more than 64 agents.
  explicit CoalitionValues(Market m);

  const Market &market() const { return market_; }
  Rational value(std::uint64_t firm_mask, std::uint64_t worker_mask) const;
  std::size_t cached() const;

private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t> &k) const {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };
  Market market_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Rational,
                             KeyHash>
      memo_;
};

} // namespace m2o
