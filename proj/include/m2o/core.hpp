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
#include <optional>
#include <string>
#include <vector>

#include "m2o/game.hpp"
#include "m2o/market.hpp"
#include "m2o/matching.hpp"
#include "m2o/rational.hpp"

namespace m2o {

/// Worker payoffs y_j, indexed by worker.
using SalaryVector = std::vector<Rational>;

/// Firm payoffs x and worker payoffs y.
struct Allocation {
  std::vector<Rational> x;
  std::vector<Rational> y;

  /// x followed by y, i.e. indexed like the players of a market game.
  std::vector<Rational> flat() const;
  static Allocation split(const std::vector<Rational> &flat, std::size_t num_firms);
  /// "(x1,...,xm;y1,...,yn)"
  std::string str(int digits = -1) const;

  friend bool operator==(const Allocation &, const Allocation &) = default;
};

/// y_head - y_tail >= bound over nodes 0..n, where node 0 is a fictitious
/// worker with y_0 = 0 and worker j is node j + 1.
struct DifferenceConstraint {
  enum class Kind { Lower, Upper, Cross, SameFirm };
  std::size_t head;
  std::size_t tail;
  Rational bound;
  Kind kind;

  bool holds(const SalaryVector &y) const;
  bool is_tight(const SalaryVector &y) const;
  /// y_head - y_tail with y_0 = 0.
  Rational lhs(const SalaryVector &y) const;
};

/// Core of a capacity-balanced market projected on worker payoffs:
/// 0 <= y_j <= a_{j^mu j}, and y_k - y_j >= a_{j^mu k} - a_{j^mu j}
/// whenever j and k work for different firms.
class CoreConstraintSystem {
public:
  CoreConstraintSystem(Market market, Matching mu,
                       std::vector<DifferenceConstraint> constraints)
      : market_(std::move(market)), mu_(std::move(mu)),
        constraints_(std::move(constraints)) {}

  const Market &market() const { return market_; }
  const Matching &matching() const { return mu_; }
  std::size_t num_workers() const { return market_.num_workers(); }
  const std::vector<DifferenceConstraint> &constraints() const {
    return constraints_;
  }
  /// Upper bound a_{j^mu j}.
  const Rational &upper(std::size_t worker) const;

  /// Exact check of every constraint; throws InvalidArgument on a wrong
  /// dimension.
  bool contains(const SalaryVector &y) const;
  /// First violated constraint, if any.
  std::optional<DifferenceConstraint> violation(const SalaryVector &y) const;

private:
  Market market_;
  Matching mu_;
  std::vector<DifferenceConstraint> constraints_;
};

/// Fills the free capacity of an optimal matching on a balanced market with
/// zero-surplus pairs so every worker is matched. Throws InvalidArgument if
/// mu is not optimal.
Matching complete_matching(const Market &balanced, const Matching &mu);

/// Builds the worker-space core system. With `same_firm_pairs` the
/// difference constraints are also added for workers of the same firm, which
/// yields the competitive-equilibrium system of the buyer-seller model.
CoreConstraintSystem core_constraints(const BalancedMarket &bm, const Matching &mu,
                                      bool same_firm_pairs = false);
/// Same, using the canonical optimal matching of the balanced market.
CoreConstraintSystem core_constraints(const BalancedMarket &bm,
                                      bool same_firm_pairs = false);

bool is_in_CW(const CoreConstraintSystem &sys, const SalaryVector &y);

/// x_i = sum over j in mu(i) of (a_ij - y_j). `y` is over the balanced
/// market; the result is mapped back to the original firms and workers.
Allocation firm_payoffs(const BalancedMarket &bm, const Matching &mu,
                        const SalaryVector &y);

/// Outcome of a core membership test.
struct CoreCheck {
  bool efficient = false;
  /// First blocking coalition in candidate order, if any.
  std::optional<Coalition> blocking;
  bool in_core() const { return efficient && !blocking; }
};

/// Efficiency plus coalitional rationality over the essential candidates.
CoreCheck check_core_allocation(const GameTable &g, const Allocation &alloc);
/// Every essential candidate S with z(S) < v(S), in candidate order.
std::vector<Coalition> blocking_coalitions(const GameTable &g, const Allocation &alloc);
bool is_core_allocation(const GameTable &g, const Allocation &alloc);
/// Same test over all 2^|N| coalitions.
CoreCheck check_core_allocation_full(const GameTable &g, const Allocation &alloc);

/// (1) every mu(i) attains the best value of sum over R of (a_ij - y_j),
/// |R| <= r_i, (2) unmatched workers earn 0, and y >= 0.
bool is_competitive_equilibrium(const Market &m, const Matching &mu,
                                const SalaryVector &y);

/// y_j = v(F u W) - v(F u W \ {j}).
SalaryVector max_competitive_salaries(const Market &m);
/// y_j = value with column j duplicated (one copy per firm) minus v(F u W).
SalaryVector min_competitive_salaries(const Market &m);

struct DecreaseReport {
  bool bounded_by_matched = false;     // c <= a_{i0 j} for all j in mu(i0)
  bool keeps_optimal_matchings = false; // M_A subset of M_{A^c}
  bool valid() const { return bounded_by_matched && keeps_optimal_matchings; }
};

/// Lowers every hire value of firm i0 by c. The report checks the two
/// validity conditions against the canonical optimal matching and the full
/// optimal-matching sets of both markets.
std::pair<RawMarket, DecreaseReport>
constant_decrease(const RawMarket &raw, std::size_t i0, const Rational &c,
                  std::size_t max_workers = 10);

/// c* = min over j in mu(i0) of (a_{i0 j} - min salary of j), with mu the
/// canonical optimal matching of the balanced market.
Rational max_valid_decrease(const Market &m, std::size_t i0);

} // namespace m2o
