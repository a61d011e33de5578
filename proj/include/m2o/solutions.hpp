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
#include <utility>
#include <vector>

#include "m2o/core.hpp"
#include "m2o/game.hpp"
#include "m2o/market.hpp"

namespace m2o {

/// Excess v(S) - z(S) of every coalition other than the empty one and N,
/// largest first; ties by coalition mask.
struct ExcessProfile {
  std::vector<Coalition> coalitions;
  std::vector<Rational> excesses;
};

Rational excess(const GameTable &g, Coalition s, const Allocation &z);
ExcessProfile excess_profile(const GameTable &g, const Allocation &z);

/// Efficient and individually rational.
bool is_imputation(const GameTable &g, const Allocation &z);

/// s_ij(z): largest excess over coalitions containing player i but not j.
/// Throws InvalidArgument if z is not an imputation or i == j.
Rational max_surplus(const GameTable &g, const Allocation &z, std::size_t i,
                     std::size_t j);

/// s_ij(z) = s_ji(z) for every pair of players.
bool is_in_kernel(const GameTable &g, const Allocation &z);

/// Player pairs (p, q), p < q, that sit in the same block {i} u mu(i) of
/// every optimal matching: a firm and a worker it always hires, or two
/// workers always hired together.
std::vector<std::pair<std::size_t, std::size_t>> kernel_pairs(const Market &m);

/// Kernel test for a core allocation: balance of s_ij and s_ji only for the
/// kernel pairs, with the maxima taken over the essential candidates.
/// Throws InvalidArgument if z is not in the core.
bool kernel_core_test(const Market &m, const GameTable &g, const Allocation &z);

/// Lexicographic minimizer of the decreasing excess vector over efficient
/// payoffs, by a sequence of linear programs over the essential candidates.
Allocation nucleolus(const Market &m, const GameTable &g);

/// Average of the marginal vectors, by the subset formula.
Allocation shapley(const GameTable &g);

/// Utopia payoffs M_i = v(N) - v(N \ i).
std::vector<Rational> utopia_vector(const GameTable &g);
/// m_i = max over S containing i of v(S) - sum of M_k over S \ i.
std::vector<Rational> minimum_rights(const GameTable &g);
/// m + kappa (M - m) with kappa fixed by efficiency. Throws InvalidArgument
/// when m <= M fails, v(N) lies outside [m(N), M(N)], or M = m with
/// v(N) != m(N).
Allocation tau_value(const GameTable &g);

/// Midpoint of the firm-optimal and worker-optimal core allocations.
Allocation fair_division(const Market &m);

/// An optimal matching where every firm holds a best bundle of its row and
/// every worker earns at least as much as at any other firm, if one exists.
/// Throws InvalidArgument on a market that is not capacity-balanced.
std::optional<Matching> dominant_diagonal_matching(const Market &m);
bool has_dominant_diagonal(const Market &m);

/// (firm-optimal, worker-optimal). Throws InvalidArgument without a
/// dominant diagonal.
std::pair<Allocation, Allocation> side_optimal_allocations(const Market &m);

/// Every row has at most r_i positive entries and every column at most one.
bool is_convex_market(const Market &m);
/// v(S u i) - v(S) <= v(T u i) - v(T) whenever S is a subset of T not
/// containing i.
bool is_convex_game(const GameTable &g);

} // namespace m2o
