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
#include <string>
#include <vector>

#include "m2o/market.hpp"
#include "m2o/rational.hpp"

namespace m2o {

/// Bitmask over players; bit p set means player p is a member.
using Coalition = std::uint32_t;

/// Permutation of player indices; position k holds the k-th player.
using PlayerOrder = std::vector<std::size_t>;

/// Explicit transferable-utility game over at most 31 players.
///
/// When built from a market, players are the firms (indices 0..m-1)
/// followed by the workers (indices m..m+n-1).
class GameTable {
public:
  GameTable() = default;
  /// `values` is indexed by coalition mask and must have 2^|players| entries
  /// with values[0] = 0.
  GameTable(std::vector<std::string> players, std::vector<Rational> values);

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string> &players() const { return players_; }
  const std::string &player(std::size_t p) const { return players_[p]; }
  Coalition grand() const {
    return static_cast<Coalition>((std::uint64_t{1} << players_.size()) - 1);
  }
  const Rational &value(Coalition s) const { return values_[s]; }
  const Rational &operator[](Coalition s) const { return values_[s]; }

  /// Market layout; num_firms() is 0 for a game not built from a market.
  std::size_t num_firms() const { return capacities_.size(); }
  std::size_t num_workers() const { return players_.size() - capacities_.size(); }
  const std::vector<int> &capacities() const { return capacities_; }

  /// Sum of payoff coordinates over members of s.
  Rational sum(const std::vector<Rational> &payoff, Coalition s) const;

private:
  friend GameTable build_game(const Market &m, std::size_t max_players);
  std::vector<std::string> players_;
  std::vector<Rational> values_;
  std::vector<int> capacities_;
};

/// Player index of firm i and worker j in a market game.
inline std::size_t firm_player(std::size_t i) { return i; }
inline std::size_t worker_player(const Market &m, std::size_t j) {
  return m.num_firms() + j;
}

/// Coalition from firm and worker index lists of a market game.
Coalition make_coalition(const Market &m, const std::vector<std::size_t> &firms,
                         const std::vector<std::size_t> &workers);

/// "{f1,w3}" using player names.
std::string coalition_to_string(const GameTable &g, Coalition s);

/// Tabulates v(S) for every coalition. Values are computed by a subset
/// recursion on the lowest firm of S, not by the matching solver.
GameTable build_game(const Market &m, std::size_t max_players = 16);

/// v*(S) = v(N) - v(N \ S).
Rational dual_value(const GameTable &g, Coalition s);

/// Singletons in player order, then for each firm i every {i} u T with
/// 1 <= |T| <= r_i, by |T| and then by worker mask.
std::vector<Coalition> essential_candidates(const Market &m);
/// Same family computed from the layout stored in a market game.
std::vector<Coalition> essential_candidates(const GameTable &g);

/// True iff S splits into two non-empty parts T, U with v(S) <= v(T) + v(U).
bool is_inessential(const GameTable &g, Coalition s);

/// Payoff indexed by player: v(P u {p}) - v(P), P the predecessors of p.
std::vector<Rational> marginal_vector(const GameTable &g, const PlayerOrder &order);

/// Payoff indexed by player: for the player at position k,
/// min over Q subset of its predecessors of v*(Q u {p}) - x(Q).
std::vector<Rational> lemaral_vector(const GameTable &g, const PlayerOrder &order);

/// Throws InvalidArgument unless `order` is a permutation of the players.
void check_order(const GameTable &g, const PlayerOrder &order);

} // namespace m2o
