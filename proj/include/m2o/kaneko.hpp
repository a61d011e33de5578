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

#include "m2o/core.hpp"
#include "m2o/market.hpp"
#include "m2o/maxmin.hpp"
#include "m2o/tight_digraph.hpp"

namespace m2o {

/// Unit-demand buyers and capacitated sellers with a valuation matrix
/// a_ij (buyers x sellers). Seller j sells up to r_j identical units.
class BuyerMarket {
public:
  BuyerMarket() = default;
  BuyerMarket(std::vector<std::string> buyer_ids,
              std::vector<std::string> seller_ids, std::vector<int> capacities,
              RationalMatrix valuation);

  /// Generated ids b1.., s1...
  static BuyerMarket from_matrix(const std::vector<std::vector<Rational>> &rows,
                                 std::vector<int> capacities);

  std::size_t num_buyers() const { return buyer_ids_.size(); }
  std::size_t num_sellers() const { return seller_ids_.size(); }
  int capacity(std::size_t seller) const { return capacities_[seller]; }
  const std::vector<int> &capacities() const { return capacities_; }
  const Rational &valuation(std::size_t buyer, std::size_t seller) const {
    return valuation_(buyer, seller);
  }
  const std::string &buyer_id(std::size_t i) const { return buyer_ids_[i]; }
  const std::string &seller_id(std::size_t j) const { return seller_ids_[j]; }

  /// Sellers as firms, buyers as workers, surplus = transposed valuation.
  Market as_job_market() const;

private:
  std::vector<std::string> buyer_ids_;
  std::vector<std::string> seller_ids_;
  std::vector<int> capacities_;
  RationalMatrix valuation_;
};

/// Buyer payoffs x and seller payoffs y.
struct BuyerSellerPayoff {
  std::vector<Rational> buyers;
  std::vector<Rational> sellers;
  /// "(x1,...;y1,...)"
  std::string str(int digits = -1) const;

  friend bool operator==(const BuyerSellerPayoff &, const BuyerSellerPayoff &) = default;
};

/// Balanced transposed market; buyers are its workers.
BalancedMarket balance(const BuyerMarket &bm);

/// Buyer-space core: boxes and the differences for buyers of different
/// sellers. `mu` is a matching of the balanced transposed market.
CoreConstraintSystem buyer_core_constraints(const BuyerMarket &bm, const Matching &mu);
CoreConstraintSystem buyer_core_constraints(const BuyerMarket &bm);

/// Competitive-equilibrium system: the core system plus the differences for
/// buyers of the same seller, which fix one price per seller.
CoreConstraintSystem ce_constraints(const BuyerMarket &bm, const Matching &mu);
CoreConstraintSystem ce_constraints(const BuyerMarket &bm);

/// Seller payoffs y_j = sum over buyers i of j of (a_ij - x_i). `x` is over
/// the original buyers.
BuyerSellerPayoff buyer_seller_payoff(const BuyerMarket &bm,
                                      const CoreConstraintSystem &sys,
                                      const std::vector<Rational> &x);

/// p_j = a_ij - x_i for the buyers of seller j; nullopt for a seller with no
/// real buyer. Throws InvalidArgument when two buyers of one seller imply
/// different prices.
std::vector<std::optional<Rational>> ce_prices(const BuyerMarket &bm,
                                               const CoreConstraintSystem &sys,
                                               const std::vector<Rational> &x);

bool in_buyer_core(const BuyerMarket &bm, const std::vector<Rational> &x);
bool is_ce_payoff(const BuyerMarket &bm, const std::vector<Rational> &x);

struct CeVertex {
  std::vector<Rational> x;
  BuyerSellerPayoff payoff;
  std::vector<std::optional<Rational>> prices;
  /// Orders whose all-predecessor max-min vector is this vertex.
  std::vector<ExtendedOrder> witnesses;
};

struct CeVertexSet {
  /// Vertices found by the exhaustive subsystem search, sorted.
  std::vector<CeVertex> points;
  /// Distinct in-system vectors produced by the max-min enumeration.
  std::vector<std::vector<Rational>> maxmin_points;
  /// True when the two searches disagree.
  bool discrepancy = false;
};

/// Extreme points of CE(B). The subsystem search is authoritative; the
/// max-min enumeration runs alongside and any mismatch is flagged.
CeVertexSet ce_vertices(const BuyerMarket &bm, std::size_t max_buyers = 6,
                        unsigned jobs = 1);

/// Tight digraph of the competitive-equilibrium system at x. Throws
/// InvalidArgument if x is not a CE payoff vector.
TightDigraph extended_tight_digraph(const BuyerMarket &bm, const Matching &mu,
                                    const std::vector<Rational> &x);
TightDigraph extended_tight_digraph(const BuyerMarket &bm,
                                    const std::vector<Rational> &x);

/// Sufficient condition for C(B) = CE(B): for sellers j != j', buyers
/// i, k of j and i' of j', a_kj' + a_i'j >= a_kj + a_i'j' and
/// a_ij' + a_i'j >= a_ij + a_i'j'. Checked on the balanced market. The
/// condition is vacuous with a single seller, where the two sets can differ.
bool ce_equals_core(const BuyerMarket &bm);

} // namespace m2o
