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

#include "m2o/kaneko.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "m2o/error.hpp"

namespace m2o {

BuyerMarket::BuyerMarket(std::vector<std::string> buyer_ids,
                         std::vector<std::string> seller_ids,
                         std::vector<int> capacities, RationalMatrix valuation)
    : buyer_ids_(std::move(buyer_ids)), seller_ids_(std::move(seller_ids)),
      capacities_(std::move(capacities)), valuation_(std::move(valuation)) {
  // the transposed job market runs every validity check
  (void)as_job_market();
}

BuyerMarket BuyerMarket::from_matrix(const std::vector<std::vector<Rational>> &rows,
                                     std::vector<int> capacities) {
  std::vector<std::string> buyers, sellers;
  for (std::size_t i = 0; i < rows.size(); ++i)
    buyers.push_back("b" + std::to_string(i + 1));
  for (std::size_t j = 0; j < capacities.size(); ++j)
    sellers.push_back("s" + std::to_string(j + 1));
  return BuyerMarket(std::move(buyers), std::move(sellers), std::move(capacities),
                     RationalMatrix::from_rows(rows));
}

Market BuyerMarket::as_job_market() const {
  if (valuation_.rows() != buyer_ids_.size() || valuation_.cols() != seller_ids_.size())
    throw InvalidArgument("valuation matrix is " + std::to_string(valuation_.rows()) +
                          "x" + std::to_string(valuation_.cols()) + ", expected " +
                          std::to_string(buyer_ids_.size()) + "x" +
                          std::to_string(seller_ids_.size()));
  return Market(seller_ids_, capacities_, buyer_ids_, valuation_.transposed());
}

std::string BuyerSellerPayoff::str(int digits) const {
  return "(" + format_rationals(buyers, ",", digits) + ";" +
         format_rationals(sellers, ",", digits) + ")";
}

BalancedMarket balance(const BuyerMarket &bm) { return balance(bm.as_job_market()); }

CoreConstraintSystem buyer_core_constraints(const BuyerMarket &bm, const Matching &mu) {
  return core_constraints(balance(bm), mu, false);
}

CoreConstraintSystem buyer_core_constraints(const BuyerMarket &bm) {
  return core_constraints(balance(bm), false);
}

CoreConstraintSystem ce_constraints(const BuyerMarket &bm, const Matching &mu) {
  return core_constraints(balance(bm), mu, true);
}

CoreConstraintSystem ce_constraints(const BuyerMarket &bm) {
  return core_constraints(balance(bm), true);
}

namespace {

std::vector<Rational> lift(const BuyerMarket &bm, const std::vector<Rational> &x) {
  if (x.size() != bm.num_buyers())
    throw InvalidArgument("payoff vector has " + std::to_string(x.size()) +
                          " entries, market has " + std::to_string(bm.num_buyers()) +
                          " buyers");
  return balance(bm).lift_workers(x);
}

} // namespace

BuyerSellerPayoff buyer_seller_payoff(const BuyerMarket &bm,
                                      const CoreConstraintSystem &sys,
                                      const std::vector<Rational> &x) {
  const auto a = firm_payoffs(balance(bm), sys.matching(), lift(bm, x));
  return {a.y, a.x};
}

std::vector<std::optional<Rational>> ce_prices(const BuyerMarket &bm,
                                               const CoreConstraintSystem &sys,
                                               const std::vector<Rational> &x) {
  std::vector<std::optional<Rational>> prices(bm.num_sellers());
  const Matching &mu = sys.matching();
  for (std::size_t i = 0; i < bm.num_buyers(); ++i) {
    const auto j = mu.firm_of(i);
    if (!j || *j >= bm.num_sellers())
      continue;
    Rational p = bm.valuation(i, *j) - x[i];
    if (prices[*j] && *prices[*j] != p)
      throw InvalidArgument("seller " + bm.seller_id(*j) +
                            " sells at two prices: " + prices[*j]->str() + " and " +
                            p.str());
    prices[*j] = std::move(p);
  }
  return prices;
}

bool in_buyer_core(const BuyerMarket &bm, const std::vector<Rational> &x) {
  return buyer_core_constraints(bm).contains(lift(bm, x));
}

bool is_ce_payoff(const BuyerMarket &bm, const std::vector<Rational> &x) {
  return ce_constraints(bm).contains(lift(bm, x));
}

CeVertexSet ce_vertices(const BuyerMarket &bm, std::size_t max_buyers, unsigned jobs) {
  const BalancedMarket bal = balance(bm);
  const std::size_t n = bal.market().num_workers();
  if (n > max_buyers)
    throw LimitExceeded("ce_vertices", n, max_buyers);
  const Matching mu = optimal_matching(bal.market()).matching;
  const CoreConstraintSystem sys = core_constraints(bal, mu, true);

  EnumerationOptions opt;
  opt.max_workers = max_buyers;
  opt.jobs = jobs;
  opt.same_firm_pairs = true;
  const ExtremeSet enumerated = enumerate_extremes(bal, mu, opt);
  std::map<std::vector<Rational>, const ExtremePoint *> by_vector;
  CeVertexSet out;
  for (const auto &p : enumerated.points) {
    by_vector[p.y] = &p;
    out.maxmin_points.push_back(bal.project_workers(p.y));
  }

  const auto vertices = brute_force_vertices(sys, max_buyers);
  out.discrepancy = vertices.size() != enumerated.points.size();
  for (const auto &v : vertices) {
    CeVertex cv;
    cv.x = bal.project_workers(v);
    cv.payoff = buyer_seller_payoff(bm, sys, cv.x);
    cv.prices = ce_prices(bm, sys, cv.x);
    if (auto it = by_vector.find(v); it != by_vector.end())
      cv.witnesses = it->second->witnesses;
    else
      out.discrepancy = true;
    out.points.push_back(std::move(cv));
  }
  return out;
}

TightDigraph extended_tight_digraph(const BuyerMarket &bm, const Matching &mu,
                                    const std::vector<Rational> &x) {
  const auto sys = ce_constraints(bm, mu);
  const auto lifted = lift(bm, x);
  if (!sys.contains(lifted))
    throw InvalidArgument("not a competitive equilibrium payoff vector: (" +
                          format_rationals(x) + ")");
  return build_tight_digraph(sys, lifted);
}

TightDigraph extended_tight_digraph(const BuyerMarket &bm,
                                    const std::vector<Rational> &x) {
  return extended_tight_digraph(bm, optimal_matching(balance(bm).market()).matching, x);
}

bool ce_equals_core(const BuyerMarket &bm) {
  const Market m = balance(bm).market();
  const Matching mu = complete_matching(m, optimal_matching(m).matching);
  // a(buyer, seller) on the balanced market
  auto a = [&](std::size_t buyer, std::size_t seller) -> const Rational & {
    return m.surplus(seller, buyer);
  };
  for (std::size_t j = 0; j < m.num_firms(); ++j) {
    const auto block = mu.workers_of(j);
    for (std::size_t jp = 0; jp < m.num_firms(); ++jp) {
      if (jp == j)
        continue;
      for (auto ip : mu.workers_of(jp))
        for (auto i : block)
          for (auto k : block) {
            if (i == k)
              continue;
            if (a(k, jp) + a(ip, j) < a(k, j) + a(ip, jp) ||
                a(i, jp) + a(ip, j) < a(i, j) + a(ip, jp))
              return false;
          }
    }
  }
  return true;
}

} // namespace m2o
