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

#include "doctest.h"

#include <algorithm>

#include "m2o/core.hpp"
#include "m2o/error.hpp"
#include "m2o/maxmin.hpp"
#include "support.hpp"

using namespace m2o;
using testing::R;
using testing::V;

namespace {

// Demand-set oracle: best bundle value by enumerating every subset of workers.
Rational best_bundle(const Market &m, std::size_t i, const SalaryVector &y) {
  const std::size_t n = m.num_workers();
  Rational best;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) > m.capacity(i))
      continue;
    Rational total;
    for (std::size_t j = 0; j < n; ++j)
      if (s >> j & 1)
        total += m.surplus(i, j) - y[j];
    best = max(best, total);
  }
  return best;
}

bool equilibrium_by_subsets(const Market &m, const Matching &mu,
                            const SalaryVector &y) {
  for (std::size_t j = 0; j < m.num_workers(); ++j)
    if (y[j].sign() < 0 || (!mu.firm_of(j) && !y[j].is_zero()))
      return false;
  for (std::size_t i = 0; i < m.num_firms(); ++i) {
    Rational held;
    for (auto j : mu.workers_of(i))
      held += m.surplus(i, j) - y[j];
    if (held != best_bundle(m, i, y))
      return false;
  }
  return true;
}

using Kind = DifferenceConstraint::Kind;

} // namespace

TEST_CASE("constraint system of the 2x3 reference market") {
  auto bm = balance(testing::example1());
  auto sys = core_constraints(bm);
  REQUIRE(sys.constraints().size() == 10);
  // boxes 0 <= y <= (8,6,4); 3 <= y1 - y3 <= 5; 2 <= y2 - y3 <= 3
  CHECK(sys.upper(0) == 8);
  CHECK(sys.upper(1) == 6);
  CHECK(sys.upper(2) == 4);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> cross;
  for (const auto &c : sys.constraints())
    if (c.kind == Kind::Cross)
      cross.emplace_back(c.tail, c.head, c.bound);
  std::sort(cross.begin(), cross.end());
  CHECK(cross == std::vector<std::tuple<std::size_t, std::size_t, Rational>>{
                     {1, 3, R("-5")}, {2, 3, R("-3")}, {3, 1, R("3")}, {3, 2, R("2")}});
  CHECK(sys.constraints().size() <= 3 * 3 + 2 * 3);
}

TEST_CASE("single firm gives boxes only") {
  auto bm = balance(Market::from_matrix({{3, 1, 2}}, {3}));
  auto sys = core_constraints(bm);
  CHECK(sys.constraints().size() == 6);
  for (const auto &c : sys.constraints())
    CHECK(c.kind != Kind::Cross);
}

TEST_CASE("all-ones market: unit boxes and zero differences") {
  auto bm = balance(testing::example2());
  auto sys = core_constraints(bm);
  for (const auto &c : sys.constraints()) {
    if (c.kind == Kind::Cross) {
      // differences involve real workers only; the dummy column is zero
      const bool dummy = bm.is_dummy_worker(c.head - 1) || bm.is_dummy_worker(c.tail - 1);
      if (!dummy)
        CHECK(c.bound == 0);
    }
  }
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(sys.upper(j) == 1);
  CHECK(sys.upper(3) == 0);
  CHECK(sys.contains(V("1,1,1,0")));
  CHECK(!sys.contains(V("1,1,1/2,0")));
}

TEST_CASE("non-optimal matching is rejected") {
  auto bm = balance(testing::example1());
  auto bad = Matching::from_pairs(2, 3, {{0, 0}, {0, 2}, {1, 1}});
  CHECK_THROWS_AS(core_constraints(bm, bad), InvalidArgument);
}

TEST_CASE("membership of salary vectors") {
  auto bm = balance(testing::example1());
  auto sys = core_constraints(bm);
  CHECK(is_in_CW(sys, V("3,2,0")));
  CHECK(is_in_CW(sys, V("8,6,4")));
  CHECK(!is_in_CW(sys, V("0,6,3")));
  CHECK(is_in_CW(sys, V("4,3,1")));
  CHECK_THROWS_AS(is_in_CW(sys, V("1,2")), InvalidArgument);
}

TEST_CASE("firm payoffs") {
  auto bm = balance(testing::example1());
  auto mu = optimal_matching(bm.market()).matching;
  CHECK(firm_payoffs(bm, mu, V("3,2,0")).x == V("9,4"));
  CHECK(firm_payoffs(bm, mu, V("8,6,4")).x == V("0,0"));
  CHECK(firm_payoffs(bm, mu, V("8,6,4")).str() == "(0,0;8,6,4)");

  auto b2 = balance(testing::example2());
  auto mu2 = optimal_matching(b2.market()).matching;
  auto a = firm_payoffs(b2, mu2, V("1,1,1,0"));
  CHECK(a.x == V("0,0"));
  CHECK(a.y == V("1,1,1"));
}

TEST_CASE("core allocations of the all-ones market") {
  auto g = build_game(testing::example2());
  CHECK(!is_core_allocation(g, {V("1,1"), V("1/3,1/3,1/3")}));
  CHECK(is_core_allocation(g, {V("0,0"), V("1,1,1")}));
  auto check = check_core_allocation(g, {V("1,1"), V("1/3,1/3,1/3")});
  CHECK(check.efficient);
  REQUIRE(check.blocking);
  CHECK(coalition_to_string(g, *check.blocking) == "{f1,w1,w2}");
}

TEST_CASE("blocking coalition in the dominant-diagonal market") {
  auto g = build_game(testing::market_b());
  auto check = check_core_allocation(g, {V("0,5"), V("6,4,0")});
  CHECK(check.efficient);
  REQUIRE(check.blocking);
  CHECK(coalition_to_string(g, *check.blocking) == "{f1,w3}");
  CHECK(g[*check.blocking] == 1);
  CHECK(!is_core_allocation(g, {V("0,5"), V("6,4,0")}));
  CHECK_THROWS_AS(is_core_allocation(g, {V("0"), V("6,4,0")}), InvalidArgument);
}

TEST_CASE("competitive equilibrium") {
  auto m = testing::example1();
  auto mu = optimal_matching(m).matching;
  CHECK(is_competitive_equilibrium(m, mu, V("3,2,0")));
  CHECK(!is_competitive_equilibrium(m, mu, V("0,0,0")));
  CHECK(is_competitive_equilibrium(m, mu, V("8,6,4")));

  auto one = Market::from_matrix({{5, 0}}, {1});
  auto mu1 = Matching::from_pairs(1, 2, {{0, 0}});
  CHECK(is_competitive_equilibrium(one, mu1, V("2,0")));
  CHECK(!is_competitive_equilibrium(one, mu1, V("2,1")));
}

TEST_CASE("side-optimal salaries") {
  auto m = testing::example1();
  CHECK(max_competitive_salaries(m) == V("8,6,4"));
  CHECK(min_competitive_salaries(m) == V("3,2,0"));
  CHECK(max_competitive_salaries(testing::market_b()) == V("6,4,5"));
  CHECK(min_competitive_salaries(testing::market_b()) == V("0,0,0"));
  auto null_worker = Market::from_matrix({{3, 0}, {2, 0}}, {1, 1});
  CHECK(max_competitive_salaries(null_worker)[1] == 0);
  CHECK(min_competitive_salaries(Market::from_matrix({{5}}, {1})) == V("0"));
}

TEST_CASE("constant decrease") {
  auto raw = as_raw(testing::example1());
  auto [same, ok] = constant_decrease(raw, 1, R("0"));
  CHECK(surplus_matrix(same) == testing::example1());
  CHECK(ok.valid());

  auto [lower, report] = constant_decrease(raw, 1, R("4"));
  auto m = surplus_matrix(lower);
  CHECK(m.surplus(1, 0) == 3);
  CHECK(m.surplus(1, 1) == 2);
  CHECK(m.surplus(1, 2) == 0);
  CHECK(report.bounded_by_matched);
  // the reference matching stays optimal: 14 + 0 against 8 + 3 + 3 etc.
  CHECK(report.keeps_optimal_matchings);

  auto [clamped, bad] = constant_decrease(raw, 1, R("9"));
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(surplus_matrix(clamped).surplus(1, j) == 0);
  CHECK(!bad.bounded_by_matched);
  CHECK_THROWS_AS(constant_decrease(raw, 1, R("-1")), InvalidArgument);
}

TEST_CASE("largest valid decrease") {
  auto m = testing::example1();
  CHECK(max_valid_decrease(m, 0) == 4);
  CHECK(max_valid_decrease(m, 1) == 4);
  CHECK(max_valid_decrease(Market::from_matrix({{8, 6}, {7, 0}}, {1, 1}), 1) == 5);
  // two identical firms compete for one worker: the minimum salary is 8
  CHECK(max_valid_decrease(Market::from_matrix({{8}, {8}}, {1, 1}), 0) == 0);
  CHECK_THROWS_AS(max_valid_decrease(Market::from_matrix({{8}, {8}}, {1, 1}), 1),
                  InvalidArgument);
  CHECK(max_valid_decrease(Market::from_matrix({{5}}, {1}), 0) == 5);
}

TEST_CASE("membership, core test and equilibrium agree on random markets") {
  testing::RandomMarkets gen(8080);
  for (int round = 0; round < 60; ++round) {
    Market m = gen.balanced(3, 4);
    auto bm = balance(m);
    auto mu = optimal_matching(bm.market()).matching;
    auto sys = core_constraints(bm, mu);
    auto g = build_game(m);
    auto lo = min_competitive_salaries(m);
    auto hi = max_competitive_salaries(m);
    CHECK(sys.contains(lo));
    CHECK(sys.contains(hi));
    // some worker earns nothing at the bottom and some earns everything at the top
    bool zero = false, full = false;
    for (std::size_t j = 0; j < m.num_workers(); ++j) {
      zero = zero || lo[j].is_zero();
      full = full || hi[j] == sys.upper(j);
    }
    CHECK(zero);
    CHECK(full);
    // grid of salary vectors between 0 and the upper bounds
    const std::size_t n = m.num_workers();
    std::vector<int> step(n, 0);
    while (true) {
      SalaryVector y(n);
      for (std::size_t j = 0; j < n; ++j)
        y[j] = sys.upper(j) * Rational(step[j], 2);
      const bool in = sys.contains(y);
      auto alloc = firm_payoffs(bm, mu, y);
      CHECK(in == is_core_allocation(g, alloc));
      CHECK(in == check_core_allocation_full(g, alloc).in_core());
      CHECK(in == is_competitive_equilibrium(m, mu, y));
      CHECK(in == equilibrium_by_subsets(m, mu, y));
      if (in)
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(lo[j] <= y[j]);
          CHECK(y[j] <= hi[j]);
        }
      std::size_t k = 0;
      while (k < n && step[k] == 2)
        step[k++] = 0;
      if (k == n)
        break;
      ++step[k];
    }
  }
}

TEST_CASE("min salaries are invariant under valid decreases") {
  testing::RandomMarkets gen(606);
  for (int round = 0; round < 40; ++round) {
    Market m = gen.balanced(3, 4);
    auto mu = optimal_matching(m).matching;
    auto lo = min_competitive_salaries(m);
    for (std::size_t i0 = 0; i0 < m.num_firms(); ++i0) {
      const Rational cmax = max_valid_decrease(m, i0);
      for (int k = 0; k <= 2; ++k) {
        const Rational c = cmax * Rational(k, 2);
        auto [raw, report] = constant_decrease(as_raw(m), i0, c);
        CHECK(report.valid());
        auto after = min_competitive_salaries(surplus_matrix(raw));
        for (auto j : mu.workers_of(i0))
          CHECK(after[j] == lo[j]);
      }
    }
  }
}
