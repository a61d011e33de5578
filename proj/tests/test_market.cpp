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

#include "m2o/error.hpp"
#include "m2o/market.hpp"
#include "support.hpp"

using namespace m2o;
using testing::R;

namespace {

RawMarket raw_example1() {
  RawMarket raw;
  raw.firm_ids = {"f1", "f2"};
  raw.capacities = {2, 1};
  raw.worker_ids = {"w1", "w2", "w3"};
  raw.hire_values = RationalMatrix::from_rows({{9, 7, 3}, {8, 7, 4}});
  raw.reservation_values = {1, 1, 0};
  return raw;
}

} // namespace

TEST_CASE("surplus clamps at zero") {
  auto m = surplus_matrix(raw_example1());
  CHECK(m == testing::example1());

  RawMarket raw;
  raw.firm_ids = {"f"};
  raw.capacities = {1};
  raw.worker_ids = {"w"};
  raw.hire_values = RationalMatrix::from_rows({{3}});
  raw.reservation_values = {5};
  CHECK(surplus_matrix(raw).surplus(0, 0) == 0);
  raw.reservation_values = {0};
  raw.hire_values(0, 0) = 8;
  CHECK(surplus_matrix(raw).surplus(0, 0) == 8);
}

TEST_CASE("surplus dominates h - t on random input") {
  testing::RandomMarkets gen(11);
  for (int round = 0; round < 50; ++round) {
    Market base = gen.any();
    RawMarket raw = as_raw(base);
    for (auto &t : raw.reservation_values)
      t = gen.entry();
    Market m = surplus_matrix(raw);
    for (std::size_t i = 0; i < m.num_firms(); ++i)
      for (std::size_t j = 0; j < m.num_workers(); ++j) {
        CHECK(m.surplus(i, j) >= 0);
        CHECK(m.surplus(i, j) >= raw.hire_values(i, j) - raw.reservation_values[j]);
      }
  }
}

TEST_CASE("invalid markets are rejected") {
  auto raw = raw_example1();
  raw.capacities[1] = 0;
  CHECK_THROWS_AS(raw.validate(), InvalidArgument);

  raw = raw_example1();
  raw.worker_ids[2] = "w1";
  CHECK_THROWS_AS(raw.validate(), InvalidArgument);

  raw = raw_example1();
  raw.firm_ids[0] = "__dummy_f0";
  CHECK_THROWS_AS(raw.validate(), InvalidArgument);

  raw = raw_example1();
  raw.hire_values(0, 0) = -1;
  CHECK_THROWS_AS(raw.validate(), InvalidArgument);

  CHECK_THROWS_AS(Market::from_matrix({{1, 2}, {3}}, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(Market::from_matrix({{1, -2}}, {1}), InvalidArgument);
}

TEST_CASE("balance leaves a balanced market alone") {
  auto bm = balance(testing::example1());
  CHECK(bm.market() == testing::example1());
  CHECK(bm.dummy_worker_ids().empty());
  CHECK(!bm.dummy_firm_id());
}

TEST_CASE("balance appends dummy workers") {
  auto bm = balance(testing::example2());
  REQUIRE(bm.market().num_workers() == 4);
  CHECK(bm.dummy_worker_ids().size() == 1);
  CHECK(bm.is_dummy_worker(3));
  CHECK(bm.market().surplus(0, 3) == 0);
  CHECK(bm.market().surplus(1, 3) == 0);
  CHECK(bm.market().is_capacity_balanced());
  CHECK(bm.strip() == testing::example2());
  CHECK(bm.lift_workers(testing::V("1,1,1")) == testing::V("1,1,1,0"));
  CHECK(bm.project_workers(testing::V("1,1,1,0")) == testing::V("1,1,1"));
}

TEST_CASE("balance appends one dummy firm") {
  auto m = Market::from_matrix({{1, 2, 3}, {4, 5, 6}}, {1, 1});
  auto bm = balance(m);
  REQUIRE(bm.market().num_firms() == 3);
  CHECK(bm.dummy_firm_id());
  CHECK(bm.market().capacity(2) == 1);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(bm.market().surplus(2, j) == 0);
  CHECK(bm.strip() == m);
}

TEST_CASE("balance then strip is the identity on random markets") {
  testing::RandomMarkets gen(5);
  for (int round = 0; round < 100; ++round) {
    Market m = gen.any();
    auto bm = balance(m);
    CHECK(bm.market().is_capacity_balanced());
    CHECK(bm.strip() == m);
    for (std::size_t i = 0; i < m.num_firms(); ++i) {
      CHECK(bm.market().capacity(i) == m.capacity(i));
      for (std::size_t j = 0; j < m.num_workers(); ++j)
        CHECK(bm.market().surplus(i, j) == m.surplus(i, j));
    }
  }
}

TEST_CASE("restrict") {
  auto m = testing::example1();
  CHECK(restrict(m, {0, 1}, {0, 1, 2}) == m);
  auto one = restrict(m, {1}, {2});
  CHECK(one.num_firms() == 1);
  CHECK(one.surplus(0, 0) == 4);
  CHECK(one.capacity(0) == 1);
  CHECK(one.firm_id(0) == "f2");
  auto row = restrict(m, {0}, {1, 0});
  CHECK(row.surplus(0, 0) == 8);
  CHECK(row.surplus(0, 1) == 6);
  CHECK(row.capacity(0) == 2);
  CHECK_THROWS_AS(restrict(m, {0, 0}, {}), InvalidArgument);
  CHECK_THROWS_AS(restrict(m, {2}, {}), InvalidArgument);
}
