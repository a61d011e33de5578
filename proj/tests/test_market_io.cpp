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

#include <string>

#include "m2o/market_io.hpp"
#include "support.hpp"

using namespace m2o;
using testing::R;

namespace {

const std::string kDataDir = M2O_DATA_DIR;

MarketFileError::Kind kind_of(const std::string &text) {
  try {
    parse_market(text);
  } catch (const MarketFileError &e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return MarketFileError::Kind::Schema;
}

std::size_t line_of(const std::string &text) {
  try {
    parse_market(text);
  } catch (const MarketFileError &e) {
    return e.line();
  }
  return 0;
}

std::string job(const std::string &firms, const std::string &workers,
                const std::string &surplus) {
  return R"({"mode": "job-market", "firms": )" + firms + R"(, "workers": )" + workers +
         R"(, "surplus": )" + surplus + "}";
}

const std::string kTwoFirms = R"([{"id": "f1", "capacity": 2}, {"id": "f2", "capacity": 1}])";

} // namespace

TEST_CASE("fixture files") {
  auto f = read_market_file(kDataDir + "/example1.json");
  REQUIRE(f.market);
  CHECK(f.mode == MarketFile::Mode::JobMarket);
  CHECK(*f.market == testing::example1());
  CHECK(!f.raw);

  auto raw = read_market_file(kDataDir + "/example1_raw.json");
  REQUIRE(raw.raw);
  CHECK(*raw.market == testing::example1());
  CHECK(raw.raw->hire_values(0, 1) == R("15/2"));

  CHECK(*read_market_file(kDataDir + "/example2.json").market == testing::example2());
  CHECK(*read_market_file(kDataDir + "/market_b.json").market == testing::market_b());
  CHECK(*read_market_file(kDataDir + "/two_by_two.json").market == testing::two_by_two());

  auto k = read_market_file(kDataDir + "/kaneko.json");
  REQUIRE(k.buyers);
  CHECK(k.mode == MarketFile::Mode::BuyerSeller);
  CHECK(k.buyers->valuation(2, 1) == 4);
  CHECK(k.buyers->capacities() == std::vector<int>{2, 1});
  CHECK(!k.market);
}

TEST_CASE("exact numbers") {
  auto f = parse_market(job(kTwoFirms, R"(["w1", "w2"])",
                            R"([["2.25", "143/28"], [2.25, 1e1]])"));
  const Market &m = *f.market;
  CHECK(m.surplus(0, 0) == R("9/4"));
  CHECK(m.surplus(0, 1) == R("143/28"));
  CHECK(m.surplus(1, 0) == R("9/4"));
  CHECK(m.surplus(1, 1) == 10);
  // a decimal that has no exact binary form stays exact
  auto g = parse_market(job(R"([{"id": "f", "capacity": 1}])", R"(["w"])", "[[0.1]]"));
  CHECK(g.market->surplus(0, 0) == R("1/10"));
  auto h = parse_market(job(R"([{"id": "f", "capacity": "3"}])", R"(["w"])", "[[25e-2]]"));
  CHECK(h.market->surplus(0, 0) == R("1/4"));
  CHECK(h.market->capacity(0) == 3);
}

TEST_CASE("distinct diagnostics") {
  using K = MarketFileError::Kind;
  const std::string w3 = R"(["w1", "w2", "w3"])";
  CHECK(kind_of("{\"mode\": ") == K::MalformedJson);
  CHECK(kind_of("") == K::MalformedJson);
  CHECK(kind_of("[1, 2,]") == K::MalformedJson);
  CHECK(kind_of(job(kTwoFirms, w3, R"([["1", "2", "3"], ["1", "2"]])")) == K::NonRectangular);
  CHECK(kind_of(job(kTwoFirms, w3, R"([["1", "2", "3"]])")) == K::NonRectangular);
  CHECK(kind_of(job(kTwoFirms, w3, R"([["1", "2", "3"], ["1", "-2", "3"]])")) ==
        K::NegativeEntry);
  CHECK(kind_of(job(kTwoFirms, R"(["w1", "w2", "w1"])", R"([["1", "2", "3"], ["1", "2", "3"]])")) ==
        K::DuplicateId);
  CHECK(kind_of(job(R"([{"id": "f", "capacity": 1}, {"id": "f", "capacity": 1}])", R"(["w"])",
                    R"([["1"], ["1"]])")) == K::DuplicateId);
  CHECK(kind_of(job(R"([{"id": "f", "capacity": 0}])", R"(["w"])", R"([["1"]])")) ==
        K::BadCapacity);
  CHECK(kind_of(job(R"([{"id": "f", "capacity": 1.5}])", R"(["w"])", R"([["1"]])")) ==
        K::BadCapacity);
  CHECK(kind_of(job(R"([{"id": "f", "capacity": 1}])", R"(["w"])", R"([["1/0"]])")) ==
        K::BadNumber);
  CHECK(kind_of(job(R"([{"id": "f", "capacity": 1}])", R"(["w"])", R"([[true]])")) ==
        K::BadNumber);
  CHECK(kind_of(R"({"mode": "auction"})") == K::Schema);
  CHECK(kind_of(R"({"mode": "job-market", "firms": []})") == K::Schema);
  CHECK(kind_of(R"({"mode": "job-market", "mode": "job-market"})") == K::Schema);
  CHECK(kind_of(R"({"mode": "job-market", "firms": [], "workers": [], "surplus": [],
                    "extra": 1})") == K::Schema);
  CHECK(kind_of(R"({"mode": "job-market", "firms": [], "workers": [], "surplus": [],
                    "raw": {"hire": [], "reservation": []}})") == K::Schema);
  CHECK(kind_of(R"({"mode": "buyer-seller", "buyers": ["b"],
                    "sellers": [{"id": "s", "capacity": 1}], "valuation": [["1", "2"]]})") ==
        K::NonRectangular);
}

TEST_CASE("line context") {
  const std::string text = "{\n"
                           "  \"mode\": \"job-market\",\n"
                           "  \"firms\": [{\"id\": \"f\", \"capacity\": 1}],\n"
                           "  \"workers\": [\"w1\", \"w2\"],\n"
                           "  \"surplus\": [\n"
                           "    [\"1\", \"-2\"]\n"
                           "  ]\n"
                           "}\n";
  CHECK(line_of(text) == 6);
  try {
    parse_market(text, "m.json");
    FAIL("expected an error");
  } catch (const MarketFileError &e) {
    CHECK(e.column() == 11);
    CHECK(std::string(e.what()).rfind("m.json:6:11: negative entry:", 0) == 0);
  }
  CHECK(line_of("{\n\"mode\":\n\n  \"job-market\" \"x\"}") == 4);
  CHECK(line_of("{\n \"mode\": \"job-market\",\n \"firms\": [{\"id\": \"f\", \"capacity\": 1}],\n"
                " \"workers\": [\"w\"],\n \"surplus\": [[\"1\"],\n [\"2\"]]}") == 5);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_market_file(kDataDir + "/no_such_market.json"), MarketFileError);
}

TEST_CASE("round trip") {
  testing::RandomMarkets gen(99);
  for (int round = 0; round < 50; ++round) {
    Market m = gen.any(3, 4);
    CHECK(*parse_market(to_json(m)).market == m);
  }
  auto raw = read_market_file(kDataDir + "/example1_raw.json");
  auto again = parse_market(to_json(*raw.raw));
  CHECK(again.raw->hire_values == raw.raw->hire_values);
  CHECK(again.raw->reservation_values == raw.raw->reservation_values);
  auto k = read_market_file(kDataDir + "/kaneko.json");
  CHECK(to_json(*parse_market(to_json(*k.buyers)).buyers) == to_json(*k.buyers));
}
