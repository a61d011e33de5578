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

#include <random>
#include <string>
#include <vector>

#include "m2o/market.hpp"
#include "m2o/rational.hpp"

namespace testing {

using m2o::Market;
using m2o::Rational;

inline Rational R(const char *text) { return Rational::parse(text); }

inline std::vector<Rational> V(const char *text) {
  return m2o::parse_rational_list(text);
}

inline Market example1() {
  return Market::from_matrix({{8, 6, 3}, {7, 6, 4}}, {2, 1});
}

inline Market example2() {
  return Market::from_matrix({{1, 1, 1}, {1, 1, 1}}, {2, 2});
}

inline Market market_b() {
  return Market::from_matrix({{6, 4, 1}, {5, 4, 5}}, {2, 1});
}

inline Market two_by_two() {
  return Market::from_matrix({{4, 3}, {3, 2}}, {2, 1});
}

struct RandomMarkets {
  explicit RandomMarkets(unsigned seed) : rng(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }

  // p/q with q in 1..max_den, value in [0, max_value]; zero with
  // probability about 1/4
  Rational entry(int max_value = 9, int max_den = 3) {
    if (uniform(0, 3) == 0)
      return Rational(0);
    const int q = uniform(1, max_den);
    return Rational(uniform(0, max_value * q), q);
  }

  // Capacity-balanced market with 1..max_firms firms and 1..max_workers
  // workers.
  Market balanced(int max_firms = 3, int max_workers = 5) {
    const int n = uniform(1, max_workers);
    const int m = uniform(1, std::min(max_firms, n));
    std::vector<int> caps(m, 1);
    for (int extra = n - m; extra > 0; --extra)
      ++caps[uniform(0, m - 1)];
    return build(m, n, std::move(caps));
  }

  // Arbitrary capacities in 1..3.
  Market any(int max_firms = 3, int max_workers = 4) {
    const int n = uniform(1, max_workers);
    const int m = uniform(1, max_firms);
    std::vector<int> caps;
    for (int i = 0; i < m; ++i)
      caps.push_back(uniform(1, 3));
    return build(m, n, std::move(caps));
  }

  Market build(int m, int n, std::vector<int> caps) {
    std::vector<std::vector<Rational>> rows(m);
    for (auto &row : rows)
      for (int j = 0; j < n; ++j)
        row.push_back(entry());
    return Market::from_matrix(rows, std::move(caps));
  }

  std::mt19937 rng;
};

} // namespace testing
