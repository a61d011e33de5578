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
#include <functional>
#include <set>

#include "m2o/error.hpp"
#include "m2o/maxmin.hpp"
#include "m2o/tight_digraph.hpp"
#include "support.hpp"

using namespace m2o;
using testing::R;
using testing::V;

namespace {

using ArcList = std::vector<std::pair<std::size_t, std::size_t>>;

ArcList arcs_of(const TightDigraph &d) {
  ArcList out;
  for (const auto &a : d.arcs())
    out.emplace_back(a.tail, a.head);
  return out;
}

TightDigraph digraph_at(const char *y) {
  auto bm = balance(testing::example1());
  return build_tight_digraph(core_constraints(bm), V(y));
}

bool has_cycle(const TightDigraph &d) {
  const std::size_t n = d.num_nodes();
  std::vector<int> state(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto &a : d.arcs())
    out[a.tail].push_back(a.head);
  std::function<bool(std::size_t)> visit = [&](std::size_t u) {
    state[u] = 1;
    for (auto v : out[u]) {
      if (state[v] == 1 || (state[v] == 0 && visit(v)))
        return true;
    }
    state[u] = 2;
    return false;
  };
  for (std::size_t u = 0; u < n; ++u)
    if (state[u] == 0 && visit(u))
      return true;
  return false;
}

} // namespace

TEST_CASE("tight arcs at four extreme points") {
  CHECK(arcs_of(digraph_at("3,2,0")) == ArcList{{0, 3}, {3, 1}, {3, 2}});
  CHECK(arcs_of(digraph_at("8,6,4")) == ArcList{{1, 0}, {2, 0}, {3, 0}, {3, 2}});
  CHECK(arcs_of(digraph_at("3,3,0")) == ArcList{{0, 3}, {2, 3}, {3, 1}});
  CHECK(arcs_of(digraph_at("7,6,4")) == ArcList{{2, 0}, {3, 0}, {3, 1}, {3, 2}});
}

TEST_CASE("minimum, maximum and extreme predicates") {
  auto bm = balance(testing::example1());
  auto sys = core_constraints(bm);
  const char *extremes[] = {"8,6,4", "8,6,3", "8,5,3", "7,6,4", "6,6,3",
                            "3,2,0", "5,2,0", "5,3,0", "3,3,0"};
  for (const char *y : extremes) {
    CAPTURE(y);
    auto d = build_tight_digraph(sys, V(y));
    CHECK(is_extreme(d));
    CHECK(is_minimum(d) == (std::string(y) == "3,2,0"));
    CHECK(is_maximum(d) == (std::string(y) == "8,6,4"));
  }
  auto inner = build_tight_digraph(sys, V("4,3,1"));
  CHECK(arcs_of(inner) == ArcList{{3, 1}, {3, 2}});
  CHECK(!is_extreme(inner));
  CHECK(!is_minimum(inner));
  CHECK(!is_maximum(inner));
  // on a facet but not a vertex
  CHECK(!is_extreme(build_tight_digraph(sys, V("8,6,7/2"))));
  CHECK_THROWS_AS(build_tight_digraph(sys, V("0,6,3")), InvalidArgument);
}

TEST_CASE("market-level overloads") {
  auto bm = balance(testing::example1());
  auto mu = optimal_matching(bm.market()).matching;
  CHECK(is_minimum(bm, mu, V("3,2,0")));
  CHECK(is_maximum(bm, mu, V("8,6,4")));
  CHECK(is_extreme(bm, mu, V("6,6,3")));
  CHECK(!is_extreme(bm, mu, V("4,3,1")));
}

TEST_CASE("reachability") {
  auto d = digraph_at("3,2,0");
  auto fwd = d.reachable(0);
  CHECK(std::all_of(fwd.begin(), fwd.end(), [](char c) { return c; }));
  auto back = d.reachable(0, true);
  CHECK(back == std::vector<char>{1, 0, 0, 0});
  CHECK(d.has_arc(3, 1));
  CHECK(!d.has_arc(1, 3));
}

TEST_CASE("dot output") {
  auto d = digraph_at("3,2,0");
  CHECK(to_dot(d) == "digraph tight {\n"
                     "  0 [label=\"0\"];\n"
                     "  1 [label=\"1\"];\n"
                     "  2 [label=\"2\"];\n"
                     "  3 [label=\"3\"];\n"
                     "  0 -> 3;\n"
                     "  3 -> 1;\n"
                     "  3 -> 2;\n"
                     "}\n");
}

TEST_CASE("connectivity matches the vertex oracle on random markets") {
  testing::RandomMarkets gen(515);
  for (int round = 0; round < 60; ++round) {
    Market m = gen.balanced(3, 4);
    auto bm = balance(m);
    auto sys = core_constraints(bm);
    auto vertices = brute_force_vertices(sys);
    const std::set<SalaryVector> vset(vertices.begin(), vertices.end());
    for (const auto &y : vertices)
      CHECK(is_extreme(build_tight_digraph(sys, y)));
    // the midpoint of two distinct vertices is never a vertex
    for (std::size_t a = 0; a < vertices.size(); ++a)
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        SalaryVector mid(vertices[a].size());
        for (std::size_t j = 0; j < mid.size(); ++j)
          mid[j] = (vertices[a][j] + vertices[b][j]) * Rational(1, 2);
        CHECK(!vset.count(mid));
        CHECK(!is_extreme(build_tight_digraph(sys, mid)));
      }
    // exactly one vertex is minimum and one maximum
    std::size_t mins = 0, maxs = 0;
    for (const auto &y : vertices) {
      auto d = build_tight_digraph(sys, y);
      if (is_minimum(d)) {
        ++mins;
        CHECK(y == min_competitive_salaries(m));
      }
      if (is_maximum(d)) {
        ++maxs;
        CHECK(y == max_competitive_salaries(m));
      }
    }
    CHECK(mins == 1);
    CHECK(maxs == 1);
  }
}

TEST_CASE("unique optimal matching: tight digraphs at vertices are acyclic") {
  testing::RandomMarkets gen(2718);
  int checked = 0;
  for (int round = 0; round < 120; ++round) {
    Market m = gen.balanced(3, 4);
    if (all_optimal_matchings(m).size() != 1)
      continue;
    auto sys = core_constraints(balance(m));
    for (const auto &y : brute_force_vertices(sys)) {
      CHECK(!has_cycle(build_tight_digraph(sys, y)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("node 0 may have both in- and out-arcs at a vertex") {
  // one firm hiring both workers: the core is the box [0,5]^2 and at the
  // vertex (0,5) node 0 has an out-arc to worker 1 and an in-arc from worker 2
  auto m = Market::from_matrix({{5, 5}}, {2});
  REQUIRE(all_optimal_matchings(m).size() == 1);
  auto sys = core_constraints(balance(m));
  auto d = build_tight_digraph(sys, V("0,5"));
  CHECK(is_extreme(d));
  CHECK(arcs_of(d) == ArcList{{0, 1}, {2, 0}});

  // two firms, no zero-surplus pair inside the matching
  auto two = Market::from_matrix({{9, R("13/2"), 0}, {0, 4, 3}}, {1, 2});
  REQUIRE(all_optimal_matchings(two).size() == 1);
  auto sys2 = core_constraints(balance(two));
  auto d2 = build_tight_digraph(sys2, V("0,0,3"));
  CHECK(is_extreme(d2));
  CHECK(arcs_of(d2) == ArcList{{0, 1}, {0, 2}, {3, 0}, {3, 1}});
}
