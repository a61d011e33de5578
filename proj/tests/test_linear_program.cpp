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

#include <optional>

#include "m2o/error.hpp"
#include "m2o/linear_program.hpp"
#include "support.hpp"

using namespace m2o;
using Sense = LinearProgram::Sense;
using testing::R;

namespace {

// Two non-negative variables: best objective over every intersection of two
// boundary lines (constraint rows and the axes).
std::optional<Rational> vertex_oracle(const LinearProgram &lp) {
  std::vector<std::pair<std::vector<Rational>, Rational>> lines;
  for (const auto &r : lp.rows)
    lines.push_back({r.coef, r.rhs});
  lines.push_back({{1, 0}, 0});
  lines.push_back({{0, 1}, 0});
  auto feasible = [&](const Rational &x, const Rational &y) {
    if (x.sign() < 0 || y.sign() < 0)
      return false;
    for (const auto &r : lp.rows) {
      const Rational lhs = r.coef[0] * x + r.coef[1] * y;
      if ((r.sense == Sense::LessEqual && lhs > r.rhs) ||
          (r.sense == Sense::GreaterEqual && lhs < r.rhs) ||
          (r.sense == Sense::Equal && lhs != r.rhs))
        return false;
    }
    return true;
  };
  std::optional<Rational> best;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const auto &[p, e] = lines[a];
      const auto &[q, f] = lines[b];
      const Rational det = p[0] * q[1] - p[1] * q[0];
      if (det.is_zero())
        continue;
      const Rational x = (e * q[1] - p[1] * f) / det;
      const Rational y = (p[0] * f - e * q[0]) / det;
      if (!feasible(x, y))
        continue;
      Rational val = lp.objective[0] * x + lp.objective[1] * y;
      if (!best || val < *best)
        best = val;
    }
  return best;
}

} // namespace

TEST_CASE("textbook program") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
  LinearProgram lp(2);
  lp.objective = {-3, -5};
  lp.add_row({1, 0}, Sense::LessEqual, 4);
  lp.add_row({0, 2}, Sense::LessEqual, 12);
  lp.add_row({3, 2}, Sense::LessEqual, 18);
  auto res = solve(lp);
  REQUIRE(res.optimal());
  CHECK(res.value == -36);
  CHECK(res.x == std::vector<Rational>{2, 6});
  CHECK(res.duals == std::vector<Rational>{0, R("-3/2"), -1});
}

TEST_CASE("equality rows, free variables and negative right-hand sides") {
  // min x + y, x - y = -3, x free, y >= 0, y <= 5
  LinearProgram lp(2);
  lp.free[0] = true;
  lp.objective = {1, 1};
  lp.add_row({1, -1}, Sense::Equal, -3);
  lp.add_row({0, 1}, Sense::LessEqual, 5);
  auto res = solve(lp);
  REQUIRE(res.optimal());
  CHECK(res.value == -3);
  CHECK(res.x == std::vector<Rational>{-3, 0});
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram bad(1);
  bad.add_row({1}, Sense::GreaterEqual, 2);
  bad.add_row({1}, Sense::LessEqual, 1);
  CHECK(solve(bad).status == LpResult::Status::Infeasible);

  LinearProgram open(2);
  open.objective = {-1, 0};
  open.add_row({1, -1}, Sense::LessEqual, 1);
  CHECK(solve(open).status == LpResult::Status::Unbounded);

  CHECK_THROWS_AS(bad.add_row({1, 2}, Sense::Equal, 0), InvalidArgument);
}

TEST_CASE("redundant and degenerate rows") {
  LinearProgram lp(3);
  lp.objective = {1, 2, 3};
  lp.add_row({1, 1, 1}, Sense::Equal, 1);
  lp.add_row({2, 2, 2}, Sense::Equal, 2);
  lp.add_row({1, 0, 0}, Sense::LessEqual, 1);
  lp.add_row({0, 1, 1}, Sense::GreaterEqual, 0);
  auto res = solve(lp);
  REQUIRE(res.optimal());
  CHECK(res.value == 1);
  CHECK(res.x == std::vector<Rational>{1, 0, 0});
}

TEST_CASE("random two-variable programs against vertex enumeration") {
  testing::RandomMarkets gen(17);
  int solved = 0;
  for (int round = 0; round < 300; ++round) {
    LinearProgram lp(2);
    lp.objective = {gen.uniform(-5, 5), gen.uniform(-5, 5)};
    const int rows = gen.uniform(1, 4);
    for (int r = 0; r < rows; ++r) {
      const auto sense = static_cast<Sense>(gen.uniform(0, 2));
      lp.add_row({gen.uniform(-4, 4), gen.uniform(-4, 4)}, sense,
                 Rational(gen.uniform(-6, 12), gen.uniform(1, 3)));
    }
    // keep the region bounded
    lp.add_row({1, 1}, Sense::LessEqual, 20);
    const auto res = solve(lp);
    const auto oracle = vertex_oracle(lp);
    CHECK(res.optimal() == oracle.has_value());
    if (!res.optimal() || !oracle)
      continue;
    ++solved;
    CHECK(res.value == *oracle);
    // strong duality and dual sign conditions
    Rational dual_obj;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
      dual_obj += res.duals[r] * lp.rows[r].rhs;
      if (lp.rows[r].sense == Sense::GreaterEqual)
        CHECK(res.duals[r].sign() >= 0);
      if (lp.rows[r].sense == Sense::LessEqual)
        CHECK(res.duals[r].sign() <= 0);
    }
    CHECK(dual_obj == res.value);
    for (std::size_t v = 0; v < 2; ++v) {
      Rational reduced = lp.objective[v];
      for (std::size_t r = 0; r < lp.rows.size(); ++r)
        reduced -= res.duals[r] * lp.rows[r].coef[v];
      CHECK(reduced.sign() >= 0);
    }
  }
  CHECK(solved > 100);
}
