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
#include <vector>

#include "m2o/rational.hpp"

namespace m2o {

/// Dense linear program over exact rationals: minimize c.x subject to rows
/// of the form a.x (<=, =, >=) b. Variables are non-negative unless marked
/// free.
struct LinearProgram {
  enum class Sense { LessEqual, Equal, GreaterEqual };

  struct Row {
    std::vector<Rational> coef;
    Sense sense;
    Rational rhs;
  };

  explicit LinearProgram(std::size_t num_vars)
      : objective(num_vars), free(num_vars, false) {}

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<Rational> coef, Sense sense, Rational rhs);

  std::vector<Rational> objective;
  std::vector<bool> free;
  std::vector<Row> rows;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
  /// One multiplier per row with c = sum_r dual_r a_r on the basic columns;
  /// non-negative on >= rows and non-positive on <= rows at an optimum.
  std::vector<Rational> duals;

  bool optimal() const { return status == Status::Optimal; }
};

/// Two-phase tableau simplex with Bland's rule.
LpResult solve(const LinearProgram &lp);

} // namespace m2o
