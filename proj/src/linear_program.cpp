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

#include "m2o/linear_program.hpp"

#include <optional>

#include "m2o/error.hpp"

namespace m2o {

void LinearProgram::add_row(std::vector<Rational> coef, Sense sense, Rational rhs) {
  if (coef.size() != num_vars())
    throw InvalidArgument("row has " + std::to_string(coef.size()) +
                          " coefficients, expected " + std::to_string(num_vars()));
  rows.push_back({std::move(coef), sense, std::move(rhs)});
}

namespace {

// Tableau rows 0..m-1 hold [B^-1 A | B^-1 b]; the cost row holds reduced
// costs and minus the objective value in the last column.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows, std::vector<Rational>(cols + 1)),
        cost_(cols + 1), basis_(rows) {}

  Rational &at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational &rhs(std::size_t r) { return t_[r][n_]; }
  std::vector<std::size_t> &basis() { return basis_; }
  const Rational &reduced(std::size_t c) const { return cost_[c]; }
  Rational value() const { return -cost_[n_]; }

  void set_cost(const std::vector<Rational> &c) {
    for (std::size_t k = 0; k < n_; ++k)
      cost_[k] = c[k];
    cost_[n_] = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational cb = c[basis_[r]];
      if (cb.is_zero())
        continue;
      for (std::size_t k = 0; k <= n_; ++k)
        if (!t_[r][k].is_zero())
          cost_[k] -= cb * t_[r][k];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto &v : t_[r])
      if (!v.is_zero())
        v = v / p;
    auto eliminate = [&](std::vector<Rational> &row) {
      const Rational f = row[c];
      if (f.is_zero())
        return;
      for (std::size_t k = 0; k <= n_; ++k)
        if (!t_[r][k].is_zero())
          row[k] -= f * t_[r][k];
    };
    for (std::size_t q = 0; q < m_; ++q)
      if (q != r)
        eliminate(t_[q]);
    eliminate(cost_);
    basis_[r] = c;
  }

  // Bland's rule over columns [0, limit). Returns false when unbounded.
  bool run(std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < limit; ++c)
        if (cost_[c].sign() < 0) {
          enter = c;
          break;
        }
      if (!enter)
        return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][*enter].sign() <= 0)
          continue;
        Rational ratio = t_[r][n_] / t_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave)
        return false;
      pivot(*leave, *enter);
    }
  }

private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

} // namespace

LpResult solve(const LinearProgram &lp) {
  using Sense = LinearProgram::Sense;
  const std::size_t nv = lp.num_vars();
  const std::size_t m = lp.rows.size();

  // Columns: structural (free variables get a second, negated column), one
  // slack per inequality row, one artificial per row.
  std::vector<std::size_t> pos(nv), neg(nv, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    pos[v] = cols++;
    if (lp.free[v])
      neg[v] = cols++;
  }
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r)
    if (lp.rows[r].sense != Sense::Equal)
      slack[r] = cols++;
  const std::size_t first_art = cols;
  cols += m;

  Tableau tab(m, cols);
  std::vector<int> flip(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto &row = lp.rows[r];
    flip[r] = row.rhs.sign() < 0 ? -1 : 1;
    const Rational f(flip[r]);
    for (std::size_t v = 0; v < nv; ++v) {
      if (row.coef[v].is_zero())
        continue;
      tab.at(r, pos[v]) = f * row.coef[v];
      if (neg[v] != SIZE_MAX)
        tab.at(r, neg[v]) = -(f * row.coef[v]);
    }
    if (row.sense == Sense::LessEqual)
      tab.at(r, slack[r]) = f;
    else if (row.sense == Sense::GreaterEqual)
      tab.at(r, slack[r]) = -f;
    tab.at(r, first_art + r) = 1;
    tab.rhs(r) = f * row.rhs;
    tab.basis()[r] = first_art + r;
  }

  LpResult res;
  std::vector<Rational> phase1(cols);
  for (std::size_t r = 0; r < m; ++r)
    phase1[first_art + r] = 1;
  tab.set_cost(phase1);
  tab.run(cols);
  if (tab.value().sign() > 0) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // Drive zero-level artificials out of the basis where possible; rows
  // where that fails are redundant.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis()[r] < first_art)
      continue;
    for (std::size_t c = 0; c < first_art; ++c)
      if (!tab.at(r, c).is_zero()) {
        tab.pivot(r, c);
        break;
      }
  }

  std::vector<Rational> phase2(cols);
  for (std::size_t v = 0; v < nv; ++v) {
    phase2[pos[v]] = lp.objective[v];
    if (neg[v] != SIZE_MAX)
      phase2[neg[v]] = -lp.objective[v];
  }
  tab.set_cost(phase2);
  if (!tab.run(first_art)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }

  res.status = LpResult::Status::Optimal;
  res.value = tab.value();
  std::vector<Rational> col_value(cols);
  for (std::size_t r = 0; r < m; ++r)
    col_value[tab.basis()[r]] = tab.rhs(r);
  res.x.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    res.x[v] = col_value[pos[v]];
    if (neg[v] != SIZE_MAX)
      res.x[v] -= col_value[neg[v]];
  }
  // The artificial column of row r is e_r, so its reduced cost is -y_r for
  // the flipped row.
  res.duals.resize(m);
  for (std::size_t r = 0; r < m; ++r)
    res.duals[r] = -tab.reduced(first_art + r) * Rational(flip[r]);
  return res;
}

} // namespace m2o
