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

#include "m2o/market.hpp"

#include <algorithm>
#include <set>

#include "m2o/error.hpp"

namespace m2o {

namespace {

void check_ids(const std::vector<std::string> &ids, const char *side) {
  std::set<std::string> seen;
  for (const auto &id : ids) {
    if (id.empty())
      throw InvalidArgument(std::string("empty ") + side + " id");
    if (id.rfind(kDummyPrefix, 0) == 0)
      throw InvalidArgument(std::string(side) + " id \"" + id +
                            "\" uses the reserved prefix " +
                            std::string(kDummyPrefix));
    if (!seen.insert(id).second)
      throw InvalidArgument(std::string("duplicate ") + side + " id \"" + id +
                            "\"");
  }
}

void check_capacities(const std::vector<int> &caps) {
  for (std::size_t i = 0; i < caps.size(); ++i)
    if (caps[i] < 1)
      throw InvalidArgument("capacity of firm " + std::to_string(i + 1) +
                            " must be a positive integer");
}

std::vector<std::string> numbered(char prefix, std::size_t count) {
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < count; ++k)
    ids.push_back(std::string(1, prefix) + std::to_string(k + 1));
  return ids;
}

} // namespace

RationalMatrix
RationalMatrix::from_rows(const std::vector<std::vector<Rational>> &rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InvalidArgument("matrix row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) +
                            " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

void RawMarket::validate() const {
  check_ids(firm_ids, "firm");
  check_ids(worker_ids, "worker");
  if (capacities.size() != firm_ids.size())
    throw InvalidArgument("one capacity per firm required");
  check_capacities(capacities);
  if (hire_values.rows() != firm_ids.size() ||
      hire_values.cols() != worker_ids.size())
    throw InvalidArgument("hire value matrix must be firms x workers");
  if (reservation_values.size() != worker_ids.size())
    throw InvalidArgument("one reservation value per worker required");
  for (std::size_t i = 0; i < hire_values.rows(); ++i)
    for (std::size_t j = 0; j < hire_values.cols(); ++j)
      if (hire_values(i, j).sign() < 0)
        throw InvalidArgument("negative hire value");
  for (const auto &t : reservation_values)
    if (t.sign() < 0)
      throw InvalidArgument("negative reservation value");
}

Market::Market(std::vector<std::string> firm_ids, std::vector<int> capacities,
               std::vector<std::string> worker_ids, RationalMatrix surplus)
    : firm_ids_(std::move(firm_ids)), capacities_(std::move(capacities)),
      worker_ids_(std::move(worker_ids)), surplus_(std::move(surplus)) {
  if (capacities_.size() != firm_ids_.size())
    throw InvalidArgument("one capacity per firm required");
  check_capacities(capacities_);
  if (surplus_.rows() != firm_ids_.size() ||
      surplus_.cols() != worker_ids_.size())
    throw InvalidArgument("surplus matrix must be firms x workers");
  for (std::size_t i = 0; i < surplus_.rows(); ++i)
    for (std::size_t j = 0; j < surplus_.cols(); ++j)
      if (surplus_(i, j).sign() < 0)
        throw InvalidArgument("negative surplus entry at (" +
                              std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
}

Market Market::from_matrix(const std::vector<std::vector<Rational>> &rows,
                           std::vector<int> capacities) {
  auto matrix = RationalMatrix::from_rows(rows);
  if (rows.empty())
    matrix = RationalMatrix(0, 0);
  return Market(numbered('f', matrix.rows()), std::move(capacities),
                numbered('w', matrix.cols()), std::move(matrix));
}

long Market::total_capacity() const {
  long total = 0;
  for (int r : capacities_)
    total += r;
  return total;
}

std::optional<std::size_t> BalancedMarket::original_worker(std::size_t w) const {
  if (is_dummy_worker(w))
    return std::nullopt;
  return w;
}

std::optional<std::size_t> BalancedMarket::original_firm(std::size_t f) const {
  if (is_dummy_firm(f))
    return std::nullopt;
  return f;
}

std::vector<Rational>
BalancedMarket::lift_workers(const std::vector<Rational> &y) const {
  if (y.size() != num_original_workers())
    throw InvalidArgument("expected " + std::to_string(num_original_workers()) +
                          " worker payoffs, got " + std::to_string(y.size()));
  std::vector<Rational> out = y;
  out.resize(market_.num_workers());
  return out;
}

std::vector<Rational>
BalancedMarket::project_workers(const std::vector<Rational> &y) const {
  if (y.size() != market_.num_workers())
    throw InvalidArgument("expected " + std::to_string(market_.num_workers()) +
                          " worker payoffs, got " + std::to_string(y.size()));
  return {y.begin(), y.begin() + static_cast<long>(num_original_workers())};
}

Market BalancedMarket::strip() const {
  std::vector<std::size_t> firms(num_original_firms());
  std::vector<std::size_t> workers(num_original_workers());
  for (std::size_t i = 0; i < firms.size(); ++i)
    firms[i] = i;
  for (std::size_t j = 0; j < workers.size(); ++j)
    workers[j] = j;
  return restrict(market_, firms, workers);
}

Market surplus_matrix(const RawMarket &raw) {
  raw.validate();
  RationalMatrix a(raw.firm_ids.size(), raw.worker_ids.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) = max(raw.hire_values(i, j) - raw.reservation_values[j], 0);
  return Market(raw.firm_ids, raw.capacities, raw.worker_ids, std::move(a));
}

BalancedMarket balance(const Market &m) {
  BalancedMarket bm;
  bm.original_ = m;
  const long total = m.total_capacity();
  const long n = static_cast<long>(m.num_workers());
  if (total == n) {
    bm.market_ = m;
    return bm;
  }

  auto firm_ids = m.firm_ids();
  auto caps = m.capacities();
  auto worker_ids = m.worker_ids();
  if (total > n) {
    for (long k = 0; k < total - n; ++k) {
      bm.dummy_worker_ids_.push_back(std::string(kDummyPrefix) + "_w" +
                                     std::to_string(k + 1));
      worker_ids.push_back(bm.dummy_worker_ids_.back());
    }
  } else {
    bm.dummy_firm_id_ = std::string(kDummyPrefix) + "_f0";
    firm_ids.push_back(*bm.dummy_firm_id_);
    caps.push_back(static_cast<int>(n - total));
  }
  RationalMatrix a(firm_ids.size(), worker_ids.size());
  for (std::size_t i = 0; i < m.num_firms(); ++i)
    for (std::size_t j = 0; j < m.num_workers(); ++j)
      a(i, j) = m.surplus(i, j);
  bm.market_ = Market(std::move(firm_ids), std::move(caps),
                      std::move(worker_ids), std::move(a));
  return bm;
}

Market restrict(const Market &m, const std::vector<std::size_t> &firms,
                const std::vector<std::size_t> &workers) {
  std::vector<std::size_t> fs = firms, ws = workers;
  std::sort(fs.begin(), fs.end());
  std::sort(ws.begin(), ws.end());
  if (std::adjacent_find(fs.begin(), fs.end()) != fs.end() ||
      std::adjacent_find(ws.begin(), ws.end()) != ws.end())
    throw InvalidArgument("restrict: repeated index");
  if ((!fs.empty() && fs.back() >= m.num_firms()) ||
      (!ws.empty() && ws.back() >= m.num_workers()))
    throw InvalidArgument("restrict: index out of range");

  std::vector<std::string> fids, wids;
  std::vector<int> caps;
  RationalMatrix a(fs.size(), ws.size());
  for (std::size_t r = 0; r < fs.size(); ++r) {
    fids.push_back(m.firm_id(fs[r]));
    caps.push_back(m.capacity(fs[r]));
    for (std::size_t c = 0; c < ws.size(); ++c)
      a(r, c) = m.surplus(fs[r], ws[c]);
  }
  for (auto w : ws)
    wids.push_back(m.worker_id(w));
  return Market(std::move(fids), std::move(caps), std::move(wids),
                std::move(a));
}

RawMarket as_raw(const Market &m) {
  RawMarket raw;
  raw.firm_ids = m.firm_ids();
  raw.capacities = m.capacities();
  raw.worker_ids = m.worker_ids();
  raw.hire_values = m.surplus_matrix();
  raw.reservation_values.assign(m.num_workers(), Rational(0));
  return raw;
}

} // namespace m2o
