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
#include <optional>
#include <string>
#include <vector>

#include "m2o/rational.hpp"

namespace m2o {

/// Ids starting with this prefix are reserved for generated dummy agents.
inline constexpr std::string_view kDummyPrefix = "__dummy";

/// Dense row-major matrix of rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from nested rows; throws InvalidArgument when not rectangular.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Rational &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  RationalMatrix transposed() const;

  friend bool operator==(const RationalMatrix &, const RationalMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Firms with capacities, workers, firm-worker hire values and worker
/// reservation values, all in money units.
struct RawMarket {
  std::vector<std::string> firm_ids;
  std::vector<int> capacities;
  std::vector<std::string> worker_ids;
  RationalMatrix hire_values;            // firms x workers
  std::vector<Rational> reservation_values; // per worker

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

/// Many-to-one job market: capacitated firms, unit-capacity workers and a
/// non-negative surplus matrix (firms x workers).
class Market {
public:
  Market() = default;
  Market(std::vector<std::string> firm_ids, std::vector<int> capacities,
         std::vector<std::string> worker_ids, RationalMatrix surplus);

  /// Convenience constructor with generated ids f1.., w1...
  static Market from_matrix(const std::vector<std::vector<Rational>> &rows,
                            std::vector<int> capacities);

  std::size_t num_firms() const { return capacities_.size(); }
  std::size_t num_workers() const { return worker_ids_.size(); }
  int capacity(std::size_t firm) const { return capacities_[firm]; }
  const std::vector<int> &capacities() const { return capacities_; }
  long total_capacity() const;
  const Rational &surplus(std::size_t firm, std::size_t worker) const {
    return surplus_(firm, worker);
  }
  const RationalMatrix &surplus_matrix() const { return surplus_; }
  const std::string &firm_id(std::size_t firm) const { return firm_ids_[firm]; }
  const std::string &worker_id(std::size_t w) const { return worker_ids_[w]; }
  const std::vector<std::string> &firm_ids() const { return firm_ids_; }
  const std::vector<std::string> &worker_ids() const { return worker_ids_; }
  bool is_capacity_balanced() const {
    return total_capacity() == static_cast<long>(num_workers());
  }

  friend bool operator==(const Market &, const Market &) = default;

private:
  std::vector<std::string> firm_ids_;
  std::vector<int> capacities_;
  std::vector<std::string> worker_ids_;
  RationalMatrix surplus_;
};

/// A market padded with zero-surplus dummy agents so that total firm
/// capacity equals the number of workers. Original agents keep their
/// indices; dummies are appended after them.
class BalancedMarket {
public:
  const Market &market() const { return market_; }
  const Market &original() const { return original_; }

  std::size_t num_original_firms() const { return original_.num_firms(); }
  std::size_t num_original_workers() const { return original_.num_workers(); }
  const std::vector<std::string> &dummy_worker_ids() const {
    return dummy_worker_ids_;
  }
  const std::optional<std::string> &dummy_firm_id() const {
    return dummy_firm_id_;
  }
  bool is_dummy_worker(std::size_t w) const {
    return w >= original_.num_workers();
  }
  bool is_dummy_firm(std::size_t f) const { return f >= original_.num_firms(); }
  /// Balanced index -> original index, or nullopt for a dummy.
  std::optional<std::size_t> original_worker(std::size_t w) const;
  std::optional<std::size_t> original_firm(std::size_t f) const;

  /// Pads a salary vector over original workers with zeros for dummies.
  std::vector<Rational> lift_workers(const std::vector<Rational> &y) const;
  /// Drops dummy-worker coordinates.
  std::vector<Rational> project_workers(const std::vector<Rational> &y) const;

  /// Drops dummy rows/columns; equals original().
  Market strip() const;

private:
  friend BalancedMarket balance(const Market &m);
  Market original_;
  Market market_;
  std::vector<std::string> dummy_worker_ids_;
  std::optional<std::string> dummy_firm_id_;
};

/// a_ij = max{h_ij - t_j, 0}.
Market surplus_matrix(const RawMarket &raw);

/// Appends zero dummy workers (total capacity > n) or one zero dummy firm
/// of capacity n - total capacity (total capacity < n).
BalancedMarket balance(const Market &m);

/// Submarket on the given firm and worker index sets (kept in ascending
/// index order).
Market restrict(const Market &m, const std::vector<std::size_t> &firms,
                const std::vector<std::size_t> &workers);

/// Treats a surplus matrix as hire values with zero reservation values.
RawMarket as_raw(const Market &m);

} // namespace m2o
