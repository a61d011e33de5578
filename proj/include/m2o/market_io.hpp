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
#include <string_view>

#include "m2o/error.hpp"
#include "m2o/kaneko.hpp"
#include "m2o/market.hpp"

namespace m2o {

/// Error in a market file, with the 1-based line and column it refers to
/// (0 when unknown).
class MarketFileError : public ParseError {
public:
  enum class Kind {
    MalformedJson,
    Schema,
    BadNumber,
    NonRectangular,
    NegativeEntry,
    DuplicateId,
    BadCapacity,
  };

  MarketFileError(Kind kind, const std::string &source, std::size_t line,
                  std::size_t column, const std::string &message);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Contents of a market file.
///
/// Job market:
///
///   {"mode": "job-market",
///    "firms": [{"id": "f1", "capacity": 2}, ...],
///    "workers": ["w1", ...],
///    "surplus": [["8", "6", "3"], ...]}          firms x workers
///
/// or, instead of "surplus", "raw": {"hire": [[...]], "reservation": [...]},
/// from which a_ij = max(h_ij - t_j, 0).
///
/// Buyer-seller market:
///
///   {"mode": "buyer-seller",
///    "buyers": ["b1", ...],
///    "sellers": [{"id": "s1", "capacity": 2}, ...],
///    "valuation": [["8", "7"], ...]}             buyers x sellers
///
/// Numbers are strings such as "8", "2.25" or "143/28"; plain JSON numbers
/// are accepted and read exactly from their text.
struct MarketFile {
  enum class Mode { JobMarket, BuyerSeller };
  Mode mode = Mode::JobMarket;
  /// Set for a job market given in raw form.
  std::optional<RawMarket> raw;
  /// Set for a job market.
  std::optional<Market> market;
  /// Set for a buyer-seller market.
  std::optional<BuyerMarket> buyers;
};

/// `source` names the input in diagnostics.
MarketFile parse_market(std::string_view text, const std::string &source = "<input>");
/// Throws MarketFileError (Kind::Schema) when the file cannot be read.
MarketFile read_market_file(const std::string &path);

/// Pretty-printed JSON with every number written as an exact string.
std::string to_json(const Market &m);
std::string to_json(const RawMarket &raw);
std::string to_json(const BuyerMarket &bm);

} // namespace m2o
