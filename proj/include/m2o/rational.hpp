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

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace m2o {

/// Exact arbitrary-precision rational number.
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so equality is structural and tight-constraint tests are
/// exact.
class Rational {
public:
  Rational() = default;
  Rational(int value) : q_(static_cast<long>(value)) {}
  Rational(long value) : q_(value) {}
  Rational(long long value) : q_(static_cast<long>(value)) {}
  Rational(unsigned long value) : q_(value) {}
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "8", "-3", "2.25", "143/28", "+1/2". Decimals are converted
  /// exactly. Throws ParseError on anything else.
  static Rational parse(std::string_view text);

  /// Canonical "p/q" text, or "p" when the denominator is 1.
  std::string str() const;
  /// Decimal rendering rounded half away from zero to `digits` places.
  std::string decimal(int digits) const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const;
  Rational abs() const;
  double to_double() const { return q_.get_d(); }
  const mpq_class &raw() const { return q_; }

  Rational &operator+=(const Rational &o) {
    q_ += o.q_;
    return *this;
  }
  Rational &operator-=(const Rational &o) {
    q_ -= o.q_;
    return *this;
  }
  Rational &operator*=(const Rational &o) {
    q_ *= o.q_;
    return *this;
  }
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  friend bool operator==(const Rational &a, const Rational &b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  mpq_class q_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

Rational min(const Rational &a, const Rational &b);
Rational max(const Rational &a, const Rational &b);

/// Comma-separated list of rationals, e.g. "3,2,0" or "1/3, 1/3, 1/3".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Joins values with `sep` using str() or decimal(digits) when digits >= 0.
std::string format_rationals(const std::vector<Rational> &values,
                             std::string_view sep = ",", int digits = -1);

} // namespace m2o

template <> struct std::hash<m2o::Rational> {
  std::size_t operator()(const m2o::Rational &r) const noexcept {
    return r.hash();
  }
};
