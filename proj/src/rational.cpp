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

#include "m2o/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "m2o/error.hpp"

namespace m2o {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Rational::Rational(long num, long den) {
  if (den == 0)
    throw InvalidArgument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("not a rational: \"" + original + "\"");
    mpz_class d(std::string(den), 10);
    if (d == 0)
      throw ParseError("zero denominator: \"" + original + "\"");
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw ParseError("not a rational: \"" + original + "\"");
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k)
      den *= 10;
    q = mpq_class(mpz_class(digits, 10), den);
  } else {
    if (!all_digits(s))
      throw ParseError("not a rational: \"" + original + "\"");
    q = mpq_class(mpz_class(std::string(s), 10));
  }
  q.canonicalize();
  if (negative)
    q = -q;
  return Rational(q);
}

std::string Rational::str() const {
  if (q_.get_den() == 1)
    return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0)
    return str();
  mpz_class scale = 1;
  for (int k = 0; k < digits; ++k)
    scale *= 10;
  mpq_class a = abs().q_ * scale;
  // round half away from zero
  mpz_class scaled = (a.get_num() * 2 + a.get_den()) / (a.get_den() * 2);
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && scaled != 0)
    body.insert(0, "-");
  return body;
}

bool Rational::is_integer() const { return q_.get_den() == 1; }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational &Rational::operator/=(const Rational &o) {
  if (o.is_zero())
    throw InvalidArgument("division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(q_.get_num().get_str(16));
  h ^= std::hash<std::string>{}(q_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return h;
}

std::ostream &operator<<(std::ostream &os, const Rational &r) {
  return os << r.str();
}

Rational min(const Rational &a, const Rational &b) { return b < a ? b : a; }
Rational max(const Rational &a, const Rational &b) { return a < b ? b : a; }

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - start);
    if (trim(piece).empty())
      throw ParseError("empty entry in list \"" + std::string(text) + "\"");
    out.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

std::string format_rationals(const std::vector<Rational> &values,
                             std::string_view sep, int digits) {
  std::ostringstream os;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k)
      os << sep;
    os << values[k].decimal(digits);
  }
  return os.str();
}

} // namespace m2o
