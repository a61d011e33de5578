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

#include "m2o/market_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

namespace m2o {

namespace {

using Kind = MarketFileError::Kind;

std::string kind_label(Kind kind) {
  switch (kind) {
  case Kind::MalformedJson:
    return "malformed JSON";
  case Kind::Schema:
    return "invalid market";
  case Kind::BadNumber:
    return "bad number";
  case Kind::NonRectangular:
    return "non-rectangular matrix";
  case Kind::NegativeEntry:
    return "negative entry";
  case Kind::DuplicateId:
    return "duplicate id";
  case Kind::BadCapacity:
    return "bad capacity";
  }
  return "error";
}

std::string where(const std::string &source, std::size_t line, std::size_t column) {
  std::string out = source;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (column > 0)
      out += ":" + std::to_string(column);
  }
  return out;
}

// Input iterator that counts the characters handed to the JSON lexer, so
// SAX events can be mapped back to a position in the text.
class CountingIterator {
public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char *;
  using reference = const char &;

  CountingIterator(const char *p, std::size_t *consumed) : p_(p), consumed_(consumed) {}
  reference operator*() const { return *p_; }
  CountingIterator &operator++() {
    ++p_;
    ++*consumed_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator &o) const { return p_ == o.p_; }

private:
  const char *p_;
  std::size_t *consumed_;
};

struct Node {
  enum class Type { Null, Boolean, Number, String, Array, Object };
  Type type = Type::Null;
  // number token text or string value
  std::string text;
  bool boolean = false;
  std::vector<Node> items;
  std::vector<std::pair<std::string, Node>> members;
  std::size_t offset = 0;
};

bool number_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-';
}

class Builder {
public:
  using json = nlohmann::json;

  Builder(std::string_view text, const std::size_t &consumed, const std::string &source)
      : text_(text), consumed_(consumed), source_(source) {}

  bool null() { return add(leaf(Node::Type::Null)); }
  bool boolean(bool b) {
    Node n = leaf(Node::Type::Boolean);
    n.boolean = b;
    return add(std::move(n));
  }
  bool number_integer(json::number_integer_t) { return number(); }
  bool number_unsigned(json::number_unsigned_t) { return number(); }
  bool number_float(json::number_float_t, const std::string &) { return number(); }
  bool string(std::string &s) {
    Node n = leaf(Node::Type::String);
    n.text = s;
    return add(std::move(n));
  }
  bool binary(json::binary_t &) { return false; }
  bool start_object(std::size_t) { return open(Node::Type::Object); }
  bool key(std::string &k) {
    Node &obj = *stack_.back();
    for (const auto &m : obj.members)
      if (m.first == k)
        fail(Kind::Schema, token_start(), "duplicate key \"" + k + "\"");
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) { return open(Node::Type::Array); }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string &,
                   const nlohmann::detail::exception &ex) {
    std::string msg = ex.what();
    // drop the library's own prefix and position
    if (auto col = msg.find("column "); col != std::string::npos)
      if (auto colon = msg.find(": ", col); colon != std::string::npos)
        msg = msg.substr(colon + 2);
    fail(Kind::MalformedJson, position > 0 ? position - 1 : 0, msg);
    return false;
  }

  Node take_root() { return std::move(root_); }

  [[noreturn]] void fail(Kind kind, std::size_t offset, const std::string &message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < offset && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw MarketFileError(kind, source_, line, column, message);
  }

private:
  // Start of the token that ends at the current read position.
  std::size_t token_start() const {
    std::size_t end = std::min(consumed_, text_.size());
    if (end == 0)
      return 0;
    const char last = text_[end - 1];
    if (last == '"') {
      std::size_t p = end - 1;
      while (p > 0) {
        --p;
        if (text_[p] != '"')
          continue;
        std::size_t slashes = 0;
        while (p >= slashes + 1 && text_[p - slashes - 1] == '\\')
          ++slashes;
        if (slashes % 2 == 0)
          return p;
      }
      return 0;
    }
    if (last == '{' || last == '[')
      return end - 1;
    std::size_t p = end;
    // a number is only known to end after its terminator has been read
    if (!number_char(last))
      --p;
    while (p > 0 && number_char(text_[p - 1]))
      --p;
    return p;
  }

  Node leaf(Node::Type type) const {
    Node n;
    n.type = type;
    n.offset = token_start();
    return n;
  }

  bool number() {
    Node n = leaf(Node::Type::Number);
    std::size_t end = n.offset;
    while (end < text_.size() && number_char(text_[end]))
      ++end;
    n.text = std::string(text_.substr(n.offset, end - n.offset));
    return add(std::move(n));
  }

  bool open(Node::Type type) {
    Node n = leaf(type);
    Node *placed = place(std::move(n));
    stack_.push_back(placed);
    return true;
  }

  bool add(Node n) {
    place(std::move(n));
    return true;
  }

  Node *place(Node n) {
    if (stack_.empty()) {
      root_ = std::move(n);
      return &root_;
    }
    Node &parent = *stack_.back();
    if (parent.type == Node::Type::Array) {
      parent.items.push_back(std::move(n));
      return &parent.items.back();
    }
    parent.members.emplace_back(key_, std::move(n));
    return &parent.members.back().second;
  }

  std::string_view text_;
  const std::size_t &consumed_;
  const std::string &source_;
  Node root_;
  // pointers stay valid: a container only grows while it is the innermost
  // open one, and no pointer into it is held below it on the stack
  std::vector<Node *> stack_;
  std::string key_;
};

class Reader {
public:
  Reader(const Builder &b) : b_(b) {}

  [[noreturn]] void fail(Kind kind, const Node &at, const std::string &message) const {
    b_.fail(kind, at.offset, message);
  }

  const Node *find(const Node &obj, const std::string &key) const {
    for (const auto &m : obj.members)
      if (m.first == key)
        return &m.second;
    return nullptr;
  }

  const Node &get(const Node &obj, const std::string &key) const {
    if (const Node *n = find(obj, key))
      return *n;
    fail(Kind::Schema, obj, "missing key \"" + key + "\"");
  }

  void only_keys(const Node &obj, std::initializer_list<const char *> keys) const {
    for (const auto &m : obj.members) {
      bool known = false;
      for (const char *k : keys)
        known = known || m.first == k;
      if (!known)
        fail(Kind::Schema, m.second, "unknown key \"" + m.first + "\"");
    }
  }

  const Node &object(const Node &n, const std::string &what) const {
    if (n.type != Node::Type::Object)
      fail(Kind::Schema, n, what + " must be an object");
    return n;
  }

  const Node &array(const Node &n, const std::string &what) const {
    if (n.type != Node::Type::Array)
      fail(Kind::Schema, n, what + " must be an array");
    return n;
  }

  std::string text(const Node &n, const std::string &what) const {
    if (n.type != Node::Type::String)
      fail(Kind::Schema, n, what + " must be a string");
    return n.text;
  }

  Rational number(const Node &n, const std::string &what) const {
    if (n.type != Node::Type::String && n.type != Node::Type::Number)
      fail(Kind::BadNumber, n, what + " must be a number or a string such as \"3/4\"");
    try {
      if (n.type == Node::Type::Number) {
        const auto e = n.text.find_first_of("eE");
        if (e != std::string::npos) {
          Rational scale = 1;
          const long exp = std::stol(n.text.substr(e + 1));
          for (long k = 0; k < std::labs(exp); ++k)
            scale *= 10;
          const Rational mantissa = Rational::parse(n.text.substr(0, e));
          return exp < 0 ? mantissa / scale : mantissa * scale;
        }
      }
      return Rational::parse(n.text);
    } catch (const ParseError &) {
    } catch (const std::logic_error &) {
    }
    fail(Kind::BadNumber, n, what + ": not an exact rational: \"" + n.text + "\"");
  }

  Rational nonnegative(const Node &n, const std::string &what) const {
    Rational q = number(n, what);
    if (q.sign() < 0)
      fail(Kind::NegativeEntry, n, what + " is negative: " + q.str());
    return q;
  }

  int capacity(const Node &n, const std::string &what) const {
    Rational q;
    try {
      q = number(n, what);
    } catch (const MarketFileError &) {
      fail(Kind::BadCapacity, n, what + " must be a positive integer");
    }
    if (!q.is_integer() || q.sign() <= 0 || q > Rational(1000000))
      fail(Kind::BadCapacity, n, what + " must be a positive integer, got " + q.str());
    return static_cast<int>(q.raw().get_num().get_si());
  }

  std::vector<std::string> ids(const Node &list, const std::string &side) const {
    array(list, side + " list");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto &item : list.items)
      out.push_back(id(item, side, seen));
    return out;
  }

  std::string id(const Node &n, const std::string &side, std::set<std::string> &seen) const {
    std::string s = text(n, side + " id");
    if (s.empty())
      fail(Kind::Schema, n, "empty " + side + " id");
    if (s.rfind(kDummyPrefix, 0) == 0)
      fail(Kind::Schema, n, side + " id \"" + s + "\" uses a reserved prefix");
    if (!seen.insert(s).second)
      fail(Kind::DuplicateId, n, "duplicate " + side + " id \"" + s + "\"");
    return s;
  }

  // [{"id": ..., "capacity": ...}, ...]
  void agents(const Node &list, const std::string &side, std::vector<std::string> &ids,
              std::vector<int> &caps) const {
    array(list, side + " list");
    std::set<std::string> seen;
    for (const auto &item : list.items) {
      object(item, side);
      only_keys(item, {"id", "capacity"});
      ids.push_back(id(get(item, "id"), side, seen));
      caps.push_back(capacity(get(item, "capacity"), "capacity of " + ids.back()));
    }
  }

  RationalMatrix matrix(const Node &n, const std::string &what, std::size_t rows,
                        std::size_t cols, const std::string &shape) const {
    array(n, what);
    if (n.items.size() != rows)
      fail(Kind::NonRectangular, n,
           what + " has " + std::to_string(n.items.size()) + " rows, expected " +
               std::to_string(rows) + " (" + shape + ")");
    RationalMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const Node &row = array(n.items[r], what + " row " + std::to_string(r + 1));
      if (row.items.size() != cols)
        fail(Kind::NonRectangular, row,
             what + " row " + std::to_string(r + 1) + " has " +
                 std::to_string(row.items.size()) + " entries, expected " +
                 std::to_string(cols) + " (" + shape + ")");
      for (std::size_t c = 0; c < cols; ++c)
        out(r, c) = nonnegative(row.items[c], what + " entry (" + std::to_string(r + 1) +
                                                  "," + std::to_string(c + 1) + ")");
    }
    return out;
  }

private:
  const Builder &b_;
};

MarketFile read_job_market(const Reader &rd, const Node &root) {
  rd.only_keys(root, {"mode", "description", "firms", "workers", "surplus", "raw"});
  MarketFile out;
  out.mode = MarketFile::Mode::JobMarket;
  std::vector<std::string> firms;
  std::vector<int> caps;
  rd.agents(rd.get(root, "firms"), "firm", firms, caps);
  const auto workers = rd.ids(rd.get(root, "workers"), "worker");
  const Node *surplus = rd.find(root, "surplus");
  const Node *raw = rd.find(root, "raw");
  if ((surplus == nullptr) == (raw == nullptr))
    rd.fail(Kind::Schema, root, "exactly one of \"surplus\" and \"raw\" is required");
  const std::string shape = "firms x workers";
  if (surplus) {
    out.market = Market(firms, caps, workers,
                        rd.matrix(*surplus, "surplus", firms.size(), workers.size(), shape));
    return out;
  }
  rd.object(*raw, "raw");
  rd.only_keys(*raw, {"hire", "reservation"});
  RawMarket r;
  r.firm_ids = firms;
  r.capacities = caps;
  r.worker_ids = workers;
  r.hire_values = rd.matrix(rd.get(*raw, "hire"), "hire", firms.size(), workers.size(), shape);
  const Node &res = rd.array(rd.get(*raw, "reservation"), "reservation");
  if (res.items.size() != workers.size())
    rd.fail(Kind::NonRectangular, res,
            "reservation has " + std::to_string(res.items.size()) +
                " entries, expected one per worker (" + std::to_string(workers.size()) + ")");
  for (std::size_t j = 0; j < res.items.size(); ++j)
    r.reservation_values.push_back(
        rd.nonnegative(res.items[j], "reservation of " + workers[j]));
  out.market = surplus_matrix(r);
  out.raw = std::move(r);
  return out;
}

MarketFile read_buyer_market(const Reader &rd, const Node &root) {
  rd.only_keys(root, {"mode", "description", "buyers", "sellers", "valuation"});
  MarketFile out;
  out.mode = MarketFile::Mode::BuyerSeller;
  const auto buyers = rd.ids(rd.get(root, "buyers"), "buyer");
  std::vector<std::string> sellers;
  std::vector<int> caps;
  rd.agents(rd.get(root, "sellers"), "seller", sellers, caps);
  auto a = rd.matrix(rd.get(root, "valuation"), "valuation", buyers.size(), sellers.size(),
                     "buyers x sellers");
  out.buyers = BuyerMarket(buyers, sellers, caps, std::move(a));
  return out;
}

} // namespace

MarketFileError::MarketFileError(Kind kind, const std::string &source, std::size_t line,
                                 std::size_t column, const std::string &message)
    : ParseError(where(source, line, column) + ": " + kind_label(kind) + ": " + message),
      kind_(kind), line_(line), column_(column) {}

MarketFile parse_market(std::string_view text, const std::string &source) {
  std::size_t consumed = 0;
  Builder builder(text, consumed, source);
  CountingIterator first(text.data(), &consumed);
  CountingIterator last(text.data() + text.size(), &consumed);
  nlohmann::json::sax_parse(first, last, &builder);
  const Node root = builder.take_root();
  Reader rd(builder);
  rd.object(root, "market file");
  const std::string mode = rd.text(rd.get(root, "mode"), "mode");
  try {
    if (mode == "job-market")
      return read_job_market(rd, root);
    if (mode == "buyer-seller")
      return read_buyer_market(rd, root);
  } catch (const InvalidArgument &e) {
    // anything the reader does not check itself
    rd.fail(Kind::Schema, root, e.what());
  }
  rd.fail(Kind::Schema, rd.get(root, "mode"),
          "mode must be \"job-market\" or \"buyer-seller\", got \"" + mode + "\"");
}

MarketFile read_market_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw MarketFileError(Kind::Schema, path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_market(buf.str(), path);
}

namespace {

using ojson = nlohmann::ordered_json;

ojson matrix_json(const RationalMatrix &a) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < a.cols(); ++c)
      row.push_back(a(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson agents_json(const std::vector<std::string> &ids, const std::vector<int> &caps) {
  ojson out = ojson::array();
  for (std::size_t k = 0; k < ids.size(); ++k)
    out.push_back(ojson{{"id", ids[k]}, {"capacity", caps[k]}});
  return out;
}

} // namespace

std::string to_json(const Market &m) {
  ojson j;
  j["mode"] = "job-market";
  j["firms"] = agents_json(m.firm_ids(), m.capacities());
  j["workers"] = m.worker_ids();
  j["surplus"] = matrix_json(m.surplus_matrix());
  return j.dump(2) + "\n";
}

std::string to_json(const RawMarket &raw) {
  raw.validate();
  ojson j;
  j["mode"] = "job-market";
  j["firms"] = agents_json(raw.firm_ids, raw.capacities);
  j["workers"] = raw.worker_ids;
  ojson res = ojson::array();
  for (const auto &t : raw.reservation_values)
    res.push_back(t.str());
  j["raw"] = ojson{{"hire", matrix_json(raw.hire_values)}, {"reservation", res}};
  return j.dump(2) + "\n";
}

std::string to_json(const BuyerMarket &bm) {
  ojson j;
  j["mode"] = "buyer-seller";
  std::vector<std::string> buyers, sellers;
  for (std::size_t i = 0; i < bm.num_buyers(); ++i)
    buyers.push_back(bm.buyer_id(i));
  for (std::size_t s = 0; s < bm.num_sellers(); ++s)
    sellers.push_back(bm.seller_id(s));
  j["buyers"] = buyers;
  j["sellers"] = agents_json(sellers, bm.capacities());
  RationalMatrix a(bm.num_buyers(), bm.num_sellers());
  for (std::size_t i = 0; i < bm.num_buyers(); ++i)
    for (std::size_t s = 0; s < bm.num_sellers(); ++s)
      a(i, s) = bm.valuation(i, s);
  j["valuation"] = matrix_json(a);
  return j.dump(2) + "\n";
}

} // namespace m2o
