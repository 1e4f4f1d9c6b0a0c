// Copyright 2026 The cbranch Authors
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

#include "cbranch/polyq.hpp"

#include <cctype>
#include <sstream>

#include "cbranch/error.hpp"

namespace cbranch {

PolyQ::PolyQ(long long c) {
  if (c != 0) c_.push_back(mpq_class(static_cast<long>(c)));
}

PolyQ::PolyQ(const mpq_class& c) {
  if (c != 0) c_.push_back(c);
}

PolyQ::PolyQ(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  normalize();
}

PolyQ PolyQ::var() { return PolyQ(std::vector<mpq_class>{0, 1}); }

void PolyQ::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-(const PolyQ& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
  if (is_zero() || o.is_zero()) return PolyQ();
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-() const {
  std::vector<mpq_class> r(c_);
  for (auto& x : r) x = -x;
  return PolyQ(std::move(r));
}

PolyQ PolyQ::pow(int e) const {
  PolyQ r(1), b(*this);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

void PolyQ::divmod(const PolyQ& d, PolyQ* quot, PolyQ* rem) const {
  if (d.is_zero()) throw Error(ErrorCode::kSingularSystem, "division by zero polynomial");
  std::vector<mpq_class> r(c_);
  const int dd = d.degree();
  std::vector<mpq_class> q(std::max(0, degree() - dd + 1), 0);
  for (int i = degree(); i >= dd; --i) {
    if (r[i] == 0) continue;
    mpq_class c = r[i] / d.c_[dd];
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= c * d.c_[j];
  }
  if (quot) *quot = PolyQ(std::move(q));
  if (rem) *rem = PolyQ(std::move(r));
}

PolyQ PolyQ::exact_div(const PolyQ& d) const {
  PolyQ q, r;
  divmod(d, &q, &r);
  if (!r.is_zero()) throw Error(ErrorCode::kSingularSystem, "inexact polynomial division");
  return q;
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  mpq_class l = leading();
  std::vector<mpq_class> r(c_);
  for (auto& x : r) x /= l;
  return PolyQ(std::move(r));
}

PolyQ PolyQ::compose(const PolyQ& inner) const {
  PolyQ acc;
  for (int i = degree(); i >= 0; --i) acc = acc * inner + PolyQ(c_[i]);
  return acc;
}

mpq_class PolyQ::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

mpz_class PolyQ::eval_integer(long long x) const {
  mpq_class v = eval(mpq_class(static_cast<long>(x)));
  if (v.get_den() != 1) {
    throw Error(ErrorCode::kInvalidParams,
                "polynomial " + to_string() + " is not integral at q=" + std::to_string(x));
  }
  return v.get_num();
}

bool PolyQ::has_integer_coefficients() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

bool PolyQ::has_nonnegative_coefficients() const {
  for (const auto& x : c_)
    if (x < 0) return false;
  return true;
}

std::string PolyQ::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = c_[i];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (a == 1);
    if (!unit || i == 0) os << a.get_str();
    if (i >= 1) {
      if (!unit) os << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a, y = b;
  while (!y.is_zero()) {
    PolyQ r;
    x.divmod(y, nullptr, &r);
    x = y;
    y = r;
  }
  return x.monic();
}

PolyQ binomial(const PolyQ& x, int k) {
  PolyQ r(1);
  mpq_class fact = 1;
  for (int i = 0; i < k; ++i) {
    r *= x - PolyQ(i);
    fact *= i + 1;
  }
  return r * PolyQ(mpq_class(1) / fact);
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  PolyQ parse() {
    PolyQ r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::kInvalidParams, "cannot parse '" + s_ + "': " + why);
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == 'q' || c == 'b' || std::isdigit(static_cast<unsigned char>(c));
  }

  PolyQ expr() {
    PolyQ r;
    bool neg = accept('-');
    if (!neg) accept('+');
    r = term();
    if (neg) r = -r;
    while (true) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  PolyQ term() {
    PolyQ r = power();
    while (true) {
      if (accept('*')) {
        r *= power();
      } else if (accept('/')) {
        PolyQ d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
        r *= PolyQ(mpq_class(1) / d.coeff(0));
      } else if (starts_factor()) {
        r *= power();
      } else {
        return r;
      }
    }
  }

  PolyQ power() {
    PolyQ b = primary();
    if (accept('^')) b = b.pow(integer());
    return b;
  }

  int integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  PolyQ primary() {
    skip();
    if (accept('(')) {
      PolyQ r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (accept('q')) return PolyQ::var();
    if (s_.compare(pos_, 6, "binom(") == 0) {
      pos_ += 6;
      PolyQ x = expr();
      if (!accept(',')) fail("expected ','");
      int k = integer();
      if (!accept(')')) fail("expected ')'");
      return binomial(x, k);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      return PolyQ(static_cast<long long>(integer()));
    }
    fail("unexpected character");
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

PolyQ PolyQ::parse(const std::string& text) { return Parser(text).parse(); }

}  // namespace cbranch
