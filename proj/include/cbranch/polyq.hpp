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

#ifndef CBRANCH_POLYQ_HPP_
#define CBRANCH_POLYQ_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cbranch {

// Polynomial in a formal variable q with rational coefficients, lowest degree
// first, normalized so the top coefficient is nonzero.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(long long c);  // NOLINT: constants convert implicitly
  PolyQ(const mpq_class& c);  // NOLINT
  explicit PolyQ(std::vector<mpq_class> coeffs);

  static PolyQ var();
  // Parses expressions in q such as "(q^2-q-2)/2", "2q^3", "binom(q+1,2)".
  static PolyQ parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : mpq_class(0); }
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  PolyQ operator+(const PolyQ& o) const;
  PolyQ operator-(const PolyQ& o) const;
  PolyQ operator*(const PolyQ& o) const;
  PolyQ operator-() const;
  PolyQ& operator+=(const PolyQ& o) { return *this = *this + o; }
  PolyQ& operator-=(const PolyQ& o) { return *this = *this - o; }
  PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }
  PolyQ pow(int e) const;
  // Division over Q[q]; remainder has lower degree than the divisor.
  void divmod(const PolyQ& d, PolyQ* quot, PolyQ* rem) const;
  // Exact quotient; throws if the divisor does not divide.
  PolyQ exact_div(const PolyQ& d) const;
  PolyQ monic() const;
  PolyQ compose(const PolyQ& inner) const;

  mpq_class eval(const mpq_class& x) const;
  // Value at an integer, which must be an integer.
  mpz_class eval_integer(long long x) const;
  bool has_integer_coefficients() const;
  bool has_nonnegative_coefficients() const;

  bool operator==(const PolyQ& o) const { return c_ == o.c_; }
  bool operator!=(const PolyQ& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<mpq_class> c_;
};

PolyQ gcd(const PolyQ& a, const PolyQ& b);  // monic, gcd(0,0) = 0
// x(x-1)...(x-k+1)/k!
PolyQ binomial(const PolyQ& x, int k);

}  // namespace cbranch

#endif  // CBRANCH_POLYQ_HPP_
