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

#ifndef CBRANCH_FPOLY_HPP_
#define CBRANCH_FPOLY_HPP_

#include <string>
#include <vector>

#include "cbranch/field.hpp"

namespace cbranch {

// Univariate polynomial over a finite field, lowest degree first, no trailing
// zero coefficients.
class FPoly {
 public:
  FPoly() = default;
  explicit FPoly(const Field& f) : field_(&f) {}
  FPoly(const Field& f, std::vector<Code> coeffs);

  static FPoly monomial(const Field& f, int degree, Code c = 1);
  // Monic polynomial of the given degree whose lower coefficients are the
  // base-|F| digits of index (a_0 least significant).
  static FPoly monic_from_index(const Field& f, int degree, long long index);

  const Field& field() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Code>& coeffs() const { return c_; }
  Code coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Code leading() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  FPoly operator+(const FPoly& o) const;
  FPoly operator-(const FPoly& o) const;
  FPoly operator*(const FPoly& o) const;
  FPoly scaled(Code s) const;
  FPoly monic() const;
  // Division with remainder; divisor must be nonzero.
  void divmod(const FPoly& d, FPoly* quot, FPoly* rem) const;
  FPoly operator%(const FPoly& d) const;
  FPoly operator/(const FPoly& d) const;
  bool divides(const FPoly& f) const { return (f % *this).is_zero(); }
  Code eval(Code x) const;

  bool operator==(const FPoly& o) const { return field_ == o.field_ && c_ == o.c_; }
  bool operator!=(const FPoly& o) const { return !(*this == o); }
  // Degree first, then coefficients from the top down.
  bool operator<(const FPoly& o) const;

  std::string to_string() const;

 private:
  void normalize();
  const Field* field_ = nullptr;
  std::vector<Code> c_;
};

// Exhaustive trial-division factorization into monic irreducibles, with
// multiplicity, in increasing order. The input need not be monic; its leading
// coefficient is dropped.
std::vector<std::pair<FPoly, int>> factor(const FPoly& f);
bool is_irreducible(const FPoly& f);
// All monic irreducible polynomials of the given degree, sorted.
std::vector<FPoly> monic_irreducibles(const Field& f, int degree);

}  // namespace cbranch

#endif  // CBRANCH_FPOLY_HPP_
