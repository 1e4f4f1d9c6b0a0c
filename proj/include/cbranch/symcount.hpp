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

#ifndef CBRANCH_SYMCOUNT_HPP_
#define CBRANCH_SYMCOUNT_HPP_

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cbranch/branching.hpp"
#include "cbranch/groups.hpp"
#include "cbranch/polyq.hpp"

namespace cbranch {

// Polynomial in t over Q[q], lowest degree first, no trailing zeros.
class TPoly {
 public:
  TPoly() = default;
  TPoly(const PolyQ& c);  // NOLINT: constants convert implicitly
  explicit TPoly(std::vector<PolyQ> coeffs);
  static TPoly t();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<PolyQ>& coeffs() const { return c_; }
  PolyQ coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : PolyQ(); }
  PolyQ leading() const { return c_.empty() ? PolyQ() : c_.back(); }

  TPoly operator+(const TPoly& o) const;
  TPoly operator-(const TPoly& o) const;
  TPoly operator*(const TPoly& o) const;
  TPoly operator-() const;
  TPoly pow(int e) const;
  // Exact quotient in Q[q][t]; throws SingularSystem if the division is inexact.
  TPoly exact_div(const TPoly& d) const;
  // lc(d)^(deg - deg d + 1) * this mod d.
  TPoly pseudo_rem(const TPoly& d) const;
  PolyQ content() const;  // monic gcd of the coefficients
  TPoly primitive_part() const;
  bool operator==(const TPoly& o) const { return c_ == o.c_; }
  bool operator!=(const TPoly& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  void normalize();
  std::vector<PolyQ> c_;
};

TPoly gcd(const TPoly& a, const TPoly& b);
TPoly determinant(std::vector<std::vector<TPoly>> m);
// Coefficients of det(xI - B), lowest degree first.
std::vector<PolyQ> characteristic_polynomial(const BranchingMatrix& b);

// num/den in lowest terms with den(0) = 1.
class RatSeries {
 public:
  RatSeries(const TPoly& num, const TPoly& den);
  // Caller guarantees num and den are coprime; only normalizes den(0) = 1.
  static RatSeries from_reduced(const TPoly& num, const TPoly& den);
  const TPoly& numerator() const { return num_; }
  const TPoly& denominator() const { return den_; }
  PolyQ coefficient(int k) const;
  std::vector<PolyQ> expand(int k_max) const;  // coefficients 0..k_max
  bool operator==(const RatSeries& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::string to_string() const;

 private:
  RatSeries() = default;
  void normalize();
  TPoly num_, den_;
  mutable std::vector<PolyQ> cache_;
};

// 1 * B^k * e_1, with c(0) = 1.
PolyQ simultaneous_classes(const BranchingMatrix& b, int k);
std::vector<PolyQ> simultaneous_classes_upto(const BranchingMatrix& b, int k_max);
// 1 * (I - tB)^-1 * e_1.
RatSeries generating_series(const BranchingMatrix& b);

// c_G(k-1) / |G|^(k-1) from a fixed-q matrix.
mpq_class commuting_probability(const BranchingMatrix& b_at_q, const mpz_class& group_order,
                                int k);
// |G^(k)| by direct iteration, k in 1..3.
mpz_class exhaustive_commuting_count(const GroupElements& g, int k,
                                     long long limit = 1000000000);

// c_G(k) for k <= 2 straight from the group: class count for k = 1, and the
// sum over class representatives g of the class count of Z_G(g) for k = 2.
mpz_class census_simultaneous_classes(const GroupElements& g, int k);

struct LescotReport {
  int k = 0;
  mpq_class via_matrix;      // 1 B^(k-1) e_1 / |G|^(k-1)
  mpq_class via_recurrence;  // recurrence over class centralizers
  mpq_class via_census;      // |G^(k)| / |G|^k
  bool agree() const { return via_matrix == via_recurrence && via_recurrence == via_census; }
};
LescotReport lescot_consistency(const GroupElements& g, const BranchingMatrix& b_at_q, int k);

// Polynomials in q, m = q-1 and p = q+1 kept as independent symbols.
class QmpPoly {
 public:
  using Exp = std::array<int, 3>;  // powers of q, m, p
  QmpPoly() = default;
  QmpPoly(long long c);  // NOLINT
  static QmpPoly q();
  static QmpPoly m();
  static QmpPoly p();
  // Writes f as c * q^a * (q-1)^b * (q+1)^d; throws InvalidParams otherwise.
  static QmpPoly from_monomial_factorization(const PolyQ& f);
  QmpPoly operator+(const QmpPoly& o) const;
  QmpPoly operator*(const QmpPoly& o) const;
  QmpPoly pow(int e) const;
  QmpPoly swap_mp() const;
  PolyQ substitute() const;  // m = q-1, p = q+1
  const std::map<Exp, mpq_class>& terms() const { return t_; }

 private:
  std::map<Exp, mpq_class> t_;
};

struct DualityReport {
  int k = 0;
  PolyQ c_u;          // from BU2
  PolyQ c_g;          // from Bg2
  PolyQ u_sum;        // closed-form sum for U2, substituted
  PolyQ g_sum;        // closed-form sum for GL2, substituted
  PolyQ swapped_g;    // GL2 sum with (q-1) and (q+1) exchanged, substituted
  bool ok() const { return u_sum == c_u && g_sum == c_g && swapped_g == c_u; }
};

// Closed-form data of a lower-triangular branching matrix: denominator roots
// (the diagonal) and series numerator coefficients, each as a q/m/p monomial.
struct ClosedForm {
  std::vector<QmpPoly> roots;
  std::vector<QmpPoly> numerator;
  QmpPoly term(int k) const;  // sum_j N_j * h_(k-j)(roots)
};
ClosedForm closed_form(const BranchingMatrix& b);
std::vector<DualityReport> duality_check(int k_max);

}  // namespace cbranch

#endif  // CBRANCH_SYMCOUNT_HPP_
