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

#ifndef CBRANCH_MAT_HPP_
#define CBRANCH_MAT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cbranch/field.hpp"
#include "cbranch/fpoly.hpp"

namespace cbranch {

constexpr int kMaxDim = 4;

// Square matrix of dimension n <= 4, row major.
struct Mat {
  const Field* field = nullptr;
  int n = 0;
  std::array<Code, kMaxDim * kMaxDim> a{};

  Mat() = default;
  Mat(const Field& f, int dim) : field(&f), n(dim) {}

  static Mat identity(const Field& f, int n);
  static Mat scalar(const Field& f, int n, Code c);
  static Mat diagonal(const Field& f, const std::vector<Code>& d);
  // Entries given as field codes.
  static Mat from_rows(const Field& f, const std::vector<std::vector<int>>& rows);
  // Entries given as integers reduced into the prime field.
  static Mat from_ints(const Field& f, const std::vector<std::vector<long long>>& rows);
  static Mat block_diag(const Mat& x, const Mat& y);

  Code operator()(int i, int j) const { return a[i * n + j]; }
  Code& operator()(int i, int j) { return a[i * n + j]; }

  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return n != o.n ? n < o.n : a < o.a; }

  bool is_identity() const;
  bool is_scalar() const;
  std::string to_string() const;
  std::vector<std::vector<int>> rows() const;
};

struct MatKey {
  std::uint64_t lo = 0, hi = 0;
  bool operator==(const MatKey& o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const MatKey& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
};

MatKey mat_key(const Mat& m);

struct MatKeyHash {
  size_t operator()(const MatKey& k) const;
};
struct MatHash {
  size_t operator()(const Mat& m) const { return MatKeyHash()(mat_key(m)); }
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat scale(const Mat& x, Code c);
Mat transpose(const Mat& x);
// Entrywise Frobenius; the field must be F_{q^2}.
Mat conj(const Mat& x);
Code trace(const Mat& x);
Code det(const Mat& x);
int rank(const Mat& x);
bool is_invertible(const Mat& x);
Mat inverse(const Mat& x);
Mat power(const Mat& x, long long e);
// Multiplicative order of an invertible matrix.
long long mat_order(const Mat& x);
FPoly charpoly(const Mat& x);
// Companion matrix of a monic polynomial: ones on the superdiagonal, last row
// holding -a_0, ..., -a_{d-1}.
Mat companion(const FPoly& f);

// Row-reduces rows (each of length ncols) and returns a basis of the solution
// space of rows * x = 0 as vectors of length ncols.
std::vector<std::vector<Code>> nullspace(const Field& f, std::vector<std::vector<Code>> rows,
                                         int ncols);
int rank_of_rows(const Field& f, std::vector<std::vector<Code>> rows, int ncols);

// Similarity signature: characteristic polynomial plus the ranks of
// (x - lambda)^j for every eigenvalue lambda in the field and j = 1..n.
// Equal for GL-conjugate matrices.
std::vector<int> similarity_signature(const Mat& x);

}  // namespace cbranch

#endif  // CBRANCH_MAT_HPP_
