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

#include "cbranch/mat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cbranch/error.hpp"

namespace cbranch {

Mat Mat::identity(const Field& f, int n) { return scalar(f, n, 1); }

Mat Mat::scalar(const Field& f, int n, Code c) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Mat Mat::diagonal(const Field& f, const std::vector<Code>& d) {
  Mat m(f, static_cast<int>(d.size()));
  for (int i = 0; i < m.n; ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<int>>& rows) {
  Mat m(f, static_cast<int>(rows.size()));
  for (int i = 0; i < m.n; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix rows must be square");
    }
    for (int j = 0; j < m.n; ++j) {
      if (rows[i][j] < 0 || rows[i][j] >= f.size()) {
        throw Error(ErrorCode::kInvalidParams, "entry code out of range");
      }
      m(i, j) = static_cast<Code>(rows[i][j]);
    }
  }
  return m;
}

Mat Mat::from_ints(const Field& f, const std::vector<std::vector<long long>>& rows) {
  Mat m(f, static_cast<int>(rows.size()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) = f.from_int(rows[i][j]);
  return m;
}

Mat Mat::block_diag(const Mat& x, const Mat& y) {
  Mat m(*x.field, x.n + y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) m(i, j) = x(i, j);
  for (int i = 0; i < y.n; ++i)
    for (int j = 0; j < y.n; ++j) m(x.n + i, x.n + j) = y(i, j);
  return m;
}

bool Mat::is_identity() const { return *this == identity(*field, n); }

bool Mat::is_scalar() const { return *this == scalar(*field, n, (*this)(0, 0)); }

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n; ++j) os << (j ? "," : "") << static_cast<int>((*this)(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<std::vector<int>> Mat::rows() const {
  std::vector<std::vector<int>> r(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = (*this)(i, j);
  return r;
}

MatKey mat_key(const Mat& m) {
  MatKey k;
  const int nn = m.n * m.n;
  for (int i = 0; i < nn && i < 8; ++i) k.lo |= static_cast<std::uint64_t>(m.a[i]) << (7 * i);
  for (int i = 8; i < nn; ++i) k.hi |= static_cast<std::uint64_t>(m.a[i]) << (7 * (i - 8));
  k.hi |= static_cast<std::uint64_t>(m.n) << 60;
  return k;
}

size_t MatKeyHash::operator()(const MatKey& k) const {
  std::uint64_t x = k.lo * 0x9E3779B97F4A7C15ULL ^ (k.hi + 0x632BE59BD9B4E019ULL);
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 29;
  return static_cast<size_t>(x);
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  const Field& f = *x.field;
  const int n = x.n, s = f.size();
  const Code* mt = f.mul_table();
  const Code* at = f.add_table();
  Mat r(f, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Code acc = 0;
      for (int k = 0; k < n; ++k) acc = at[acc * s + mt[x.a[i * n + k] * s + y.a[k * n + j]]];
      r.a[i * n + j] = acc;
    }
  }
  return r;
}

Mat operator+(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  Mat r(*x.field, x.n);
  for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.field->add(x.a[i], y.a[i]);
  return r;
}

Mat operator-(const Mat& x, const Mat& y) {
  if (x.n != y.n) throw Error(ErrorCode::kDimensionMismatch, "matrix difference");
  Mat r(*x.field, x.n);
  for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.field->sub(x.a[i], y.a[i]);
  return r;
}

Mat scale(const Mat& x, Code c) {
  Mat r(*x.field, x.n);
  for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.field->mul(x.a[i], c);
  return r;
}

Mat transpose(const Mat& x) {
  Mat r(*x.field, x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = x(j, i);
  return r;
}

Mat conj(const Mat& x) {
  Mat r(*x.field, x.n);
  for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.field->frob(x.a[i]);
  return r;
}

Code trace(const Mat& x) {
  Code t = 0;
  for (int i = 0; i < x.n; ++i) t = x.field->add(t, x(i, i));
  return t;
}

namespace {

// Gaussian elimination on a copy; returns rank and determinant.
std::pair<int, Code> eliminate(const Mat& x) {
  const Field& f = *x.field;
  Mat m = x;
  const int n = x.n;
  Code d = 1;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) {
      d = 0;
      continue;
    }
    if (piv != r) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(r, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(r, c));
    const Code inv = f.inv(m(r, c));
    for (int i = r + 1; i < n; ++i) {
      if (!m(i, c)) continue;
      const Code factor = f.mul(m(i, c), inv);
      for (int j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    ++r;
  }
  if (r < n) d = 0;
  return {r, d};
}

}  // namespace

Code det(const Mat& x) { return eliminate(x).second; }
int rank(const Mat& x) { return eliminate(x).first; }
bool is_invertible(const Mat& x) { return det(x) != 0; }

Mat inverse(const Mat& x) {
  const Field& f = *x.field;
  const int n = x.n;
  Mat m = x, r = Mat::identity(f, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) throw Error(ErrorCode::kSingularSystem, "matrix is singular");
    for (int j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(r(piv, j), r(c, j));
    }
    const Code inv = f.inv(m(c, c));
    for (int j = 0; j < n; ++j) {
      m(c, j) = f.mul(m(c, j), inv);
      r(c, j) = f.mul(r(c, j), inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || !m(i, c)) continue;
      const Code factor = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        r(i, j) = f.sub(r(i, j), f.mul(factor, r(c, j)));
      }
    }
  }
  return r;
}

Mat power(const Mat& x, long long e) {
  if (e < 0) return power(inverse(x), -e);
  Mat r = Mat::identity(*x.field, x.n), b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

long long mat_order(const Mat& x) {
  if (!is_invertible(x)) throw Error(ErrorCode::kSingularSystem, "order of singular matrix");
  Mat y = x;
  long long o = 1;
  while (!y.is_identity()) {
    y = y * x;
    ++o;
  }
  return o;
}

FPoly charpoly(const Mat& x) {
  const Field& f = *x.field;
  const int n = x.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FPoly acc(f);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    FPoly term(f, {1});
    for (int i = 0; i < n; ++i) {
      // entry (i, perm[i]) of tI - x
      std::vector<Code> e = {f.neg(x(i, perm[i]))};
      if (perm[i] == i) e.push_back(1);
      term = term * FPoly(f, e);
      if (term.is_zero()) break;
    }
    acc = (inversions % 2) ? acc - term : acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Mat companion(const FPoly& g) {
  const Field& f = g.field();
  const int d = g.degree();
  Mat m(f, d);
  for (int i = 0; i + 1 < d; ++i) m(i, i + 1) = 1;
  for (int j = 0; j < d; ++j) m(d - 1, j) = f.neg(g.coeff(j));
  return m;
}

std::vector<std::vector<Code>> nullspace(const Field& f, std::vector<std::vector<Code>> rows,
                                         int ncols) {
  std::vector<int> pivot_col;
  int r = 0;
  const int nrows = static_cast<int>(rows.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int piv = -1;
    for (int i = r; i < nrows; ++i)
      if (rows[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    const Code inv = f.inv(rows[r][c]);
    for (int j = 0; j < ncols; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (int i = 0; i < nrows; ++i) {
      if (i == r || !rows[i][c]) continue;
      const Code factor = rows[i][c];
      for (int j = 0; j < ncols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Code>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Code> v(ncols, 0);
    v[free] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = f.neg(rows[i][free]);
    basis.push_back(v);
  }
  return basis;
}

int rank_of_rows(const Field& f, std::vector<std::vector<Code>> rows, int ncols) {
  return ncols - static_cast<int>(nullspace(f, std::move(rows), ncols).size());
}

namespace {

Mat poly_at(const FPoly& p, const Mat& x) {
  Mat acc(*x.field, x.n);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + Mat::scalar(*x.field, x.n, p.coeff(i));
  return acc;
}

}  // namespace

std::vector<int> similarity_signature(const Mat& x) {
  std::vector<int> sig;
  FPoly cp = charpoly(x);
  for (Code c : cp.coeffs()) sig.push_back(c);
  for (const auto& [g, mult] : factor(cp)) {
    Mat gx = poly_at(g, x);
    Mat pw = gx;
    for (int j = 1; j <= mult; ++j) {
      sig.push_back(rank(pw));
      if (j < mult) pw = pw * gx;
    }
  }
  return sig;
}

}  // namespace cbranch
