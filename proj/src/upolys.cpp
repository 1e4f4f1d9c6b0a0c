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

#include "cbranch/upolys.hpp"

#include <algorithm>

#include "cbranch/error.hpp"

namespace cbranch {
namespace {

void require_ext(const MonicPoly& f) {
  if (!f.field().is_quadratic_extension()) {
    throw Error(ErrorCode::kWrongField, "U-polynomials live over F_{q^2}");
  }
  if (!f.is_monic() || f.degree() < 1) {
    throw Error(ErrorCode::kInvalidParams, "expected a monic polynomial of degree >= 1");
  }
  if (f.coeff(0) == 0) throw Error(ErrorCode::kZeroConstantTerm, "f(0) = 0");
}

}  // namespace

MonicPoly u_conjugate(const MonicPoly& f) {
  require_ext(f);
  const Field& F = f.field();
  const int d = f.degree();
  std::vector<Code> r(d + 1);
  for (int i = 0; i <= d; ++i) r[d - i] = F.frob(f.coeff(i));
  return FPoly(F, r).monic();
}

bool is_self_u_reciprocal(const MonicPoly& f) { return u_conjugate(f) == f; }

bool is_u_irreducible(const MonicPoly& f) {
  require_ext(f);
  auto fs = factor(f);
  if (fs.size() == 1 && fs[0].second == 1) return is_self_u_reciprocal(f);
  if (fs.size() == 2 && fs[0].second == 1 && fs[1].second == 1) {
    const FPoly& h = fs[0].first;
    return !is_self_u_reciprocal(h) && u_conjugate(h) == fs[1].first;
  }
  return false;
}

int mobius(int n) {
  int r = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

PolyQ count_u_irreducible_symbolic(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "degree must be >= 1");
  PolyQ acc;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    const int mu = mobius(n / d);
    if (!mu) continue;
    PolyQ term = PolyQ::var().pow(d) - PolyQ(d % 2 ? -1 : 1);
    acc += PolyQ(mu) * term;
  }
  return acc * PolyQ(mpq_class(1, n));
}

long long count_u_irreducible(int n, long long q) {
  return count_u_irreducible_symbolic(n).eval_integer(q).get_si();
}

std::vector<MonicPoly> enumerate_u_irreducible(int d, const Field& ext, int max_q) {
  if (!ext.is_quadratic_extension()) throw Error(ErrorCode::kWrongField, "need F_{q^2}");
  if (d < 1 || d > 3 || ext.base().size() > max_q) {
    throw Error(ErrorCode::kLimitExceeded, "enumeration limited to d <= 3, q <= 11");
  }
  long long count = 1;
  for (int i = 0; i < d; ++i) count *= ext.size();
  std::vector<MonicPoly> out;
  for (long long idx = 0; idx < count; ++idx) {
    if (idx % ext.size() == 0) continue;  // zero constant term
    FPoly f = FPoly::monic_from_index(ext, d, idx);
    if (!is_self_u_reciprocal(f)) continue;
    if (is_u_irreducible(f)) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cbranch
