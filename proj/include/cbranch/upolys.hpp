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

#ifndef CBRANCH_UPOLYS_HPP_
#define CBRANCH_UPOLYS_HPP_

#include <vector>

#include "cbranch/field.hpp"
#include "cbranch/fpoly.hpp"
#include "cbranch/polyq.hpp"

namespace cbranch {

// Monic polynomials over F_{q^2}; the field must be a quadratic extension.
using MonicPoly = FPoly;

// f~(t) = f(0)^{-q} t^d f^sigma(1/t), with sigma the Frobenius of F_{q^2}/F_q.
MonicPoly u_conjugate(const MonicPoly& f);
bool is_self_u_reciprocal(const MonicPoly& f);
bool is_u_irreducible(const MonicPoly& f);
long long count_u_irreducible(int n, long long q);
PolyQ count_u_irreducible_symbolic(int n);
std::vector<MonicPoly> enumerate_u_irreducible(int d, const Field& ext, int max_q = 11);

int mobius(int n);

}  // namespace cbranch

#endif  // CBRANCH_UPOLYS_HPP_
