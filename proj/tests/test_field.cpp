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

#include <gtest/gtest.h>

#include <set>

#include "cbranch/error.hpp"
#include "cbranch/field.hpp"
#include "cbranch/fpoly.hpp"

namespace cbranch {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kSingularSystem;
}

TEST(Field, RejectsEvenAndCompositeCharacteristic) {
  EXPECT_EQ(code_of([] { field_create(2, 3); }), ErrorCode::kNonOddPrime);
  EXPECT_EQ(code_of([] { field_create(9, 1); }), ErrorCode::kNonOddPrime);
  EXPECT_EQ(code_of([] { field_of_order(4); }), ErrorCode::kNonOddPrime);
}

TEST(Field, RejectsOversizeFields) {
  EXPECT_EQ(code_of([] { field_create(3, 5); }), ErrorCode::kLimitExceeded);
}

TEST(Field, PrimeFieldAndInterning) {
  const Field& f3 = field_create(3, 1);
  EXPECT_EQ(f3.size(), 3);
  EXPECT_EQ(&f3, &field_create(3, 1));
  EXPECT_EQ(f3.mul(2, 2), 1);
}

TEST(Field, F9UsesLeastIrreducibleQuadratic) {
  const Field& f9 = field_create(3, 2);
  EXPECT_EQ(f9.size(), 9);
  // Monic quadratics over F_3 ordered by (a0, a1) digits; the first without a root.
  std::vector<int> expected;
  for (int idx = 0; idx < 9 && expected.empty(); ++idx) {
    const int a0 = idx % 3, a1 = idx / 3;
    bool root = false;
    for (int x = 0; x < 3; ++x) root = root || (x * x + a1 * x + a0) % 3 == 0;
    if (!root) expected = {a0, a1, 1};
  }
  EXPECT_EQ(f9.spec().modulus, expected);
}

TEST(Field, AxiomsExhaustiveUpTo25) {
  for (long long q : {3, 5, 7, 9, 25}) {
    const Field& f = field_of_order(q);
    for (int a = 0; a < f.size(); ++a) {
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      for (int b = 0; b < f.size(); ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        const int p = f.characteristic();
        EXPECT_EQ(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        for (int c = 0; c < f.size(); c += 2) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, MultiplicativeGroupIsCyclic) {
  for (long long q : {3, 5, 7, 9, 11}) {
    const Field& ext = quadratic_extension(field_of_order(q));
    EXPECT_EQ(ext.mult_order(ext.primitive()), q * q - 1);
  }
}

TEST(Field, FrobeniusIsAnInvolutionFixingTheBase) {
  const Field& f9 = quadratic_extension(field_of_order(3));
  for (int a = 0; a < 9; ++a) {
    const FieldElem x(f9, static_cast<Code>(a));
    EXPECT_EQ(frobenius(frobenius(x)), x);
    EXPECT_EQ(frobenius(x), x.pow(3));
  }
  for (int b = 0; b < 3; ++b) {
    const FieldElem x(f9, f9.embed(static_cast<Code>(b)));
    EXPECT_EQ(frobenius(x), x);
  }
  const FieldElem theta(f9, f9.primitive());
  EXPECT_EQ(frobenius(theta), theta.pow(3));
}

TEST(Field, FrobeniusRejectsBaseFieldElements) {
  const Field& f3 = field_of_order(3);
  EXPECT_EQ(code_of([&] { frobenius(FieldElem(f3, 1)); }), ErrorCode::kWrongField);
  EXPECT_EQ(code_of([&] { norm_one_subgroup(f3); }), ErrorCode::kWrongField);
}

TEST(Field, NormOneSubgroupHasOrderQPlusOne) {
  for (long long q : {3, 5, 7, 9, 11}) {
    const Field& ext = quadratic_extension(field_of_order(q));
    const auto n1 = norm_one_subgroup(ext);
    EXPECT_EQ(static_cast<long long>(n1.size()), q + 1);
    std::set<int> codes;
    for (const auto& a : n1) {
      EXPECT_EQ(a.pow(q + 1).code, 1);
      codes.insert(a.code);
    }
    EXPECT_TRUE(codes.count(1));
  }
}

TEST(Field, ModuliAreIrreducible) {
  for (long long q : {9, 25, 27, 49, 81, 121}) {
    const Field& f = field_of_order(q);
    const Field& fp = field_create(f.characteristic(), 1);
    std::vector<Code> m;
    for (int c : f.spec().modulus) m.push_back(static_cast<Code>(c));
    EXPECT_TRUE(is_irreducible(FPoly(fp, m))) << q;
  }
}

}  // namespace
}  // namespace cbranch
