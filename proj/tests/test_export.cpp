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

#include "cbranch/export.hpp"

namespace cbranch {
namespace {

TEST(Export, Rationals) {
  EXPECT_EQ(rational_to_json(mpq_class(-3, 6)).dump(), "[-1,2]");
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 30);
  EXPECT_EQ(integer_to_json(big).dump(), "\"1000000000000000000000000000000\"");
  EXPECT_EQ(poly_to_json(PolyQ::parse("(q^2-q-2)/2")).dump(), "[[-1,1],[-1,2],[1,2]]");
  EXPECT_EQ(value_to_json(PolyQ(7)).dump(), "7");
}

TEST(Export, MatrixDocument) {
  const auto b = branching_matrix_symbolic(Family::kU, 2);
  const auto j = matrix_to_json(b);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["family"], "u");
  EXPECT_EQ(j["q"], "formal");
  EXPECT_EQ(j["order"].size(), 4u);
  EXPECT_EQ(j["entries"][1][1].dump(), "[[0,1],[1,1],[1,1]]");
  const auto jq = matrix_to_json(b.at_q(3));
  EXPECT_EQ(jq["q"], 3);
  EXPECT_EQ(jq["entries"].dump(), "[[4,0,0,0],[4,12,0,0],[6,0,16,0],[2,0,0,8]]");
  EXPECT_EQ(matrix_to_json(b).dump(), j.dump());
}

TEST(Export, Csv) {
  const auto csv = matrix_to_csv(branching_matrix_symbolic(Family::kSp, 2).at_q(5));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "branch\\parent,C,A1,A2,D,Ir");
  EXPECT_NE(csv.find("\nD,1,0,0,4,0\n"), std::string::npos);
  const auto u2 = matrix_to_csv(branching_matrix_symbolic(Family::kU, 2));
  EXPECT_NE(u2.find("\n\"(1,1)_1\",q + 1,0,0,0\n"), std::string::npos);
}

}  // namespace
}  // namespace cbranch
