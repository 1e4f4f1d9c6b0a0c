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

#include "cbranch/branching.hpp"
#include "cbranch/error.hpp"
#include "cbranch/groups.hpp"
#include "cbranch/symcount.hpp"

namespace cbranch {

void PrintTo(const TPoly& p, std::ostream* os) { *os << p.to_string(); }
void PrintTo(const PolyQ& p, std::ostream* os) { *os << p.to_string(); }

namespace {

const BranchingMatrix& table(Family f, int n) {
  static std::map<std::pair<int, int>, BranchingMatrix> cache;
  auto key = std::make_pair(static_cast<int>(f), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, branching_matrix_symbolic(f, n)).first;
  return it->second;
}

const GroupElements& group(Family f, int n, long long q) {
  static std::map<std::tuple<int, int, long long>, GroupElements> cache;
  auto key = std::make_tuple(static_cast<int>(f), n, q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_group(make_group_spec(f, n, q))).first;
  return it->second;
}

TPoly tpoly(const std::vector<std::string>& coeffs) {
  std::vector<PolyQ> c;
  for (const auto& s : coeffs) c.push_back(PolyQ::parse(s));
  return TPoly(std::move(c));
}

TEST(SymCount, Table5) {
  const std::vector<std::string> rows = {
      "q^2+2q+1", "q^4+3q^3+5q^2+5q+2", "q^6+4q^5+10q^4+17q^3+16q^2+7q+1",
      "q^8+5q^7+17q^6+39q^5+53q^4+43q^3+23q^2+9q+2"};
  EXPECT_EQ(simultaneous_classes(table(Family::kU, 2), 0), PolyQ(1));
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(simultaneous_classes(table(Family::kU, 2), k), PolyQ::parse(rows[k - 1])) << k;
  }
}

TEST(SymCount, Table6) {
  const std::vector<std::string> rows = {
      "q^3+2q^2+3q+2", "q^6+3q^5+8q^4+15q^3+15q^2+8q+2",
      "q^9+4q^8+14q^7+37q^6+66q^5+81q^4+64q^3+29q^2+7q+1",
      "q^12+5q^11+22q^10+74q^9+178q^8+313q^7+395q^6+357q^5+241q^4+126q^3+49q^2+13q+2"};
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(simultaneous_classes(table(Family::kU, 3), k), PolyQ::parse(rows[k - 1])) << k;
  }
  // The verbatim printed table does not reproduce the printed counts.
  const auto printed = branching_matrix_symbolic(Family::kU, 3, TableVariant::kPrinted);
  EXPECT_NE(simultaneous_classes(printed, 2), PolyQ::parse(rows[1]));
}

TEST(SymCount, Sp2Counts) {
  const std::vector<std::string> rows = {"q+4", "q^2+8q+9", "q^3+16q^2+19q+16",
                                         "q^4+32q^3+38q^2+32q+33"};
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(simultaneous_classes(table(Family::kSp, 2), k), PolyQ::parse(rows[k - 1])) << k;
  }
}

TEST(SymCount, GeneratingSeriesU2) {
  const auto h = generating_series(table(Family::kU, 2));
  // Expanded numerator as printed; the factored display has sign typos.
  EXPECT_EQ(h.numerator(), tpoly({"1", "-2q^2-2q", "q^4+2q^3+q^2", "-q^3-3q^2-3q-1"}));
  const TPoly t = TPoly::t();
  const TPoly one(PolyQ(1));
  auto lin = [&](const char* root) { return one - TPoly(PolyQ::parse(root)) * t; };
  EXPECT_EQ(h.denominator(), lin("q+1") * lin("q^2-1") * lin("q^2+q") * lin("q^2+2q+1"));
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(h.coefficient(k), simultaneous_classes(table(Family::kU, 2), k)) << k;
  }
}

TEST(SymCount, GeneratingSeriesGL2) {
  const auto h = generating_series(table(Family::kGL, 2));
  EXPECT_EQ(h.numerator(), tpoly({"1", "-2q(q-1)", "q^2(q-1)^2", "-(q-1)^3"}));
  const TPoly t = TPoly::t();
  const TPoly one(PolyQ(1));
  auto lin = [&](const char* root) { return one - TPoly(PolyQ::parse(root)) * t; };
  EXPECT_EQ(h.denominator(), lin("q-1") * lin("(q-1)^2") * lin("q^2-q") * lin("q^2-1"));
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(h.coefficient(k), simultaneous_classes(table(Family::kGL, 2), k)) << k;
  }
}

TEST(SymCount, SeriesMatchesPowersForAllTables) {
  for (auto [f, n] : {std::pair{Family::kU, 3}, std::pair{Family::kSp, 2},
                      std::pair{Family::kSp, 4}, std::pair{Family::kGL, 3}}) {
    const auto h = generating_series(table(f, n));
    EXPECT_EQ(h.denominator().coeff(0), PolyQ(1));
    const auto c = simultaneous_classes_upto(table(f, n), 8);
    for (int k = 0; k <= 8; ++k) EXPECT_EQ(h.coefficient(k), c[k]) << family_name(f) << n;
  }
}

TEST(SymCount, RatSeriesReducesToLowestTerms) {
  const TPoly t = TPoly::t();
  const TPoly one(PolyQ(1));
  const TPoly f = one - TPoly(PolyQ::var()) * t;
  const TPoly g = one + t;
  const RatSeries r(f * g * TPoly(PolyQ(3)), f * f * TPoly(PolyQ(3)));
  EXPECT_EQ(r.numerator(), g);
  EXPECT_EQ(r.denominator(), f);
  const TPoly h = gcd(f * g, f * f);
  EXPECT_TRUE(h == f || h == -f);
  EXPECT_THROW(RatSeries(one, t), Error);
}

TEST(SymCount, DeterminantAndCharpoly) {
  const TPoly t = TPoly::t();
  const TPoly one(PolyQ(1));
  std::vector<std::vector<TPoly>> m = {{one, t}, {t, one}};
  EXPECT_EQ(determinant(m), one - t * t);
  const auto chi = characteristic_polynomial(table(Family::kU, 2));
  ASSERT_EQ(chi.size(), 5u);
  EXPECT_EQ(chi[4], PolyQ(1));
}

TEST(SymCount, NonNegativeIntegerCoefficientsUpTo20) {
  for (auto [f, n] : {std::pair{Family::kU, 2}, std::pair{Family::kU, 3},
                      std::pair{Family::kSp, 2}}) {
    const auto c = simultaneous_classes_upto(table(f, n), 20);
    for (int k = 0; k <= 20; ++k) {
      EXPECT_TRUE(c[k].has_integer_coefficients()) << family_name(f) << n << " k=" << k;
      EXPECT_TRUE(c[k].has_nonnegative_coefficients()) << family_name(f) << n << " k=" << k;
    }
  }
}

TEST(SymCount, DegreeLaw) {
  const auto u2 = simultaneous_classes_upto(table(Family::kU, 2), 8);
  const auto u3 = simultaneous_classes_upto(table(Family::kU, 3), 8);
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(u2[k].degree(), 2 * k);
    EXPECT_EQ(u3[k].degree(), 3 * k);
  }
}

TEST(SymCount, CommutingProbability) {
  const auto sp2 = table(Family::kSp, 2).at_q(3);
  EXPECT_EQ(commuting_probability(sp2, 24, 2), mpq_class(7, 24));
  const auto u2 = table(Family::kU, 2).at_q(3);
  EXPECT_EQ(commuting_probability(u2, 96, 2), mpq_class(1, 6));
  for (auto [f, n, q] : {std::tuple{Family::kSp, 2, 3}, std::tuple{Family::kSp, 2, 5},
                         std::tuple{Family::kU, 2, 3}, std::tuple{Family::kU, 3, 3}}) {
    const auto b = table(f, n).at_q(q);
    const mpz_class order = static_cast<long>(group_order(f, n, q));
    mpq_class prev = 1;
    for (int k = 2; k <= 5; ++k) {
      const mpq_class cp = commuting_probability(b, order, k);
      EXPECT_GT(cp, 0);
      EXPECT_LE(cp, prev);
      prev = cp;
    }
  }
}

TEST(SymCount, ExhaustiveCounts) {
  const auto& sp2 = group(Family::kSp, 2, 3);
  EXPECT_EQ(exhaustive_commuting_count(sp2, 1), 24);
  EXPECT_EQ(exhaustive_commuting_count(sp2, 2), 168);
  const auto& u2 = group(Family::kU, 2, 3);
  EXPECT_EQ(exhaustive_commuting_count(u2, 3), (81 + 81 + 45 + 15 + 2) * 96);
  EXPECT_THROW(exhaustive_commuting_count(u2, 3, 1000), Error);
}

TEST(SymCount, LescotThreeWay) {
  for (auto [f, n, q] : {std::tuple{Family::kSp, 2, 3}, std::tuple{Family::kSp, 2, 5},
                         std::tuple{Family::kU, 2, 3}}) {
    for (int k : {2, 3}) {
      const auto r = lescot_consistency(group(f, n, q), table(f, n).at_q(q), k);
      EXPECT_TRUE(r.agree()) << family_name(f) << n << " q=" << q << " k=" << k;
    }
  }
}

TEST(SymCount, Duality) {
  const auto reports = duality_check(6);
  ASSERT_EQ(reports.size(), 7u);
  for (const auto& r : reports) EXPECT_TRUE(r.ok()) << r.k;
  EXPECT_EQ(reports[0].c_u, PolyQ(1));
  EXPECT_EQ(reports[0].c_g, PolyQ(1));
  EXPECT_EQ(reports[1].c_g, PolyQ::parse("q^2-1"));
  EXPECT_EQ(reports[2].swapped_g, PolyQ::parse("q^4+3q^3+5q^2+5q+2"));
}

TEST(SymCount, CensusAgreesWithVerifiedTables) {
  for (auto [f, n] : {std::pair{Family::kU, 2}, std::pair{Family::kSp, 2},
                      std::pair{Family::kU, 3}}) {
    const auto b = table(f, n).at_q(3);
    for (int k = 0; k <= 2; ++k) {
      EXPECT_EQ(census_simultaneous_classes(group(f, n, 3), k),
                simultaneous_classes(b, k).eval_integer(0));
    }
  }
}

// Sp4 at q = 3: the census matches the enumerated branching matrix, and the
// printed table overcounts by the A2 and B6 column-sum defects (4*6 - 1*1).
TEST(SymCount, Sp4CensusAtQ3) {
  const auto census = census_simultaneous_classes(group(Family::kSp, 4, 3), 2);
  EXPECT_EQ(census, 1099);
  const auto emp = branching_matrix_empirical(Family::kSp, 4, 3);
  EXPECT_EQ(simultaneous_classes(emp.matrix, 2).eval_integer(0), census);
  EXPECT_EQ(simultaneous_classes(table(Family::kSp, 4).at_q(3), 2).eval_integer(0), 1122);
}

}  // namespace
}  // namespace cbranch
