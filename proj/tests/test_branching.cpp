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

#include <algorithm>

#include "cbranch/branching.hpp"
#include "cbranch/error.hpp"
#include "cbranch/groups.hpp"

namespace cbranch {
namespace {

struct Group {
  Family f;
  int n;
};
const std::vector<Group> kTables = {{Family::kU, 2},  {Family::kU, 3},  {Family::kSp, 2},
                                    {Family::kSp, 4}, {Family::kGL, 2}, {Family::kGL, 3}};

std::vector<PolyQ> column(const BranchingMatrix& b, const std::string& parent) {
  std::vector<PolyQ> out;
  const int s = b.index_of(parent);
  for (int r = 0; r < b.size(); ++r) out.push_back(b.entries[r][s]);
  return out;
}

std::vector<PolyQ> parse_all(const std::vector<std::string>& v) {
  std::vector<PolyQ> out;
  for (const auto& s : v) out.push_back(PolyQ::parse(s));
  return out;
}

TEST(BranchingSymbolic, Examples) {
  const auto u2 = branching_matrix_symbolic(Family::kU, 2);
  EXPECT_EQ(column(u2, "(2)_1"), parse_all({"0", "q(q+1)", "0", "0"}));
  const auto sp2 = branching_matrix_symbolic(Family::kSp, 2);
  EXPECT_EQ(column(sp2, "C"), parse_all({"2", "2", "2", "(q-3)/2", "(q-1)/2"}));
  EXPECT_EQ(column(sp2, "D"), parse_all({"0", "0", "0", "q-1", "0"}));
  const auto sp4 = branching_matrix_symbolic(Family::kSp, 4);
  EXPECT_EQ(sp4.at("N2", "N2"), PolyQ::parse("2q^3"));
  const auto u3 = branching_matrix_symbolic(Family::kU, 3);
  EXPECT_EQ(u3.at("(2,1)_1", "(2,1)_1"), PolyQ::parse("q(q+1)"));
  EXPECT_EQ(u3.at("(3)_1", "(2,1)_1"), PolyQ::parse("q^2-1"));
  EXPECT_EQ(u3.at("(2)_1(1)_1", "(2,1)_1"), PolyQ::parse("q^2(q+1)"));
  try {
    branching_matrix_symbolic(Family::kOplus, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFamily);
  }
}

TEST(BranchingSymbolic, FirstColumnIsClassCounts) {
  for (const auto& g : kTables) {
    const auto b = branching_matrix_symbolic(g.f, g.n);
    const auto& cat = type_catalog(g.f, g.n);
    ASSERT_EQ(b.size(), static_cast<int>(cat.size()));
    for (int r = 0; r < b.size(); ++r) {
      EXPECT_EQ(b.order[r], cat[r].label);
      EXPECT_EQ(b.entries[r][0], cat[r].class_count) << cat[r].label.name;
    }
  }
}

TEST(BranchingSymbolic, IntegralAndNonNegative) {
  for (const auto& g : kTables) {
    for (auto variant : {TableVariant::kCorrected, TableVariant::kPrinted}) {
      const auto b = branching_matrix_symbolic(g.f, g.n, variant);
      for (long long q : {3, 5, 7, 9, 11}) EXPECT_NO_THROW(b.at_q(q));
    }
  }
}

// Column sums at q = 3 against class counts of enumerated centralizers.
TEST(BranchingSymbolic, ColumnSumLawAtQ3) {
  for (const auto& g : {Group{Family::kU, 2}, Group{Family::kU, 3}, Group{Family::kSp, 2},
                        Group{Family::kSp, 4}, Group{Family::kGL, 2}}) {
    const auto emp = branching_matrix_empirical(g.f, g.n, 3);
    const auto report = compare_branching(branching_matrix_symbolic(g.f, g.n), emp);
    std::vector<std::string> expected_failures;
    if (g.f == Family::kSp && g.n == 4) expected_failures = {"A2", "B6"};
    EXPECT_EQ(report.column_sum_failures, expected_failures) << family_name(g.f) << g.n;
    for (const auto& c : emp.columns) {
      long long sum = 0;
      for (long long t : c.tally) sum += t;
      EXPECT_EQ(sum, c.class_count) << c.parent;
    }
  }
}

TEST(BranchingSymbolic, AbelianCentralizerDiagonalLaw) {
  for (const auto& g : kTables) {
    const auto b = branching_matrix_symbolic(g.f, g.n);
    const auto& cat = type_catalog(g.f, g.n);
    const long long q = 5;
    for (int s = 0; s < b.size(); ++s) {
      if (cat[s].class_count.eval_integer(q) == 0) continue;
      if (s == 0) continue;  // the whole group, never abelian here
      const auto tuple = canonical_representative(cat[s].label, q,
                                                  parameter_space(cat[s].label, q).front());
      const auto z = centralizer_local(make_group_spec(g.f, g.n, q), tuple);
      if (!z.is_abelian()) continue;
      for (int r = 0; r < b.size(); ++r) {
        const PolyQ expected = r == s ? cat[s].centralizer_order : PolyQ();
        EXPECT_EQ(b.entries[r][s], expected) << cat[s].label.name << " row " << cat[r].label.name;
      }
    }
  }
}

TEST(BranchingEmpirical, U2MatchesTableAtQ3) {
  const auto emp = branching_matrix_empirical(Family::kU, 2, 3);
  std::vector<std::vector<long long>> got;
  for (const auto& row : emp.matrix.entries) {
    std::vector<long long> r;
    for (const auto& e : row) r.push_back(e.eval_integer(0).get_si());
    got.push_back(r);
  }
  EXPECT_EQ(got, (std::vector<std::vector<long long>>{
                     {4, 0, 0, 0}, {4, 12, 0, 0}, {6, 0, 16, 0}, {2, 0, 0, 8}}));
}

TEST(BranchingEmpirical, VerifiedGroups) {
  struct Case {
    Family f;
    int n;
    long long q;
  };
  for (const auto& c : {Case{Family::kU, 2, 3}, Case{Family::kU, 2, 5}, Case{Family::kSp, 2, 3},
                        Case{Family::kSp, 2, 5}, Case{Family::kSp, 2, 7}, Case{Family::kGL, 2, 3},
                        Case{Family::kGL, 2, 5}, Case{Family::kU, 3, 3}}) {
    const auto r = verify_branching(c.f, c.n, c.q);
    EXPECT_TRUE(r.ok()) << family_name(c.f) << c.n << " q=" << c.q;
    EXPECT_TRUE(r.column_sum_failures.empty());
  }
}

TEST(BranchingEmpirical, Sp2DColumnAtQ5) {
  const auto emp = branching_matrix_empirical(Family::kSp, 2, 5);
  const int d = emp.matrix.index_of("D");
  std::vector<long long> col;
  for (int r = 0; r < emp.matrix.size(); ++r) col.push_back(emp.matrix.entries[r][d].eval_integer(0).get_si());
  EXPECT_EQ(col, (std::vector<long long>{0, 0, 0, 4, 0}));
  const auto q3 = verify_branching(Family::kSp, 2, 3);
  EXPECT_EQ(q3.vacuous_columns, (std::vector<std::string>{"D"}));
}

TEST(BranchingEmpirical, U3ErratumIsConfirmed) {
  const auto emp = branching_matrix_empirical(Family::kU, 3, 3);
  EXPECT_EQ(emp.matrix.at("(2)_1(1)_1", "(2)_1(1)_1"), PolyQ(48));
  EXPECT_EQ(emp.matrix.at("(2)_1(1)_1", "(2,1)_1"), PolyQ(36));
  EXPECT_EQ(emp.matrix.at("(2,1)_1", "(2,1)_1"), PolyQ(12));
  EXPECT_EQ(emp.matrix.at("(3)_1", "(2,1)_1"), PolyQ(8));
  const auto printed = branching_matrix_symbolic(Family::kU, 3, TableVariant::kPrinted);
  EXPECT_EQ(printed.at_q(3).at("(2)_1(1)_1", "(2)_1(1)_1"), PolyQ(36));
  ASSERT_EQ(branching_errata(Family::kU, 3).size(), 1u);
}

// Sp4 at q = 3: every column is either verified, vacuous, or one of the two
// columns whose printed values disagree with enumeration.
TEST(BranchingEmpirical, Sp4AtQ3) {
  const auto r = verify_branching(Family::kSp, 4, 3);
  EXPECT_EQ(r.vacuous_columns,
            (std::vector<std::string>{"B3", "B4", "B5", "B8", "B9", "C3", "C4"}));
  EXPECT_EQ(r.verified_columns.size() + r.vacuous_columns.size(), 22u);
  std::vector<std::string> bad;
  for (const auto& m : r.mismatches) bad.push_back(m.parent);
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  EXPECT_EQ(bad, (std::vector<std::string>{"A2", "B6"}));
  EXPECT_EQ(r.merges, (std::vector<std::vector<std::string>>{{"A3", "N1"}, {"N2", "N3"}}));
  ASSERT_EQ(r.errata_applied.size(), 1u);
  EXPECT_EQ(r.errata_applied[0].column, "N1");
}

TEST(BranchingEmpirical, ClosureNoNewTypes) {
  const auto emp = branching_matrix_empirical(Family::kSp, 4, 3);
  for (const auto& c : emp.columns) {
    EXPECT_EQ(c.tally.size(), 24u);
  }
  for (const std::string parent : {"N1", "N2", "N3"}) {
    const int s = emp.matrix.index_of(parent);
    long long total = 0;
    for (int r = 0; r < emp.matrix.size(); ++r) total += emp.matrix.entries[r][s].eval_integer(0).get_si();
    EXPECT_GT(total, 0) << parent;
  }
}

TEST(BranchingEmpirical, NonOddPrime) {
  try {
    verify_branching(Family::kU, 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonOddPrime);
  }
}

TEST(WellDefinedness, Examples) {
  const auto u2 = well_definedness_check(Family::kU, 2, 3, "(1)_1(1)_1");
  EXPECT_EQ(u2.representatives, 6);
  EXPECT_TRUE(u2.identical);
  const auto ir = well_definedness_check(Family::kSp, 2, 5, "Ir");
  EXPECT_EQ(ir.representatives, 2);
  EXPECT_TRUE(ir.identical);
  EXPECT_EQ(ir.reference_tally[catalog_index(Family::kSp, 2, "Ir")], 6);
  const auto a2 = well_definedness_check(Family::kSp, 4, 3, "A2");
  EXPECT_EQ(a2.representatives, 4);
  EXPECT_TRUE(a2.identical);
}

TEST(WellDefinedness, AllTypesAtQ3) {
  for (const auto& g : {Group{Family::kU, 2}, Group{Family::kU, 3}, Group{Family::kSp, 2},
                        Group{Family::kSp, 4}, Group{Family::kGL, 2}}) {
    for (const auto& e : type_catalog(g.f, g.n)) {
      const auto r = well_definedness_check(g.f, g.n, 3, e.label.name);
      EXPECT_TRUE(r.identical) << family_name(g.f) << g.n << " " << e.label.name;
    }
  }
}

}  // namespace
}  // namespace cbranch
