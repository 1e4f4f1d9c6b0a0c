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

#include "cbranch/classtypes.hpp"
#include "cbranch/error.hpp"
#include "cbranch/groups.hpp"

namespace cbranch {
namespace {

struct Group {
  Family f;
  int n;
};
const std::vector<Group> kAll = {{Family::kU, 2},  {Family::kU, 3},  {Family::kSp, 2},
                                 {Family::kSp, 4}, {Family::kGL, 2}, {Family::kGL, 3},
                                 {Family::kOplus, 2}, {Family::kOminus, 2}};

PolyQ group_order_poly(Family f, int n) {
  const PolyQ q = PolyQ::var();
  switch (f) {
    case Family::kU:
      return n == 2 ? q * (q + 1) * (q * q - 1)
                    : q.pow(3) * (q + 1) * (q * q - 1) * (q.pow(3) + 1);
    case Family::kSp:
      return n == 2 ? q * (q * q - 1) : q.pow(4) * (q.pow(4) - 1) * (q * q - 1);
    case Family::kGL:
      return n == 2 ? (q * q - 1) * (q * q - q)
                    : (q.pow(3) - 1) * (q.pow(3) - q) * (q.pow(3) - q * q);
    case Family::kOplus:
      return PolyQ(2) * (q - 1);
    case Family::kOminus:
      return PolyQ(2) * (q + 1);
  }
  return {};
}

TEST(ClassTypes, CatalogSizesAndOrder) {
  EXPECT_EQ(type_catalog(Family::kU, 2).size(), 4u);
  EXPECT_EQ(type_catalog(Family::kU, 3).size(), 8u);
  EXPECT_EQ(type_catalog(Family::kSp, 2).size(), 5u);
  EXPECT_EQ(type_catalog(Family::kSp, 4).size(), 24u);
  std::vector<std::string> u2;
  for (const auto& e : type_catalog(Family::kU, 2)) u2.push_back(e.label.name);
  EXPECT_EQ(u2, (std::vector<std::string>{"(1,1)_1", "(2)_1", "(1)_1(1)_1", "(1)_2"}));
  std::vector<std::string> sp2;
  for (const auto& e : type_catalog(Family::kSp, 2)) sp2.push_back(e.label.name);
  EXPECT_EQ(sp2, (std::vector<std::string>{"C", "A1", "A2", "D", "Ir"}));
  int parent_only = 0;
  for (const auto& e : type_catalog(Family::kSp, 4)) parent_only += e.parent_only;
  EXPECT_EQ(parent_only, 3);
  try {
    type_catalog(Family::kSp, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFamily);
  }
}

TEST(ClassTypes, CatalogExamples) {
  const auto& u2 = type_catalog(Family::kU, 2);
  EXPECT_EQ(u2[2].class_count, binomial(PolyQ::var() + 1, 2));
  EXPECT_EQ(u2[3].class_count, PolyQ::parse("(q^2-q-2)/2"));
  const auto& sp2 = type_catalog(Family::kSp, 2);
  EXPECT_EQ(sp2[3].class_count, PolyQ::parse("(q-3)/2"));
  EXPECT_EQ(sp2[3].centralizer_order, PolyQ::parse("q-1"));
  const auto& sp4 = type_catalog(Family::kSp, 4);
  EXPECT_EQ(sp4[catalog_index(Family::kSp, 4, "B8")].class_count.eval_integer(3), 0);
  EXPECT_EQ(sp4[catalog_index(Family::kSp, 4, "N1")].centralizer_order, PolyQ::parse("4q^3"));
  EXPECT_EQ(sp4[catalog_index(Family::kSp, 4, "N2")].centralizer_order, PolyQ::parse("2q^3"));
  EXPECT_EQ(sp4[catalog_index(Family::kSp, 4, "A3'")].centralizer_order,
            PolyQ::parse("2q^3(q+1)"));
}

TEST(ClassTypes, ClassTotals) {
  auto total = [](Family f, int n) {
    PolyQ s;
    for (const auto& e : type_catalog(f, n))
      if (!e.parent_only) s += e.class_count;
    return s;
  };
  EXPECT_EQ(total(Family::kU, 2), PolyQ::parse("q^2+2q+1"));
  EXPECT_EQ(total(Family::kU, 3), PolyQ::parse("q^3+2q^2+3q+2"));
  EXPECT_EQ(total(Family::kSp, 2), PolyQ::parse("q+4"));
  EXPECT_EQ(total(Family::kGL, 2), PolyQ::parse("q^2-1"));
  EXPECT_EQ(total(Family::kSp, 4).eval_integer(3), 34);
}

TEST(ClassTypes, ClassEquationAndIntegrality) {
  for (const auto& g : kAll) {
    const PolyQ order = group_order_poly(g.f, g.n);
    for (long q : {3L, 5L, 7L, 9L, 11L}) {
      mpq_class sum = 0;
      for (const auto& e : type_catalog(g.f, g.n)) {
        const mpq_class cc = e.class_count.eval(q), z = e.centralizer_order.eval(q);
        EXPECT_EQ(cc.get_den(), 1);
        EXPECT_GE(cc, 0);
        EXPECT_EQ(z.get_den(), 1);
        EXPECT_GT(z, 0);
        if (!e.parent_only) sum += cc * order.eval(q) / z;
      }
      EXPECT_EQ(sum, order.eval(q)) << family_name(g.f) << g.n << " q=" << q;
    }
  }
}

// Representatives are members, have the catalog centralizer order and classify
// back to their own type, for every parameter vector at q = 3.
TEST(ClassTypes, RepresentativesRoundTrip) {
  for (const auto& g : kAll) {
    Classifier classifier(g.f, g.n, 3);
    for (const auto& e : type_catalog(g.f, g.n)) {
      for (const auto& p : parameter_space(e.label, 3)) {
        const auto tuple = canonical_representative(e.label, 3, p);
        for (const auto& m : tuple) EXPECT_TRUE(is_member(classifier.spec(), m)) << e.label.name;
        const auto z = centralizer_local(classifier.spec(), tuple);
        EXPECT_EQ(z.size(), e.centralizer_order.eval_integer(3).get_si()) << e.label.name;
        const auto cls = classifier.classify_centralizer(z);
        EXPECT_TRUE(std::count(cls.equivalent.begin(), cls.equivalent.end(), e.label.name))
            << e.label.name << " classified as " << cls.label.name;
      }
    }
  }
}

TEST(ClassTypes, InvalidParams) {
  const auto label = make_label(Family::kU, 2, "(1)_1(1)_1");
  auto p = parameter_space(label, 3).front();
  p[1] = p[0];
  try {
    canonical_representative(label, 3, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
  }
}

TEST(ClassTypes, CentralIdentity) {
  Classifier c(Family::kU, 2, 3);
  const Mat id = Mat::identity(*c.spec().field, 2);
  EXPECT_EQ(c.classify_tuple_local({id}).label.name, "(1,1)_1");
}

TEST(ClassTypes, NewTypeN1FromA2Branch) {
  Classifier c(Family::kSp, 4, 3);
  const auto n1 = make_label(Family::kSp, 4, "N1");
  const auto tuple = canonical_representative(n1, 3, parameter_space(n1, 3).front());
  ASSERT_EQ(tuple.size(), 2u);
  EXPECT_EQ(centralizer_local(c.spec(), tuple).size(), 108);
  const auto cls = c.classify_tuple_local(tuple);
  EXPECT_TRUE(std::count(cls.equivalent.begin(), cls.equivalent.end(), "N1"));
}

// The displayed N2 and N3 subgroups are GL4-conjugate (README, "Known
// discrepancies"), so the classifier reports them as one equivalence set.
TEST(ClassTypes, N2AndN3AreAmbientConjugate) {
  const auto n2 = displayed_new_type_subgroup("N2", 3);
  const auto n3 = displayed_new_type_subgroup("N3", 3);
  EXPECT_EQ(n2.size(), 54);
  EXPECT_EQ(n3.size(), 54);
  EXPECT_TRUE(are_conjugate_in_ambient(n2, n3));
  Classifier c(Family::kSp, 4, 3);
  const auto cls = c.classify_centralizer(*c.reference(catalog_index(Family::kSp, 4, "N2")));
  EXPECT_EQ(cls.equivalent, (std::vector<std::string>{"N2", "N3"}));
}

TEST(ClassTypes, Sp2A1AndA2ShareCentralizers) {
  Classifier c(Family::kSp, 2, 5);
  const auto cls = c.classify_centralizer(*c.reference(catalog_index(Family::kSp, 2, "A2")));
  EXPECT_EQ(cls.equivalent, (std::vector<std::string>{"A1", "A2"}));
}

// Choice of the fixed nilpotent data in the U canonical forms does not change
// the class.
TEST(ClassTypes, UCanonicalFormChoiceIsIrrelevant) {
  for (long long q : {3, 5}) {
    for (auto [n, name] : {std::pair{2, "(2)_1"}, std::pair{3, "(2,1)_1"}, std::pair{3, "(3)_1"},
                           std::pair{3, "(2)_1(1)_1"}}) {
      if (n == 3 && q == 5) continue;
      const auto label = make_label(Family::kU, n, name);
      const auto spec = make_group_spec(Family::kU, n, q);
      const auto params = parameter_space(label, q).front();
      const auto variants = u_canonical_form_variants(label, q, params);
      ASSERT_GE(variants.size(), 1u);
      for (const auto& v : variants) {
        EXPECT_TRUE(is_member(spec, v));
        EXPECT_TRUE(are_conjugate_in_group(spec, variants.front(), v)) << name << " q=" << q;
      }
    }
  }
}

}  // namespace
}  // namespace cbranch
