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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [--known-fail N,M,...]

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbranch/branching.hpp"
#include "cbranch/error.hpp"
#include "cbranch/groups.hpp"
#include "cbranch/symcount.hpp"
#include "cbranch/upolys.hpp"

namespace {

using namespace cbranch;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("note " + what); }
};

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string matrix_string(const BranchingMatrix& b) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < b.size(); ++r) {
    os << (r ? "," : "") << '[';
    for (int s = 0; s < b.size(); ++s) os << (s ? "," : "") << b.entries[r][s].to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

void report_verify(Outcome& o, const VerifyReport& r, const std::string& name) {
  o.check(r.ok(), name + ": " + std::to_string(r.verified_columns.size()) + " columns match, " +
                      std::to_string(r.mismatches.size()) + " mismatching cells");
  for (const auto& v : r.vacuous_columns) o.note(name + " vacuous column " + v);
  for (const auto& m : r.merges) o.note(name + " indistinguishable types " + join(m, "+"));
  for (const auto& e : r.errata_applied) {
    o.note(name + " erratum " + e.row + "/" + e.column + ": printed " + e.printed +
           ", used " + e.corrected);
  }
  for (const auto& m : r.mismatches) {
    o.note(name + " mismatch parent " + m.parent + " branch " + join(m.branch, "+") +
           ": table " + m.expected + ", enumeration " + m.got);
  }
  for (const auto& c : r.column_sum_failures) o.note(name + " table column sum fails for " + c);
}

Outcome criterion1() {
  Outcome o;
  const auto sym = branching_matrix_symbolic(Family::kU, 2);
  for (long long q : {3, 5}) {
    const auto emp = branching_matrix_empirical(Family::kU, 2, q);
    const auto expected = sym.at_q(q);
    o.check(emp.matrix.entries == expected.entries,
            "U2 q=" + std::to_string(q) + " " + matrix_string(emp.matrix));
  }
  const auto q3 = branching_matrix_empirical(Family::kU, 2, 3);
  o.check(matrix_string(q3.matrix) == "[[4,0,0,0],[4,12,0,0],[6,0,16,0],[2,0,0,8]]",
          "U2 q=3 equals the worked example");
  return o;
}

Outcome criterion2() {
  Outcome o;
  o.check(group_order(Family::kU, 3, 3) == 24192, "|U3(F_3)| = 24192");
  report_verify(o, verify_branching(Family::kU, 3, 3), "U3 q=3");
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (long long q : {3, 5, 7}) report_verify(o, verify_branching(Family::kSp, 2, q), "Sp2 q=" + std::to_string(q));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto r3 = verify_branching(Family::kSp, 4, 3);
  report_verify(o, r3, "Sp4 q=3");
  const std::set<std::string> expected_vacuous = {"B8", "B9", "C3", "C4"};
  std::set<std::string> vac(r3.vacuous_columns.begin(), r3.vacuous_columns.end());
  bool all = true;
  for (const auto& v : expected_vacuous) all = all && vac.count(v);
  o.check(all, "Sp4 q=3 columns B8 B9 C3 C4 reported vacuous");
  EmpiricalOptions spot;
  spot.columns = {"A2", "A3", "A3'", "B6", "D1", "N1", "N2", "N3"};
  const auto sym = branching_matrix_symbolic(Family::kSp, 4);
  const auto emp5 = branching_matrix_empirical(Family::kSp, 4, 5, spot);
  report_verify(o, compare_branching(sym, emp5), "Sp4 q=5 spot columns");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::vector<std::string> u2 = {
      "q^2+2q+1", "q^4+3q^3+5q^2+5q+2", "q^6+4q^5+10q^4+17q^3+16q^2+7q+1",
      "q^8+5q^7+17q^6+39q^5+53q^4+43q^3+23q^2+9q+2"};
  const std::vector<std::string> u3 = {
      "q^3+2q^2+3q+2", "q^6+3q^5+8q^4+15q^3+15q^2+8q+2",
      "q^9+4q^8+14q^7+37q^6+66q^5+81q^4+64q^3+29q^2+7q+1",
      "q^12+5q^11+22q^10+74q^9+178q^8+313q^7+395q^6+357q^5+241q^4+126q^3+49q^2+13q+2"};
  const std::vector<std::string> sp2 = {"q+4", "q^2+8q+9", "q^3+16q^2+19q+16",
                                        "q^4+32q^3+38q^2+32q+33"};
  auto run = [&](Family f, int n, const std::vector<std::string>& rows, const std::string& name) {
    const auto c = simultaneous_classes_upto(branching_matrix_symbolic(f, n), 4);
    for (int k = 1; k <= 4; ++k) {
      o.check(c[k] == PolyQ::parse(rows[k - 1]), name + " k=" + std::to_string(k) + ": " + c[k].to_string());
    }
  };
  run(Family::kU, 2, u2, "c_u(2,k)");
  run(Family::kU, 3, u3, "c_u(3,k)");
  run(Family::kSp, 2, sp2, "c_s(2,k)");
  return o;
}

TPoly tpoly(const std::vector<std::string>& coeffs) {
  std::vector<PolyQ> c;
  for (const auto& s : coeffs) c.push_back(PolyQ::parse(s));
  return TPoly(std::move(c));
}

TPoly linear_product(const std::vector<std::string>& roots) {
  TPoly out(PolyQ(1));
  for (const auto& r : roots) out = out * tpoly({"1", "-(" + r + ")"});
  return out;
}

Outcome criterion6() {
  Outcome o;
  const auto bu = branching_matrix_symbolic(Family::kU, 2);
  const auto hu = generating_series(bu);
  o.check(hu.numerator() == tpoly({"1", "-2q^2-2q", "q^4+2q^3+q^2", "-q^3-3q^2-3q-1"}),
          "h_u numerator equals the printed expanded numerator");
  o.check(hu.denominator() == linear_product({"q+1", "q^2-1", "q^2+q", "q^2+2q+1"}),
          "h_u denominator equals (qt+t-1)(q^2t-t-1)(q^2t+qt-1)(q^2t+2qt+t-1)");
  const TPoly factored_display = tpoly({"1", "-2q(q-1)", "q^2(q+1)^2", "-(q-1)^3"});
  if (hu.numerator() != factored_display) {
    o.note("the factored h_u numerator display differs from its own expansion in the t and t^3 terms");
  }
  const auto bg = branching_matrix_symbolic(Family::kGL, 2);
  const auto hg = generating_series(bg);
  o.check(hg.numerator() == tpoly({"1", "-2q(q-1)", "q^2(q-1)^2", "-(q-1)^3"}),
          "h_G numerator equals 1 - 2q(q-1)t + q^2(q-1)^2t^2 - (q-1)^3t^3");
  o.check(hg.denominator() == linear_product({"q-1", "(q-1)^2", "q^2-q", "q^2-1"}),
          "h_G denominator equals (1-(q-1)t)(1-(q-1)^2t)(1-(q^2-q)t)(1-(q^2-1)t)");
  const auto cu = simultaneous_classes_upto(bu, 8);
  const auto cg = simultaneous_classes_upto(bg, 8);
  bool series_ok = true;
  for (int k = 0; k <= 8; ++k) series_ok = series_ok && hu.coefficient(k) == cu[k] && hg.coefficient(k) == cg[k];
  o.check(series_ok, "series coefficients equal 1 B^k e_1 for k <= 8");
  return o;
}

Outcome criterion7() {
  Outcome o;
  struct Case {
    Family f;
    int n;
    long long q;
    const char* name;
  };
  for (const auto& c : {Case{Family::kSp, 2, 3, "Sp2(F_3)"}, Case{Family::kSp, 2, 5, "Sp2(F_5)"},
                        Case{Family::kU, 2, 3, "U2(F_3)"}}) {
    const auto g = enumerate_group(make_group_spec(c.f, c.n, c.q));
    const auto b = branching_matrix_symbolic(c.f, c.n).at_q(c.q);
    for (int k : {2, 3}) {
      const auto r = lescot_consistency(g, b, k);
      o.check(r.agree(), std::string(c.name) + " k=" + std::to_string(k) + ": matrix " +
                             r.via_matrix.get_str() + ", recurrence " + r.via_recurrence.get_str() +
                             ", census " + r.via_census.get_str());
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (long long q : {3, 5}) {
    const Field& ext = quadratic_extension(field_of_order(q));
    const long long expected[] = {q + 1, (q * q - q - 2) / 2, (q * q * q - q) / 3};
    for (int d = 1; d <= 3; ++d) {
      const auto polys = enumerate_u_irreducible(d, ext);
      o.check(static_cast<long long>(polys.size()) == expected[d - 1] &&
                  count_u_irreducible(d, q) == expected[d - 1],
              "q=" + std::to_string(q) + " degree " + std::to_string(d) + ": " +
                  std::to_string(polys.size()) + " U-irreducible polynomials");
    }
  }
  const Field& f9 = quadratic_extension(field_of_order(3));
  for (int n = 1; n <= 2; ++n) {
    FPoly prod(f9, {1});
    for (int d = 1; d <= n; ++d) {
      if (n % d) continue;
      for (const auto& f : enumerate_u_irreducible(d, f9)) prod = prod * f;
    }
    const int e = n == 1 ? 4 : 8;
    o.check(prod == FPoly::monomial(f9, e) - FPoly(f9, {1}),
            "a_" + std::to_string(n) + "(t) = t^" + std::to_string(e) + " - 1 at q=3");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& r : duality_check(6)) {
    o.check(r.ok(), "k=" + std::to_string(r.k) + ": c_u = " + r.c_u.to_string());
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  struct G {
    Family f;
    int n;
    const char* name;
  };
  const std::vector<G> groups = {{Family::kU, 2, "U2"}, {Family::kU, 3, "U3"},
                                 {Family::kSp, 2, "Sp2"}, {Family::kSp, 4, "Sp4"}};
  for (const auto& g : groups) {
    const auto sym = branching_matrix_symbolic(g.f, g.n);
    const auto& cat = type_catalog(g.f, g.n);
    bool first = true;
    for (int r = 0; r < sym.size(); ++r) first = first && sym.entries[r][0] == cat[r].class_count;
    o.check(first, std::string(g.name) + " first-column law");

    const auto emp = branching_matrix_empirical(g.f, g.n, 3);
    const auto cmp = compare_branching(sym, emp);
    bool emp_sums = true;
    for (const auto& c : emp.columns) {
      long long s = 0;
      for (long long t : c.tally) s += t;
      emp_sums = emp_sums && s == c.class_count;
    }
    o.check(emp_sums, std::string(g.name) + " column-sum law, enumerated matrix at q=3");
    o.check(cmp.column_sum_failures.empty(),
            std::string(g.name) + " column-sum law, printed table at q=3" +
                (cmp.column_sum_failures.empty() ? "" : ": fails for " + join(cmp.column_sum_failures)));

    bool diag = true;
    for (const auto& c : emp.columns) {
      if (c.vacuous || c.parent_tuple.empty()) continue;
      const auto z = centralizer_local(make_group_spec(g.f, g.n, 3), c.parent_tuple);
      if (!z.is_abelian()) continue;
      const int s = sym.index_of(c.parent);
      for (int r = 0; r < sym.size(); ++r) {
        const PolyQ want = r == s ? cat[s].centralizer_order : PolyQ();
        diag = diag && sym.entries[r][s] == want;
      }
    }
    o.check(diag, std::string(g.name) + " abelian-centralizer diagonal law");

    const auto elems = enumerate_group(make_group_spec(g.f, g.n, 3));
    bool orbit = true;
    for (const auto& cl : conjugacy_classes(elems)) {
      orbit = orbit && static_cast<long long>(cl.members.size()) * cl.centralizer_order == elems.size();
    }
    o.check(orbit, std::string(g.name) + " orbit-stabilizer per class at q=3");

    bool wd = true;
    std::vector<std::string> bad;
    for (const auto& e : cat) {
      const auto r = well_definedness_check(g.f, g.n, 3, e.label.name);
      if (!r.identical) {
        wd = false;
        bad.push_back(e.label.name);
      }
    }
    o.check(wd, std::string(g.name) + " well-definedness across all classes of each type at q=3" +
                    (bad.empty() ? "" : ": differs for " + join(bad)));
  }
  for (auto [f, n, name] : {std::tuple{Family::kU, 2, "BU2"}, std::tuple{Family::kU, 3, "BU3"},
                            std::tuple{Family::kSp, 2, "BSp2"}}) {
    const auto c = simultaneous_classes_upto(branching_matrix_symbolic(f, n), 20);
    bool nn = true;
    for (const auto& p : c) nn = nn && p.has_integer_coefficients() && p.has_nonnegative_coefficients();
    o.check(nn, std::string(name) + " c-polynomials have non-negative integer coefficients for k <= 20");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--known-fail" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) known_fail.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--known-fail N,M,...]\n";
      return 1;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"U2 branching table, q = 3, 5", criterion1},
      {"U3 branching table, q = 3", criterion2},
      {"Sp2 branching table, q = 3, 5, 7", criterion3},
      {"Sp4 branching table, q = 3 and q = 5 spot columns", criterion4},
      {"counting polynomials c_u(2,k), c_u(3,k), c_s(2,k), k <= 4", criterion5},
      {"generating functions h_u(2,t), h_G(2,t)", criterion6},
      {"commuting probability three-way agreement", criterion7},
      {"U-irreducible polynomial counts and product identity", criterion8},
      {"(q-1) <-> (q+1) duality, k <= 6", criterion9},
      {"property suites", criterion10},
  };
  int unexpected = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = known_fail.count(id) > 0;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
         << " (" << secs << " s)";
    if (!o.pass && known) line << " [known failure, see README]";
    if (o.pass && known) line << " [listed as known failure but passed]";
    std::cout << line.str() << '\n';
    for (const auto& d : o.details) std::cout << "    " << d << '\n';
    std::cout.flush();
    if (o.pass == known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
