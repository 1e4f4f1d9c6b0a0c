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

#include "cbranch/export.hpp"

#include <algorithm>
#include <sstream>

namespace cbranch {

using nlohmann::ordered_json;

ordered_json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

ordered_json rational_to_json(const mpq_class& r) {
  mpq_class c = r;
  c.canonicalize();
  return ordered_json::array({integer_to_json(c.get_num()), integer_to_json(c.get_den())});
}

ordered_json poly_to_json(const PolyQ& p) {
  ordered_json out = ordered_json::array();
  for (const auto& c : p.coeffs()) out.push_back(rational_to_json(c));
  return out;
}

ordered_json value_to_json(const PolyQ& p) {
  if (p.is_zero()) return 0;
  if (p.is_constant() && p.coeff(0).get_den() == 1) return integer_to_json(p.coeff(0).get_num());
  return poly_to_json(p);
}

ordered_json matrix_to_json(const BranchingMatrix& b) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["family"] = family_name(b.family);
  j["n"] = b.n;
  if (b.q) {
    j["q"] = *b.q;
  } else {
    j["q"] = "formal";
  }
  ordered_json order = ordered_json::array();
  for (const auto& l : b.order) order.push_back(l.name);
  j["order"] = order;
  ordered_json rows = ordered_json::array();
  for (const auto& row : b.entries) {
    ordered_json r = ordered_json::array();
    for (const auto& e : row) r.push_back(b.q ? value_to_json(e) : poly_to_json(e));
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string matrix_to_csv(const BranchingMatrix& b) {
  std::ostringstream os;
  os << "branch\\parent";
  for (const auto& l : b.order) os << ',' << csv_cell(l.name);
  os << '\n';
  for (int r = 0; r < b.size(); ++r) {
    os << csv_cell(b.order[r].name);
    for (int s = 0; s < b.size(); ++s) os << ',' << csv_cell(b.entries[r][s].to_string());
    os << '\n';
  }
  return os.str();
}

std::string matrix_to_pretty(const BranchingMatrix& b) {
  std::vector<std::vector<std::string>> cells(b.size() + 1,
                                              std::vector<std::string>(b.size() + 1));
  cells[0][0] = "";
  for (int i = 0; i < b.size(); ++i) {
    cells[0][i + 1] = b.order[i].name;
    cells[i + 1][0] = b.order[i].name;
    for (int s = 0; s < b.size(); ++s) cells[i + 1][s + 1] = b.entries[i][s].to_string();
  }
  std::vector<size_t> width(b.size() + 1, 0);
  for (const auto& row : cells)
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    os << line << '\n';
  }
  return os.str();
}

ordered_json verify_report_to_json(const VerifyReport& r) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["family"] = family_name(r.family);
  j["n"] = r.n;
  j["q"] = r.q;
  j["ok"] = r.ok();
  ordered_json mm = ordered_json::array();
  for (const auto& m : r.mismatches) {
    mm.push_back({{"parent", m.parent}, {"branch", m.branch}, {"expected", m.expected},
                  {"got", m.got}});
  }
  j["mismatches"] = mm;
  j["verified_columns"] = r.verified_columns;
  j["vacuous_columns"] = r.vacuous_columns;
  j["merges"] = r.merges;
  ordered_json er = ordered_json::array();
  for (const auto& e : r.errata_applied) {
    er.push_back({{"row", e.row}, {"column", e.column}, {"printed", e.printed},
                  {"corrected", e.corrected}, {"evidence", e.evidence}});
  }
  j["errata_applied"] = er;
  j["column_sum_failures"] = r.column_sum_failures;
  return j;
}

ordered_json tpoly_to_json(const TPoly& t) {
  ordered_json out = ordered_json::array();
  for (const auto& c : t.coeffs()) out.push_back(poly_to_json(c));
  return out;
}

ordered_json series_to_json(const RatSeries& s, int expand_to) {
  ordered_json j;
  j["numerator"] = tpoly_to_json(s.numerator());
  j["denominator"] = tpoly_to_json(s.denominator());
  ordered_json ex = ordered_json::array();
  for (const auto& c : s.expand(expand_to)) ex.push_back(poly_to_json(c));
  j["expansion"] = ex;
  return j;
}

}  // namespace cbranch
