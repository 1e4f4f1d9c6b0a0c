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

#include "cbranch/branching.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "cbranch/error.hpp"

namespace cbranch {

int BranchingMatrix::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (order[i].name == name) return i;
  throw Error(ErrorCode::kInvalidParams, "no type " + name + " in matrix");
}

const PolyQ& BranchingMatrix::at(const std::string& row, const std::string& col) const {
  return entries[index_of(row)][index_of(col)];
}

BranchingMatrix BranchingMatrix::at_q(long long qv) const {
  BranchingMatrix out = *this;
  out.q = qv;
  const mpq_class x(static_cast<long>(qv));
  for (int r = 0; r < size(); ++r)
    for (int s = 0; s < size(); ++s) {
      const mpq_class v = entries[r][s].eval(x);
      if (v.get_den() != 1 || v < 0) {
        throw Error(ErrorCode::kInvalidParams,
                    "entry (" + order[r].name + ", " + order[s].name + ") = " +
                        entries[r][s].to_string() + " is not a non-negative integer at q = " +
                        std::to_string(qv));
      }
      out.entries[r][s] = PolyQ(v);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Printed tables, one string per printed row, cells separated by '&'.

namespace {

struct RawTable {
  Family family;
  int n;
  std::vector<std::string> header;
  std::vector<std::string> rows;
};

const std::vector<RawTable>& raw_tables() {
  static const std::vector<RawTable> tables = {
      {Family::kU, 2, {"(1,1)_1", "(2)_1", "(1)_1(1)_1", "(1)_2"},
       {
           "q+1&0&0&0",
           "q+1&q(q+1)&0&0",
           "binom(q+1,2)&0&(q+1)^2&0",
           "(q^2-q-2)/2&0&0&q^2-1",
       }},
      {Family::kU, 3,
       {"(1,1,1)_1", "(2,1)_1", "(1,1)_1(1)_1", "(3)_1", "(2)_1(1)_1", "(1)_1(1)_1(1)_1",
        "(1)_2(1)_1", "(1)_3"},
       {
           "q+1&0&0&0&0&0&0&0",
           "q+1&q(q+1)&0&0&0&0&0&0",
           "q(q+1)&0&(q+1)^2&0&0&0&0&0",
           "q+1&q^2-1&0&(q+1)q^2&0&0&0&0",
           "q(q+1)&(q+1)q^2&(q+1)^2&0&q^2(q+1)&0&0&0",
           "binom(q+1,3)&0&(q+1)binom(q+1,2)&0&0&(q+1)^3&0&0",
           "(q+1)(q^2-q-2)/2&0&(q+1)(q^2-q-2)/2&0&0&0&(q+1)(q^2-1)&0",
           "(q^3-q)/3&0&0&0&0&0&0&q^3+1",
       }},
      {Family::kSp, 2, {"C", "A1", "A2", "D", "Ir"},
       {
           "2&0&0&0&0",
           "2&2q&0&0&0",
           "2&0&2q&0&0",
           "(q-3)/2&0&0&q-1&0",
           "(q-1)/2&0&0&0&q+1",
       }},
      {Family::kSp, 4,
       {"A1", "A2", "A3", "A3'", "A4", "B1", "B2", "B3", "B4", "B5", "B6", "B7",
        "B8", "B9", "C1", "C2", "C3", "C4", "D1", "D2", "D3", "N1", "N2", "N3"},
       {
           "2&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "4&2q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "2&0&2q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "2&0&0&2q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "4&4q-4&0&0&2q^2&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "(q^2-1)/4&0&0&0&0&q^2+1&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "((q-1)^2)/4&0&0&0&0&0&q^2-1&0&0&0&q(q-2)&0&(q(q-1))/2&0&0&0&0&0&0&0&0&0&0&0",
           "(q^2-8q+15)/8&0&0&0&0&0&0&(q-1)^2&0&0&0&0&(q^2-3q+2)/2&0&0&0&(q^2-4q+3)/2&0&"
           "((q-3)^2)/2&0&0&0&0&0",
           "(q^2-4q+3)/8&0&0&0&0&0&0&0&(q+1)^2&0&q+1&0&0&0&(q^2-1)/2&0&0&0&((q-1)^2)/4&0&0&0&"
           "0&0",
           "(q^2-4q+3)/4&0&0&0&0&0&0&0&0&q^2-1&0&0&0&0&(q^2-2q-3)/2&0&((q-1)^2)/2&0&"
           "(q^2-4q+3)/2&0&0&0&0&0",
           "(q-1)/2&0&0&0&0&0&0&0&0&0&q+1&0&0&0&0&0&0&0&0&0&0&0&0&0",
           "(q-1)/2&0&0&(q^2-q)/2&0&0&0&0&0&0&q+1&q^2+q&0&0&0&0&0&0&0&0&0&0&0&0",
           "(q-3)/2&0&0&0&0&0&0&0&0&0&0&0&q-1&0&0&0&0&0&0&0&0&0&0&0",
           "(q-3)/2&0&(q^2-3q)/2&0&0&0&0&0&0&0&0&0&q-1&q^2-q&0&0&0&0&0&0&0&0&0&0",
           "q-1&0&0&0&0&0&0&0&0&0&0&0&0&0&2q+2&0&0&0&2q-2&0&0&0&0&0",
           "2q-2&q^2-q&0&0&0&0&0&0&0&0&0&0&0&0&4q+4&2q^2+2q&0&0&4q-4&q^2-q&0&0&0&0",
           "q-3&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&2(q-1)&0&2q-6&0&0&0&0&0",
           "2q-6&q^2-3q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&4q-4&2q^2-2q&4q-12&q^2-3q&0&0&0&0",
           "1&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&4&0&0&0&0&0",
           "4&2q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&16&4q&0&0&0&0",
           "4&4q&2q^2&2q^2&0&0&0&0&0&0&0&0&0&0&0&0&0&0&16&8q&4q^2&2q^2&0&0",
           "0&4q&2q^2-2q&2q^2-2q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&2q^2&0&0",
           "0&4&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&2q^3&0",
           "0&0&q^2+3q&q^2-q&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&0&q^2-q&0&2q^3",
       }},
      {Family::kGL, 2, {"(1,1)_1", "(2)_1", "(1)_1(1)_1", "(1)_2"},
       {
           "q-1&0&0&0",
           "q-1&q(q-1)&0&0",
           "(q-1)(q-2)/2&0&(q-1)^2&0",
           "q(q-1)/2&0&0&q^2-1",
       }},
      {Family::kGL, 3,
       {"(1,1,1)_1", "(2,1)_1", "(1,1)_1(1)_1", "(3)_1", "(2)_1(1)_1", "(1)_1(1)_1(1)_1",
        "(1)_2(1)_1", "(1)_3"},
       {
           "q-1&0&0&0&0&0&0&0",
           "q-1&q(q-1)&0&0&0&0&0&0",
           "(q-1)(q-2)&0&(q-1)^2&0&0&0&0&0",
           "q-1&q^2-1&0&q^2(q-1)&0&0&0&0",
           "(q-1)(q-2)&(q-1)(q-2)q&(q-1)^2&0&q(q-1)^2&0&0&0",
           "binom(q-1,3)&0&(q-1)binom(q-1,2)&0&0&(q-1)^3&0&0",
           "(q-1)binom(q,2)&0&(q-1)binom(q,2)&0&0&0&(q-1)^2(q+1)&0",
           "(q^3-q)/3&0&0&0&0&0&0&q^3-1",
       }},
  };
  return tables;
}

const RawTable& raw_table(Family family, int n) {
  for (const auto& t : raw_tables())
    if (t.family == family && t.n == n) return t;
  throw Error(ErrorCode::kUnsupportedFamily,
              "no branching table for " + family_name(family) + std::to_string(n));
}

std::vector<std::string> split_cells(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, '&')) out.push_back(cell);
  return out;
}

}  // namespace

bool has_symbolic_table(Family family, int n) {
  for (const auto& t : raw_tables())
    if (t.family == family && t.n == n) return true;
  return false;
}

const std::vector<Erratum>& branching_errata(Family family, int n) {
  static const std::vector<Erratum> none;
  static const std::vector<Erratum> u3 = {
      {"(2)_1(1)_1", "(2)_1(1)_1", "q^2(q+1)", "q(q+1)^2",
       "regular type: the only branch is the type itself, counted by its centralizer "
       "order q(q+1)^2"},
  };
  static const std::vector<Erratum> sp4 = {
      {"B3", "D1", "((q-3)^2)/2", "((q-3)^2)/4",
       "D1 centralizer is Sp2 x Sp2; B3 branches pair a D class with a D class, "
       "((q-3)/2)^2 of them"},
      {"N3", "N1", "q^2-q", "q^2(q-1)",
       "stated N3 branch count of an N1 pair; the column then sums to the class "
       "number of the N1 centralizer"},
  };
  if (family == Family::kU && n == 3) return u3;
  if (family == Family::kSp && n == 4) return sp4;
  raw_table(family, n);
  return none;
}

BranchingMatrix branching_matrix_symbolic(Family family, int n, TableVariant variant) {
  const RawTable& raw = raw_table(family, n);
  const auto& catalog = type_catalog(family, n);
  const int m = static_cast<int>(raw.header.size());
  if (m != static_cast<int>(catalog.size()) || static_cast<int>(raw.rows.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "table shape differs from catalog");
  }
  std::vector<std::vector<PolyQ>> grid(m, std::vector<PolyQ>(m));
  for (int r = 0; r < m; ++r) {
    const auto cells = split_cells(raw.rows[r]);
    if (static_cast<int>(cells.size()) != m) {
      throw Error(ErrorCode::kDimensionMismatch, "row " + std::to_string(r) + " has " +
                                                     std::to_string(cells.size()) + " cells");
    }
    for (int c = 0; c < m; ++c) grid[r][c] = PolyQ::parse(cells[c]);
  }
  // Columns index parents: the central parent's column lists the class counts.
  auto column_is_counts = [&](bool transposed) {
    for (int i = 0; i < m; ++i) {
      const PolyQ& v = transposed ? grid[0][i] : grid[i][0];
      const int k = catalog_index(family, n, raw.header[i]);
      if (v != catalog[k].class_count) return false;
    }
    return true;
  };
  if (!column_is_counts(false)) {
    if (!column_is_counts(true)) {
      throw Error(ErrorCode::kInvalidParams,
                  "neither the first row nor the first column equals the class counts");
    }
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) std::swap(grid[r][c], grid[c][r]);
  }
  BranchingMatrix out;
  out.family = family;
  out.n = n;
  for (const auto& e : catalog) out.order.push_back(e.label);
  out.entries.assign(m, std::vector<PolyQ>(m));
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[i] = catalog_index(family, n, raw.header[i]);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out.entries[pos[r]][pos[c]] = grid[r][c];
  if (variant == TableVariant::kCorrected) {
    for (const Erratum& e : branching_errata(family, n)) {
      PolyQ& cell = out.entries[out.index_of(e.row)][out.index_of(e.column)];
      if (cell != PolyQ::parse(e.printed)) {
        throw Error(ErrorCode::kInvalidParams,
                    "erratum for (" + e.row + ", " + e.column + ") does not match the table");
      }
      cell = PolyQ::parse(e.corrected);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Empirical columns

BranchColumn branch_column(Classifier& classifier, const std::string& parent,
                           const std::vector<Mat>& parent_tuple) {
  const auto start = std::chrono::steady_clock::now();
  const GroupSpec& spec = classifier.spec();
  const auto& catalog = type_catalog(spec.family, spec.n);
  BranchColumn col;
  col.parent = parent;
  col.parent_tuple = parent_tuple;
  col.tally.assign(catalog.size(), 0);
  const GroupElements z = centralizer_local(spec, parent_tuple);
  col.centralizer_order = z.size();
  const auto classes = conjugacy_classes(z);
  col.class_count = static_cast<long long>(classes.size());
  for (const ConjClass& c : classes) {
    const Classification t = c.members.size() == 1
                                 ? classifier.classify_centralizer(z)
                                 : classifier.classify_centralizer(stabilizer(z, c.representative));
    ++col.tally[catalog_index(spec.family, spec.n, t.label.name)];
    if (t.equivalent.size() > 1 &&
        std::find(col.merges.begin(), col.merges.end(), t.equivalent) == col.merges.end()) {
      col.merges.push_back(t.equivalent);
    }
  }
  col.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return col;
}

namespace {

bool is_vacuous(const TypeCatalogEntry& e, long long q) {
  return !e.parent_only && e.class_count.eval(mpq_class(static_cast<long>(q))) == 0;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to jobs threads; rethrows the first
// exception after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (error) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min(jobs, count));
  std::vector<std::thread> threads;
  for (int i = 1; i < t; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EmpiricalBranching branching_matrix_empirical(Family family, int n, long long q,
                                              const EmpiricalOptions& options) {
  const auto& catalog = type_catalog(family, n);
  const int m = static_cast<int>(catalog.size());
  Classifier classifier(family, n, q);
  std::vector<int> wanted;
  for (int i = 0; i < m; ++i) {
    const std::string& nm = catalog[i].label.name;
    if (options.columns.empty() ||
        std::find(options.columns.begin(), options.columns.end(), nm) != options.columns.end()) {
      wanted.push_back(i);
    }
  }
  for (const std::string& nm : options.columns) catalog_index(family, n, nm);
  std::vector<BranchColumn> cols(wanted.size());
  std::mutex progress_mu;
  parallel_for(static_cast<int>(wanted.size()), resolve_jobs(options.jobs), [&](int w) {
    const TypeCatalogEntry& e = catalog[wanted[w]];
    if (is_vacuous(e, q)) {
      cols[w].parent = e.label.name;
      cols[w].vacuous = true;
      cols[w].tally.assign(m, 0);
    } else {
      const auto tuple = canonical_representative(e.label, q, parameter_space(e.label, q)[0]);
      cols[w] = branch_column(classifier, e.label.name, tuple);
    }
    if (options.progress) {
      std::lock_guard<std::mutex> lock(progress_mu);
      std::ostringstream os;
      os << e.label.to_string() << " q=" << q;
      if (cols[w].vacuous) {
        os << ": vacuous";
      } else {
        os << ": |Z|=" << cols[w].centralizer_order << ", " << cols[w].class_count
           << " branches, " << cols[w].seconds << " s";
      }
      options.progress(os.str());
    }
  });
  EmpiricalBranching out;
  out.matrix.family = family;
  out.matrix.n = n;
  out.matrix.q = q;
  for (const auto& e : catalog) out.matrix.order.push_back(e.label);
  out.matrix.entries.assign(m, std::vector<PolyQ>(m));
  for (size_t w = 0; w < wanted.size(); ++w)
    for (int r = 0; r < m; ++r) out.matrix.entries[r][wanted[w]] = PolyQ(cols[w].tally[r]);
  out.columns = std::move(cols);
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

VerifyReport compare_branching(const BranchingMatrix& symbolic, const EmpiricalBranching& emp) {
  VerifyReport rep;
  rep.family = symbolic.family;
  rep.n = symbolic.n;
  rep.q = emp.matrix.q.value_or(0);
  const int m = symbolic.size();
  const mpq_class qv(static_cast<long>(rep.q));
  UnionFind uf(m);
  for (const auto& col : emp.columns) {
    for (const auto& set : col.merges) {
      if (std::find(rep.merges.begin(), rep.merges.end(), set) == rep.merges.end())
        rep.merges.push_back(set);
      for (size_t i = 1; i < set.size(); ++i)
        uf.unite(catalog_index(symbolic.family, symbolic.n, set[0]),
                 catalog_index(symbolic.family, symbolic.n, set[i]));
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int r = 0; r < m; ++r) groups[uf.find(r)].push_back(r);
  for (const Erratum& e : branching_errata(symbolic.family, symbolic.n)) {
    const PolyQ printed = PolyQ::parse(e.printed);
    const PolyQ corrected = PolyQ::parse(e.corrected);
    if (printed.eval(qv) != corrected.eval(qv)) rep.errata_applied.push_back(e);
  }
  for (const auto& col : emp.columns) {
    const int s = symbolic.index_of(col.parent);
    if (col.vacuous) {
      rep.vacuous_columns.push_back(col.parent);
      continue;
    }
    mpq_class sum = 0;
    for (int r = 0; r < m; ++r) sum += symbolic.entries[r][s].eval(qv);
    if (sum != static_cast<long>(col.class_count)) rep.column_sum_failures.push_back(col.parent);
    bool ok = true;
    for (const auto& [root, members] : groups) {
      mpq_class expected = 0;
      long long got = 0;
      for (int r : members) {
        expected += symbolic.entries[r][s].eval(qv);
        got += col.tally[r];
      }
      if (expected != static_cast<long>(got)) {
        ok = false;
        Mismatch mm;
        mm.parent = col.parent;
        for (int r : members) mm.branch.push_back(symbolic.order[r].name);
        mm.expected = expected.get_str();
        mm.got = std::to_string(got);
        rep.mismatches.push_back(std::move(mm));
      }
    }
    if (ok) rep.verified_columns.push_back(col.parent);
  }
  return rep;
}

VerifyReport verify_branching(Family family, int n, long long q, const EmpiricalOptions& options) {
  const BranchingMatrix sym = branching_matrix_symbolic(family, n);
  const EmpiricalBranching emp = branching_matrix_empirical(family, n, q, options);
  return compare_branching(sym, emp);
}

WellDefinednessReport well_definedness_check(Family family, int n, long long q,
                                             const std::string& type, int samples) {
  WellDefinednessReport rep;
  rep.type = type;
  const TypeLabel label = make_label(family, n, type);
  auto params = parameter_space(label, q);
  const auto& entry = type_catalog(family, n)[catalog_index(family, n, type)];
  if (is_vacuous(entry, q)) return rep;
  if (samples > 0 && static_cast<int>(params.size()) > samples) params.resize(samples);
  Classifier classifier(family, n, q);
  for (const auto& p : params) {
    const BranchColumn col =
        branch_column(classifier, type, canonical_representative(label, q, p));
    ++rep.representatives;
    if (rep.representatives == 1) {
      rep.reference_tally = col.tally;
    } else if (col.tally != rep.reference_tally) {
      rep.identical = false;
      std::vector<std::string> ps;
      for (int v : p) ps.push_back(std::to_string(v));
      rep.differing.push_back("[" + join(ps, ",") + "]");
    }
  }
  return rep;
}

}  // namespace cbranch
