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

#ifndef CBRANCH_BRANCHING_HPP_
#define CBRANCH_BRANCHING_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cbranch/classtypes.hpp"
#include "cbranch/polyq.hpp"

namespace cbranch {

// entries[r][s] counts branches of type order[r] from a parent of type
// order[s]. Formal matrices have q == nullopt; fixed-q matrices hold
// constant polynomials.
struct BranchingMatrix {
  Family family = Family::kGL;
  int n = 0;
  std::optional<long long> q;
  std::vector<TypeLabel> order;
  std::vector<std::vector<PolyQ>> entries;

  int size() const { return static_cast<int>(order.size()); }
  int index_of(const std::string& name) const;
  const PolyQ& at(const std::string& row, const std::string& col) const;
  // Specializes a formal matrix; throws InvalidParams on a non-integral or
  // negative entry.
  BranchingMatrix at_q(long long q) const;
};

// A printed cell replaced by the value the accompanying proposition states.
struct Erratum {
  std::string row;
  std::string column;
  std::string printed;
  std::string corrected;
  std::string evidence;
};

enum class TableVariant { kCorrected, kPrinted };

// Groups with a printed table: (U,2), (U,3), (Sp,2), (Sp,4), (GL,2), (GL,3).
bool has_symbolic_table(Family family, int n);
const std::vector<Erratum>& branching_errata(Family family, int n);
BranchingMatrix branching_matrix_symbolic(Family family, int n,
                                          TableVariant variant = TableVariant::kCorrected);

// Branch counts of one parent tuple, tallied by the first label of each
// branch's classification.
struct BranchColumn {
  std::string parent;
  std::vector<Mat> parent_tuple;
  bool vacuous = false;  // no classes of the parent type at q
  long long centralizer_order = 0;
  long long class_count = 0;  // conjugacy classes of the centralizer
  std::vector<long long> tally;  // by catalog index
  // Equivalence sets with more than one label met while classifying.
  std::vector<std::vector<std::string>> merges;
  double seconds = 0;
};

struct EmpiricalOptions {
  int jobs = 0;  // 0: hardware concurrency
  // Parent types to compute; empty means all.
  std::vector<std::string> columns;
  std::function<void(const std::string&)> progress;
};

struct EmpiricalBranching {
  BranchingMatrix matrix;
  std::vector<BranchColumn> columns;  // catalog order, computed columns only
};

BranchColumn branch_column(Classifier& classifier, const std::string& parent,
                           const std::vector<Mat>& parent_tuple);
EmpiricalBranching branching_matrix_empirical(Family family, int n, long long q,
                                              const EmpiricalOptions& options = {});

struct Mismatch {
  std::string parent;
  std::vector<std::string> branch;  // merged row group
  std::string expected;
  std::string got;
};

struct VerifyReport {
  Family family = Family::kGL;
  int n = 0;
  long long q = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> vacuous_columns;
  std::vector<std::string> verified_columns;
  std::vector<std::vector<std::string>> merges;
  std::vector<Erratum> errata_applied;
  // Column-sum law on the symbolic side: columns whose entries at q do not
  // add up to the number of classes of the parent's centralizer.
  std::vector<std::string> column_sum_failures;
  bool ok() const { return mismatches.empty(); }
};

// Compares empirical columns with the corrected symbolic table at q. Rows whose
// types are indistinguishable (shared equivalence set) are compared summed.
VerifyReport verify_branching(Family family, int n, long long q,
                              const EmpiricalOptions& options = {});
VerifyReport compare_branching(const BranchingMatrix& symbolic, const EmpiricalBranching& emp);

struct WellDefinednessReport {
  std::string type;
  int representatives = 0;
  bool identical = true;
  std::vector<long long> reference_tally;
  std::vector<std::string> differing;  // parameter vectors whose tally differs
};

// Recomputes the column for up to samples parameter vectors of the type (all
// when samples <= 0) and compares tallies.
WellDefinednessReport well_definedness_check(Family family, int n, long long q,
                                             const std::string& type, int samples = 0);

}  // namespace cbranch

#endif  // CBRANCH_BRANCHING_HPP_
