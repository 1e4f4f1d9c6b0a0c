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

#ifndef CBRANCH_CLASSTYPES_HPP_
#define CBRANCH_CLASSTYPES_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cbranch/groups.hpp"
#include "cbranch/polyq.hpp"

namespace cbranch {

// Type names are ASCII: "(2,1)_1" and "(1)_2(1)_1" for U and GL, "C", "A1",
// "A2", "D", "Ir" for Sp2, "A1" .. "A3'" .. "N3" for Sp4, and "central",
// "semisimple", "rotation", "reflection" for the 2x2 orthogonal groups.
struct TypeLabel {
  Family family = Family::kGL;
  int n = 0;
  std::string name;
  bool operator==(const TypeLabel&) const = default;
  std::string to_string() const;
};

struct TypeCatalogEntry {
  TypeLabel label;
  PolyQ class_count;
  PolyQ centralizer_order;
  // Types that occur only as commuting pairs, never as single classes.
  bool parent_only = false;
};

// Catalog in the fixed order used by the branching tables.
const std::vector<TypeCatalogEntry>& type_catalog(Family family, int n);
int catalog_index(Family family, int n, const std::string& name);
TypeLabel make_label(Family family, int n, const std::string& name);

// Field data shared by all representatives at a fixed q. gamma is the least
// generator of F_q^*, theta the least generator of F_{q^2}^* with
// theta^{q+1} = gamma, and eta = theta^{q-1}.
struct TypeContext {
  long long q = 0;
  const Field* fq = nullptr;
  const Field* fq2 = nullptr;
  Code gamma = 0;
  Code theta = 0;  // in F_{q^2}
  Code eta = 0;    // in F_{q^2}
  std::vector<Code> units;      // F_q^* in code order
  std::vector<Code> norm_one;   // a in F_{q^2} with a^{q+1} = 1, code order
  std::vector<Code> lambdas;    // gamma^i, i = 1 .. (q-3)/2
  std::vector<Code> traces;     // eta^i + eta^-i in F_q, i = 1 .. (q-1)/2
};
const TypeContext& type_context(long long q);

// Every valid parameter vector of a type at q, in canonical order. The first
// entry selects the representative used as the type's parent.
std::vector<std::vector<int>> parameter_space(const TypeLabel& label, long long q);

// A tuple of matrices in the group of make_group_spec(family, n, q) whose
// common centralizer has the given type: one matrix for class types, a
// commuting pair for N1, N2, N3.
std::vector<Mat> canonical_representative(const TypeLabel& label, long long q,
                                          const std::vector<int>& params);

// For U types with a fixed nilpotent part ("(2)_1", "(2,1)_1", "(3)_1",
// "(2)_1(1)_1"): the canonical form for every admissible choice of that part.
std::vector<Mat> u_canonical_form_variants(const TypeLabel& label, long long q,
                                           const std::vector<int>& params);

// A commuting tuple of the type for use as a classification reference when
// the type has no classes at q (for example B4 at q = 3). Empty if none.
std::vector<Mat> fallback_reference_tuple(const TypeLabel& label, long long q);

// Reference centralizers for N1, N2, N3 built verbatim from their displayed
// shapes, in the coordinates where they are displayed.
GroupElements displayed_new_type_subgroup(const std::string& name, long long q);

struct Classification {
  TypeLabel label;
  // All catalog labels whose reference centralizer is ambient-conjugate to
  // the tuple's centralizer, in catalog order; label is the first.
  std::vector<std::string> equivalent;
};

// Classifies commuting tuples of one group at a fixed q. References are built
// lazily and results cached by centralizer; safe for concurrent use.
class Classifier {
 public:
  Classifier(Family family, int n, long long q);

  const GroupSpec& spec() const { return spec_; }
  Classification classify_centralizer(const GroupElements& h);
  Classification classify_tuple(const GroupElements& g, const std::vector<Mat>& tuple);
  // Centralizer computed without enumerating the group.
  Classification classify_tuple_local(const std::vector<Mat>& tuple);
  // Reference centralizer of a catalog entry, or nullptr if the type has no
  // reference at this q.
  const GroupElements* reference(int index);

 private:
  struct Ref {
    bool built = false;
    std::unique_ptr<GroupElements> group;
    std::vector<long long> order_profile;
  };
  GroupSpec spec_;
  const std::vector<TypeCatalogEntry>* catalog_;
  std::vector<long long> orders_;  // centralizer orders at q, -1 if not integral
  std::vector<Ref> refs_;
  std::mutex ref_mu_;
  std::mutex cache_mu_;
  std::map<std::pair<std::uint64_t, long long>, Classification> cache_;
};

std::vector<long long> sorted_element_orders(const GroupElements& h);

}  // namespace cbranch

#endif  // CBRANCH_CLASSTYPES_HPP_
