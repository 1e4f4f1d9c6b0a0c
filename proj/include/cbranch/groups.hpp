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

#ifndef CBRANCH_GROUPS_HPP_
#define CBRANCH_GROUPS_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cbranch/field.hpp"
#include "cbranch/mat.hpp"

namespace cbranch {

enum class Family { kGL, kU, kSp, kOplus, kOminus };

std::string family_name(Family f);  // "gl", "u", "sp", "o+", "o-"
Family parse_family(const std::string& s);

struct GroupSpec {
  Family family = Family::kGL;
  int n = 0;
  int q = 0;
  const Field* field = nullptr;  // entry field: F_{q^2} for U, F_q otherwise
  Mat form;                      // identity for GL
};

// Pinned forms: antidiagonal ones for U, [[0,1],[-1,0]] for Sp_2, diag(J, J)
// with J = [[0,1],[-1,0]] for Sp_4, [[0,1],[1,0]] for O2+, diag(1, -gamma)
// for O2- with gamma the least generator of F_q*.
GroupSpec make_group_spec(Family family, int n, long long q);
GroupSpec make_group_spec_with_form(Family family, const Mat& form, long long q);
long long group_order(Family family, int n, long long q);

bool is_unitary(const Mat& a, const Mat& form);
bool is_symplectic(const Mat& a, const Mat& form);
bool is_orthogonal(const Mat& a, const Mat& form);
bool is_member(const GroupSpec& spec, const Mat& a);

// A finite set of matrices closed under products, kept in sorted order.
class GroupElements {
 public:
  GroupElements() = default;
  GroupElements(GroupSpec spec, std::vector<Mat> elements);

  const GroupSpec& spec() const { return spec_; }
  long long size() const { return static_cast<long long>(elems_.size()); }
  const std::vector<Mat>& elements() const { return elems_; }
  const Mat& operator[](size_t i) const { return elems_[i]; }
  int index_of(const Mat& m) const;
  bool contains(const Mat& m) const { return index_of(m) >= 0; }
  bool same_set(const GroupElements& o) const;

  // Greedy generating set: scan elements in order, keep those outside the
  // subgroup generated so far.
  const std::vector<int>& generators() const;
  bool is_abelian() const;
  // Multiplicative order of each element, by index.
  const std::vector<long long>& element_orders() const;
  // Interned similarity-signature id of each element, by index.
  const std::vector<int>& signature_ids() const;
  // Order-independent fingerprint of the element set.
  std::uint64_t fingerprint() const;

 private:
  struct Cache;
  GroupSpec spec_;
  std::vector<Mat> elems_;
  std::shared_ptr<std::unordered_map<MatKey, int, MatKeyHash>> index_;
  std::shared_ptr<Cache> cache_;
};

struct ConjClass {
  Mat representative;  // least member
  std::vector<int> members;
  long long centralizer_order = 0;
};

constexpr long long kDefaultGroupLimit = 1000000;
constexpr long long kDefaultCandidateLimit = 100000000;

GroupElements enumerate_group(const GroupSpec& spec, long long limit = kDefaultGroupLimit);
GroupElements centralizer(const GroupElements& g, const std::vector<Mat>& tuple);
// Common centralizer in the ambient group without enumerating it: scans the
// commutant algebra of the tuple and keeps group members.
GroupElements centralizer_local(const GroupSpec& spec, const std::vector<Mat>& tuple,
                                long long candidate_limit = kDefaultCandidateLimit);
// Calls visit on every linear combination of basis, in odometer order with the
// first coefficient varying fastest; visit returns false to stop early.
void for_each_in_span(const Field& f, int n, const std::vector<Mat>& basis,
                      const std::function<bool(const Mat&)>& visit);

std::vector<ConjClass> conjugacy_classes(const GroupElements& g);
// Subgroup of h fixing x under conjugation.
GroupElements stabilizer(const GroupElements& h, const Mat& x);

// Basis of {X : X x_i = y_i X for all i}.
std::vector<Mat> intertwiners(const std::vector<Mat>& xs, const std::vector<Mat>& ys);
// Is there g in the group of spec with g x g^-1 = y?
bool are_conjugate_in_group(const GroupSpec& spec, const Mat& x, const Mat& y,
                            long long candidate_limit = kDefaultCandidateLimit);

struct AmbientSearchStats {
  long long nodes = 0;
  bool prefilter_rejected = false;
};
// Is there x in GL_n(F) with x H1 x^-1 = H2?
bool are_conjugate_in_ambient(const GroupElements& h1, const GroupElements& h2,
                              AmbientSearchStats* stats = nullptr);

// Visits every list of n vectors v_1..v_n in F^n with pairing(v_i, v_j) =
// gram(i, j), where pairing(u, v) = u^T metric v (bilinear) or
// u^T metric conj(v) (hermitian). The callback returns false to stop.
void for_each_gram_basis(const Mat& metric, const Mat& gram, bool hermitian,
                         const std::function<bool(const Mat& rows)>& visit);
// A matrix p carrying an invariant form h of some element to the pinned form
// of spec, so that p m p^-1 lies in the group of spec. Returns nullopt if the
// forms are inequivalent.
std::optional<Mat> find_transport(const GroupSpec& spec, const Mat& h);
Mat transport_element(const Mat& p, const Mat& m);

}  // namespace cbranch

#endif  // CBRANCH_GROUPS_HPP_
