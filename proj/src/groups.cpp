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

#include "cbranch/groups.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "cbranch/error.hpp"

namespace cbranch {

std::string family_name(Family f) {
  switch (f) {
    case Family::kGL: return "gl";
    case Family::kU: return "u";
    case Family::kSp: return "sp";
    case Family::kOplus: return "o+";
    case Family::kOminus: return "o-";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "gl" || s == "GL") return Family::kGL;
  if (s == "u" || s == "U") return Family::kU;
  if (s == "sp" || s == "Sp") return Family::kSp;
  if (s == "o+" || s == "oplus" || s == "O+") return Family::kOplus;
  if (s == "o-" || s == "ominus" || s == "O-") return Family::kOminus;
  throw Error(ErrorCode::kUnsupportedFamily, "unknown family '" + s + "'");
}

namespace {

void check_dims(Family family, int n) {
  bool ok = false;
  switch (family) {
    case Family::kGL: ok = n >= 1 && n <= 4; break;
    case Family::kU: ok = n >= 1 && n <= 4; break;
    case Family::kSp: ok = n == 2 || n == 4; break;
    case Family::kOplus:
    case Family::kOminus: ok = n == 2; break;
  }
  if (!ok) {
    throw Error(ErrorCode::kUnsupportedFamily,
                family_name(family) + " in dimension " + std::to_string(n));
  }
}

const Field& entry_field(Family family, long long q) {
  const Field& fq = field_of_order(q);
  if (q > 11) throw Error(ErrorCode::kLimitExceeded, "group computations need q <= 11");
  return family == Family::kU ? quadratic_extension(fq) : fq;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

GroupSpec make_group_spec(Family family, int n, long long q) {
  check_dims(family, n);
  const Field& f = entry_field(family, q);
  GroupSpec s;
  s.family = family;
  s.n = n;
  s.q = static_cast<int>(q);
  s.field = &f;
  Mat form(f, n);
  switch (family) {
    case Family::kGL:
      form = Mat::identity(f, n);
      break;
    case Family::kU:
      for (int i = 0; i < n; ++i) form(i, n - 1 - i) = 1;
      break;
    case Family::kSp:
      for (int b = 0; b < n; b += 2) {
        form(b, b + 1) = 1;
        form(b + 1, b) = f.neg(1);
      }
      break;
    case Family::kOplus:
      form(0, 1) = form(1, 0) = 1;
      break;
    case Family::kOminus:
      form(0, 0) = 1;
      form(1, 1) = f.neg(f.primitive());
      break;
  }
  s.form = form;
  return s;
}

GroupSpec make_group_spec_with_form(Family family, const Mat& form, long long q) {
  GroupSpec s = make_group_spec(family, form.n, q);
  if (form.field != s.field) throw Error(ErrorCode::kWrongField, "form over the wrong field");
  s.form = form;
  return s;
}

long long group_order(Family family, int n, long long q) {
  check_dims(family, n);
  long long r = 1;
  switch (family) {
    case Family::kGL:
      for (int i = 0; i < n; ++i) r *= ipow(q, n) - ipow(q, i);
      return r;
    case Family::kU:
      r = ipow(q, n * (n - 1) / 2);
      for (int i = 1; i <= n; ++i) r *= ipow(q, i) - (i % 2 ? -1 : 1);
      return r;
    case Family::kSp: {
      const int l = n / 2;
      r = ipow(q, l * l);
      for (int i = 1; i <= l; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case Family::kOplus: return 2 * (q - 1);
    case Family::kOminus: return 2 * (q + 1);
  }
  return 0;
}

bool is_unitary(const Mat& a, const Mat& form) {
  if (a.n != form.n) throw Error(ErrorCode::kDimensionMismatch, "is_unitary");
  return transpose(a) * form * conj(a) == form;
}

bool is_symplectic(const Mat& a, const Mat& form) {
  if (a.n != form.n) throw Error(ErrorCode::kDimensionMismatch, "is_symplectic");
  return a * form * transpose(a) == form;
}

bool is_orthogonal(const Mat& a, const Mat& form) {
  if (a.n != form.n) throw Error(ErrorCode::kDimensionMismatch, "is_orthogonal");
  return a * form * transpose(a) == form;
}

namespace {

// Early-exit membership test used in the hot enumeration loops.
bool member_fast(const GroupSpec& s, const Mat& x) {
  const Field& f = *s.field;
  const int n = s.n, sz = f.size();
  const Code* mt = f.mul_table();
  const Code* at = f.add_table();
  switch (s.family) {
    case Family::kGL:
      return det(x) != 0;
    case Family::kSp:
    case Family::kOplus:
    case Family::kOminus: {
      Code y[kMaxDim * kMaxDim];
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Code acc = 0;
          for (int k = 0; k < n; ++k) acc = at[acc * sz + mt[x.a[i * n + k] * sz + s.form.a[k * n + j]]];
          y[i * n + j] = acc;
        }
        for (int j = 0; j <= i; ++j) {
          Code acc = 0;
          for (int k = 0; k < n; ++k) acc = at[acc * sz + mt[y[i * n + k] * sz + x.a[j * n + k]]];
          if (acc != s.form.a[i * n + j]) return false;
        }
      }
      // Lower triangle matched; the form is (skew-)symmetric and so is x form x^T.
      return true;
    }
    case Family::kU: {
      Code y[kMaxDim * kMaxDim];
      Code xc[kMaxDim * kMaxDim];
      for (int i = 0; i < n * n; ++i) xc[i] = f.frob(x.a[i]);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Code acc = 0;
          for (int k = 0; k < n; ++k) acc = at[acc * sz + mt[x.a[k * n + i] * sz + s.form.a[k * n + j]]];
          y[i * n + j] = acc;
        }
        for (int j = 0; j < n; ++j) {
          Code acc = 0;
          for (int k = 0; k < n; ++k) acc = at[acc * sz + mt[y[i * n + k] * sz + xc[k * n + j]]];
          if (acc != s.form.a[i * n + j]) return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_member(const GroupSpec& spec, const Mat& a) {
  if (a.n != spec.n) throw Error(ErrorCode::kDimensionMismatch, "is_member");
  if (a.field != spec.field) return false;
  switch (spec.family) {
    case Family::kGL: return is_invertible(a);
    case Family::kU: return is_unitary(a, spec.form);
    case Family::kSp: return is_symplectic(a, spec.form);
    default: return is_orthogonal(a, spec.form);
  }
}

// ---------------------------------------------------------------------------
// GroupElements

struct GroupElements::Cache {
  std::mutex mu;
  bool have_gens = false;
  std::vector<int> gens;
  bool have_orders = false;
  std::vector<long long> orders;
  bool have_sigs = false;
  std::vector<int> sigs;
};

namespace {

struct SignatureIntern {
  std::mutex mu;
  std::map<std::vector<int>, int> ids;
};

int intern_signature(const std::vector<int>& sig) {
  static SignatureIntern* t = new SignatureIntern;
  std::lock_guard<std::mutex> lock(t->mu);
  auto it = t->ids.find(sig);
  if (it != t->ids.end()) return it->second;
  const int id = static_cast<int>(t->ids.size());
  t->ids.emplace(sig, id);
  return id;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Closure of the given generators inside h, as a membership mask.
std::vector<char> closure_mask(const GroupElements& h, const std::vector<int>& gens) {
  std::vector<char> in(h.size(), 0);
  const int id = h.index_of(Mat::identity(*h.spec().field, h.spec().n));
  if (id < 0) throw Error(ErrorCode::kNotAMember, "subgroup lacks the identity");
  std::vector<int> queue = {id};
  in[id] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const Mat& x = h[queue[qi]];
    for (int g : gens) {
      const int k = h.index_of(x * h[g]);
      if (k < 0) throw Error(ErrorCode::kNotAMember, "set is not closed under products");
      if (!in[k]) {
        in[k] = 1;
        queue.push_back(k);
      }
    }
  }
  return in;
}

std::vector<int> greedy_generators(const GroupElements& h, const std::vector<int>& order) {
  std::vector<int> gens;
  std::vector<char> in = closure_mask(h, gens);
  for (int i : order) {
    if (in[i]) continue;
    gens.push_back(i);
    in = closure_mask(h, gens);
  }
  return gens;
}

}  // namespace

GroupElements::GroupElements(GroupSpec spec, std::vector<Mat> elements)
    : spec_(std::move(spec)), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  index_ = std::make_shared<std::unordered_map<MatKey, int, MatKeyHash>>();
  index_->reserve(elems_.size() * 2);
  for (size_t i = 0; i < elems_.size(); ++i) (*index_)[mat_key(elems_[i])] = static_cast<int>(i);
  cache_ = std::make_shared<Cache>();
}

int GroupElements::index_of(const Mat& m) const {
  if (!index_) return -1;
  auto it = index_->find(mat_key(m));
  return it == index_->end() ? -1 : it->second;
}

bool GroupElements::same_set(const GroupElements& o) const {
  return elems_ == o.elems_;
}

const std::vector<int>& GroupElements::generators() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->have_gens) {
    std::vector<int> order(elems_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    cache_->gens = greedy_generators(*this, order);
    cache_->have_gens = true;
  }
  return cache_->gens;
}

bool GroupElements::is_abelian() const {
  const auto& g = generators();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (elems_[g[i]] * elems_[g[j]] != elems_[g[j]] * elems_[g[i]]) return false;
  return true;
}

const std::vector<long long>& GroupElements::element_orders() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->have_orders) {
    cache_->orders.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) cache_->orders[i] = mat_order(elems_[i]);
    cache_->have_orders = true;
  }
  return cache_->orders;
}

const std::vector<int>& GroupElements::signature_ids() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->have_sigs) {
    cache_->sigs.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) {
      cache_->sigs[i] = intern_signature(similarity_signature(elems_[i]));
    }
    cache_->have_sigs = true;
  }
  return cache_->sigs;
}

std::uint64_t GroupElements::fingerprint() const {
  std::uint64_t h = mix64(elems_.size());
  for (const Mat& m : elems_) {
    MatKey k = mat_key(m);
    h += mix64(k.lo ^ mix64(k.hi));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_gram_basis(const Mat& metric, const Mat& gram, bool hermitian,
                         const std::function<bool(const Mat& rows)>& visit) {
  const Field& f = *metric.field;
  const int n = metric.n, sz = f.size();
  long long nvec = 1;
  for (int i = 0; i < n; ++i) nvec *= sz;
  std::vector<std::array<Code, kMaxDim>> vecs(nvec), pre(nvec);
  std::vector<Code> self(nvec);
  for (long long v = 0; v < nvec; ++v) {
    long long x = v;
    for (int i = 0; i < n; ++i) {
      vecs[v][i] = static_cast<Code>(x % sz);
      x /= sz;
    }
    std::array<Code, kMaxDim> w{};
    for (int i = 0; i < n; ++i) w[i] = hermitian ? f.frob(vecs[v][i]) : vecs[v][i];
    for (int i = 0; i < n; ++i) {
      Code acc = 0;
      for (int j = 0; j < n; ++j) acc = f.add(acc, f.mul(metric(i, j), w[j]));
      pre[v][i] = acc;
    }
    Code s = 0;
    for (int i = 0; i < n; ++i) s = f.add(s, f.mul(vecs[v][i], pre[v][i]));
    self[v] = s;
  }
  auto pairing = [&](long long u, long long v) {
    Code acc = 0;
    for (int i = 0; i < n; ++i) acc = f.add(acc, f.mul(vecs[u][i], pre[v][i]));
    return acc;
  };
  std::vector<std::vector<long long>> cand(n);
  for (int i = 0; i < n; ++i)
    for (long long v = 0; v < nvec; ++v)
      if (self[v] == gram(i, i)) cand[i].push_back(v);
  std::vector<long long> chosen(n);
  bool stop = false;
  std::function<void(int)> rec = [&](int level) {
    if (stop) return;
    if (level == n) {
      Mat rows(f, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows(i, j) = vecs[chosen[i]][j];
      if (!visit(rows)) stop = true;
      return;
    }
    for (long long v : cand[level]) {
      bool ok = true;
      for (int j = 0; j < level && ok; ++j) {
        ok = pairing(chosen[j], v) == gram(j, level) && pairing(v, chosen[j]) == gram(level, j);
      }
      if (!ok) continue;
      chosen[level] = v;
      rec(level + 1);
      if (stop) return;
    }
  };
  rec(0);
}

GroupElements enumerate_group(const GroupSpec& spec, long long limit) {
  const long long order = group_order(spec.family, spec.n, spec.q);
  if (order > limit) {
    throw Error(ErrorCode::kLimitExceeded, "group of order " + std::to_string(order) +
                                               " exceeds limit " + std::to_string(limit));
  }
  std::vector<Mat> out;
  out.reserve(order);
  const Field& f = *spec.field;
  const int n = spec.n;
  if (spec.family == Family::kGL) {
    // Columns chosen one at a time, each outside the span of the previous.
    long long nvec = 1;
    for (int i = 0; i < n; ++i) nvec *= f.size();
    Mat m(f, n);
    std::function<void(int)> rec = [&](int col) {
      if (col == n) {
        out.push_back(m);
        return;
      }
      for (long long v = 0; v < nvec; ++v) {
        long long x = v;
        for (int i = 0; i < n; ++i) {
          m(i, col) = static_cast<Code>(x % f.size());
          x /= f.size();
        }
        std::vector<std::vector<Code>> rows;
        for (int c = 0; c <= col; ++c) {
          std::vector<Code> r(n);
          for (int i = 0; i < n; ++i) r[i] = m(i, c);
          rows.push_back(r);
        }
        if (rank_of_rows(f, rows, n) == col + 1) rec(col + 1);
      }
      for (int i = 0; i < n; ++i) m(i, col) = 0;
    };
    rec(0);
  } else {
    const bool herm = spec.family == Family::kU;
    for_each_gram_basis(spec.form, spec.form, herm, [&](const Mat& rows) {
      out.push_back(herm ? transpose(rows) : rows);
      return true;
    });
  }
  if (static_cast<long long>(out.size()) != order) {
    throw Error(ErrorCode::kNotAMember, "enumeration produced " + std::to_string(out.size()) +
                                            " elements, expected " + std::to_string(order));
  }
  return GroupElements(spec, std::move(out));
}

GroupElements centralizer(const GroupElements& g, const std::vector<Mat>& tuple) {
  for (const Mat& t : tuple)
    if (!g.contains(t)) throw Error(ErrorCode::kNotAMember, "tuple element not in group");
  std::vector<Mat> out;
  for (const Mat& x : g.elements()) {
    bool ok = true;
    for (const Mat& t : tuple)
      if (x * t != t * x) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return GroupElements(g.spec(), std::move(out));
}

std::vector<Mat> intertwiners(const std::vector<Mat>& xs, const std::vector<Mat>& ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "intertwiners need matching lists");
  }
  const Field& f = *xs[0].field;
  const int n = xs[0].n;
  std::vector<std::vector<Code>> rows;
  for (size_t t = 0; t < xs.size(); ++t) {
    const Mat& x = xs[t];
    const Mat& y = ys[t];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        // (X x - y X)_{ij} = sum_k X_{ik} x_{kj} - y_{ik} X_{kj}
        std::vector<Code> row(n * n, 0);
        for (int k = 0; k < n; ++k) {
          row[i * n + k] = f.add(row[i * n + k], x(k, j));
          row[k * n + j] = f.sub(row[k * n + j], y(i, k));
        }
        rows.push_back(row);
      }
    }
  }
  std::vector<Mat> basis;
  for (const auto& v : nullspace(f, rows, n * n)) {
    Mat m(f, n);
    for (int i = 0; i < n * n; ++i) m.a[i] = v[i];
    basis.push_back(m);
  }
  return basis;
}

void for_each_in_span(const Field& f, int n, const std::vector<Mat>& basis,
                      const std::function<bool(const Mat&)>& visit) {
  const int d = static_cast<int>(basis.size());
  const int sz = f.size();
  std::vector<int> digit(d, 0);
  Mat x(f, n);
  // Precomputed multiples c * basis[l].
  std::vector<std::vector<Mat>> mult(d, std::vector<Mat>(sz));
  for (int l = 0; l < d; ++l)
    for (int c = 0; c < sz; ++c) mult[l][c] = scale(basis[l], static_cast<Code>(c));
  const int nn = n * n;
  const Code* at = f.add_table();
  while (true) {
    if (!visit(x)) return;
    int l = 0;
    while (l < d) {
      const int old = digit[l];
      const int nw = (old + 1) % sz;
      digit[l] = nw;
      const Mat& mo = mult[l][old];
      const Mat& mn = mult[l][nw];
      for (int i = 0; i < nn; ++i) x.a[i] = at[f.sub(x.a[i], mo.a[i]) * sz + mn.a[i]];
      if (nw != 0) break;
      ++l;
    }
    if (l == d) return;
  }
}

namespace {

long long span_size(const Field& f, size_t d, long long cap) {
  long long total = 1;
  for (size_t i = 0; i < d; ++i) {
    total *= f.size();
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

GroupElements centralizer_local(const GroupSpec& spec, const std::vector<Mat>& tuple,
                                long long candidate_limit) {
  for (const Mat& t : tuple)
    if (!is_member(spec, t)) throw Error(ErrorCode::kNotAMember, "tuple element not in group");
  std::vector<Mat> nontrivial;
  for (const Mat& t : tuple)
    if (!t.is_scalar()) nontrivial.push_back(t);
  if (nontrivial.empty()) return enumerate_group(spec);
  std::vector<Mat> basis = intertwiners(nontrivial, nontrivial);
  const long long total = span_size(*spec.field, basis.size(), candidate_limit);
  if (total > candidate_limit) {
    throw Error(ErrorCode::kLimitExceeded, "commutant of dimension " +
                                               std::to_string(basis.size()) + " is too large");
  }
  std::vector<Mat> out;
  for_each_in_span(*spec.field, spec.n, basis, [&](const Mat& x) {
    if (member_fast(spec, x)) out.push_back(x);
    return true;
  });
  return GroupElements(spec, std::move(out));
}

std::vector<ConjClass> conjugacy_classes(const GroupElements& g) {
  const auto& gens = g.generators();
  std::vector<Mat> ginv;
  for (int i : gens) ginv.push_back(inverse(g[i]));
  std::vector<char> seen(g.size(), 0);
  std::vector<ConjClass> out;
  for (long long i = 0; i < g.size(); ++i) {
    if (seen[i]) continue;
    ConjClass c;
    c.representative = g[i];
    std::vector<int> queue = {static_cast<int>(i)};
    seen[i] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const Mat& y = g[queue[qi]];
      for (size_t s = 0; s < gens.size(); ++s) {
        const int k = g.index_of(g[gens[s]] * y * ginv[s]);
        if (k < 0) throw Error(ErrorCode::kNotAMember, "conjugate left the group");
        if (!seen[k]) {
          seen[k] = 1;
          queue.push_back(k);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    c.members = std::move(queue);
    c.centralizer_order = g.size() / static_cast<long long>(c.members.size());
    out.push_back(std::move(c));
  }
  return out;
}

GroupElements stabilizer(const GroupElements& h, const Mat& x) {
  std::vector<Mat> out;
  for (const Mat& z : h.elements())
    if (z * x == x * z) out.push_back(z);
  return GroupElements(h.spec(), std::move(out));
}

bool are_conjugate_in_group(const GroupSpec& spec, const Mat& x, const Mat& y,
                            long long candidate_limit) {
  if (similarity_signature(x) != similarity_signature(y)) return false;
  std::vector<Mat> basis = intertwiners({x}, {y});
  if (span_size(*spec.field, basis.size(), candidate_limit) > candidate_limit) {
    throw Error(ErrorCode::kLimitExceeded, "intertwiner space too large");
  }
  bool found = false;
  for_each_in_span(*spec.field, spec.n, basis, [&](const Mat& p) {
    if (member_fast(spec, p)) found = true;
    return !found;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Ambient conjugacy

namespace {

class AmbientSearch {
 public:
  AmbientSearch(const GroupElements& h1, const GroupElements& h2, AmbientSearchStats* stats)
      : h1_(h1), h2_(h2), stats_(stats), f_(*h1.spec().field), n_(h1.spec().n) {}

  bool run() {
    const auto& s1 = h1_.signature_ids();
    const auto& s2 = h2_.signature_ids();
    std::map<int, std::vector<int>> bucket1;
    for (size_t i = 0; i < s2.size(); ++i) buckets_[s2[i]].push_back(static_cast<int>(i));
    for (size_t i = 0; i < s1.size(); ++i) bucket1[s1[i]].push_back(static_cast<int>(i));
    if (bucket1.size() != buckets_.size()) return reject();
    for (const auto& [sig, v] : bucket1) {
      auto it = buckets_.find(sig);
      if (it == buckets_.end() || it->second.size() != v.size()) return reject();
    }
    if (h1_.is_abelian() != h2_.is_abelian()) return reject();
    // Generators of h1 chosen greedily by how few candidate images they have.
    std::vector<int> order(h1_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return bucket1[s1[a]].size() < bucket1[s1[b]].size();
    });
    gens_ = greedy_generators(h1_, order);
    images_.assign(gens_.size(), -1);
    std::vector<Mat> basis;
    for (int i = 0; i < n_ * n_; ++i) {
      Mat e(f_, n_);
      e.a[i] = 1;
      basis.push_back(e);
    }
    return dfs(0, basis);
  }

 private:
  bool reject() {
    if (stats_) stats_->prefilter_rejected = true;
    return false;
  }

  bool dfs(size_t level, const std::vector<Mat>& basis) {
    if (stats_) ++stats_->nodes;
    if (level == gens_.size()) return has_invertible(basis);
    const auto& s1 = h1_.signature_ids();
    const auto& s2 = h2_.signature_ids();
    const Mat& g = h1_[gens_[level]];
    for (int c : buckets_[s1[gens_[level]]]) {
      const Mat& img = h2_[c];
      bool ok = true;
      for (size_t j = 0; j < level && ok; ++j) {
        const int p1 = h1_.index_of(g * h1_[gens_[j]]);
        const int p2 = h2_.index_of(img * h2_[images_[j]]);
        ok = p1 >= 0 && p2 >= 0 && s1[p1] == s2[p2];
      }
      if (!ok) continue;
      std::vector<Mat> next = restrict_basis(basis, g, img);
      if (next.empty()) continue;
      images_[level] = c;
      if (dfs(level + 1, next)) return true;
    }
    return false;
  }

  // Elements X of span(basis) with X g = img X.
  std::vector<Mat> restrict_basis(const std::vector<Mat>& basis, const Mat& g, const Mat& img) {
    const int d = static_cast<int>(basis.size());
    const int nn = n_ * n_;
    std::vector<std::vector<Code>> rows(nn, std::vector<Code>(d));
    for (int l = 0; l < d; ++l) {
      Mat r = basis[l] * g - img * basis[l];
      for (int i = 0; i < nn; ++i) rows[i][l] = r.a[i];
    }
    std::vector<Mat> out;
    for (const auto& v : nullspace(f_, rows, d)) {
      Mat x(f_, n_);
      for (int l = 0; l < d; ++l)
        if (v[l]) x = x + scale(basis[l], v[l]);
      out.push_back(x);
    }
    return out;
  }

  bool has_invertible(const std::vector<Mat>& basis) {
    for (const Mat& b : basis)
      if (is_invertible(b)) return true;
    const long long total = span_size(f_, basis.size(), 200000);
    if (total <= 200000) {
      bool found = false;
      for_each_in_span(f_, n_, basis, [&](const Mat& x) {
        found = is_invertible(x);
        return !found;
      });
      return found;
    }
    std::mt19937_64 rng(0x5eed + basis.size());
    std::uniform_int_distribution<int> pick(0, f_.size() - 1);
    for (int s = 0; s < 4096; ++s) {
      Mat x(f_, n_);
      for (const Mat& b : basis) x = x + scale(b, static_cast<Code>(pick(rng)));
      if (is_invertible(x)) return true;
    }
    bool found = false;
    for_each_in_span(f_, n_, basis, [&](const Mat& x) {
      found = is_invertible(x);
      return !found;
    });
    return found;
  }

  const GroupElements& h1_;
  const GroupElements& h2_;
  AmbientSearchStats* stats_;
  const Field& f_;
  int n_;
  std::map<int, std::vector<int>> buckets_;
  std::vector<int> gens_;
  std::vector<int> images_;
};

}  // namespace

bool are_conjugate_in_ambient(const GroupElements& h1, const GroupElements& h2,
                              AmbientSearchStats* stats) {
  if (h1.spec().n != h2.spec().n || h1.spec().field != h2.spec().field) {
    throw Error(ErrorCode::kDimensionMismatch, "subgroups of different ambient groups");
  }
  if (h1.size() != h2.size()) {
    if (stats) stats->prefilter_rejected = true;
    return false;
  }
  if (h1.same_set(h2)) return true;
  AmbientSearch search(h1, h2, stats);
  return search.run();
}

// ---------------------------------------------------------------------------
// Transport of forms

std::optional<Mat> find_transport(const GroupSpec& spec, const Mat& h) {
  if (spec.family == Family::kGL) return Mat::identity(*spec.field, spec.n);
  std::optional<Mat> out;
  if (spec.family == Family::kU) {
    for_each_gram_basis(spec.form, h, true, [&](const Mat& rows) {
      out = transpose(rows);
      return false;
    });
  } else {
    for_each_gram_basis(h, spec.form, false, [&](const Mat& rows) {
      out = rows;
      return false;
    });
  }
  return out;
}

Mat transport_element(const Mat& p, const Mat& m) { return p * m * inverse(p); }

}  // namespace cbranch
