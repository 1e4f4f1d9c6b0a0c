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

#include "cbranch/symcount.hpp"

#include <algorithm>
#include <functional>

#include "cbranch/error.hpp"

namespace cbranch {

// ---------------------------------------------------------------------------
// TPoly

TPoly::TPoly(const PolyQ& c) {
  if (!c.is_zero()) c_.push_back(c);
}

TPoly::TPoly(std::vector<PolyQ> coeffs) : c_(std::move(coeffs)) { normalize(); }

TPoly TPoly::t() { return TPoly(std::vector<PolyQ>{PolyQ(), PolyQ(1)}); }

void TPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TPoly TPoly::operator+(const TPoly& o) const {
  std::vector<PolyQ> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return TPoly(std::move(r));
}

TPoly TPoly::operator-(const TPoly& o) const { return *this + (-o); }

TPoly TPoly::operator-() const {
  std::vector<PolyQ> r = c_;
  for (auto& x : r) x = -x;
  return TPoly(std::move(r));
}

TPoly TPoly::operator*(const TPoly& o) const {
  if (is_zero() || o.is_zero()) return TPoly();
  std::vector<PolyQ> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return TPoly(std::move(r));
}

TPoly TPoly::pow(int e) const {
  TPoly r(PolyQ(1)), b = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

namespace {

TPoly shifted(const PolyQ& c, int k) {
  std::vector<PolyQ> v(k + 1);
  v[k] = c;
  return TPoly(std::move(v));
}

}  // namespace

TPoly TPoly::exact_div(const TPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::kSingularSystem, "division by zero polynomial");
  TPoly r = *this;
  std::vector<PolyQ> quot(std::max(0, degree() - d.degree() + 1));
  while (!r.is_zero()) {
    const int k = r.degree() - d.degree();
    PolyQ qc, rem;
    if (k >= 0) r.leading().divmod(d.leading(), &qc, &rem);
    if (k < 0 || !rem.is_zero()) {
      throw Error(ErrorCode::kSingularSystem, "inexact division in Q[q][t]");
    }
    quot[k] = qc;
    r = r - shifted(qc, k) * d;
  }
  return TPoly(std::move(quot));
}

TPoly TPoly::pseudo_rem(const TPoly& d) const {
  TPoly r = *this;
  const PolyQ lc = d.leading();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    r = TPoly(lc) * r - shifted(r.leading(), r.degree() - d.degree()) * d;
  }
  return r;
}

PolyQ TPoly::content() const {
  PolyQ g;
  for (const auto& c : c_) g = gcd(g, c);
  return g;
}

TPoly TPoly::primitive_part() const {
  if (is_zero()) return *this;
  const PolyQ g = content();
  std::vector<PolyQ> r;
  for (const auto& c : c_) r.push_back(c.exact_div(g));
  return TPoly(std::move(r));
}

std::string TPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].to_string() + ")";
    if (i == 1) s += "*t";
    if (i > 1) s += "*t^" + std::to_string(i);
  }
  return s;
}

TPoly gcd(const TPoly& a, const TPoly& b) {
  if (a.is_zero()) return b.primitive_part() * TPoly(b.content());
  if (b.is_zero()) return a.primitive_part() * TPoly(a.content());
  const PolyQ cont = gcd(a.content(), b.content());
  TPoly x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    TPoly r = x.pseudo_rem(y);
    x = y;
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part() * TPoly(cont);
}

TPoly determinant(std::vector<std::vector<TPoly>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return TPoly(PolyQ(1));
  bool negate = false;
  TPoly prev(PolyQ(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return TPoly();
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
      m[i][k] = TPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// RatSeries

RatSeries::RatSeries(const TPoly& num, const TPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::kSingularSystem, "zero denominator");
  const TPoly g = gcd(num, den);
  num_ = num.exact_div(g);
  den_ = den.exact_div(g);
  normalize();
}

RatSeries RatSeries::from_reduced(const TPoly& num, const TPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::kSingularSystem, "zero denominator");
  RatSeries r;
  r.num_ = num;
  r.den_ = den;
  r.normalize();
  return r;
}

void RatSeries::normalize() {
  const PolyQ d0 = den_.coeff(0);
  if (d0.is_zero() || !d0.is_constant()) {
    throw Error(ErrorCode::kSingularSystem, "denominator has no unit constant term");
  }
  const TPoly s(PolyQ(mpq_class(1) / d0.coeff(0)));
  num_ = num_ * s;
  den_ = den_ * s;
}

PolyQ RatSeries::coefficient(int k) const {
  while (static_cast<int>(cache_.size()) <= k) {
    const int j = static_cast<int>(cache_.size());
    PolyQ c = num_.coeff(j);
    for (int i = 1; i <= std::min(j, den_.degree()); ++i) c -= den_.coeff(i) * cache_[j - i];
    cache_.push_back(c);
  }
  return cache_[k];
}

std::vector<PolyQ> RatSeries::expand(int k_max) const {
  std::vector<PolyQ> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(coefficient(k));
  return out;
}

std::string RatSeries::to_string() const {
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Counting

std::vector<PolyQ> simultaneous_classes_upto(const BranchingMatrix& b, int k_max) {
  if (k_max < 0) throw Error(ErrorCode::kInvalidParams, "k must be non-negative");
  const int m = b.size();
  std::vector<PolyQ> v(m);
  v[0] = PolyQ(1);
  std::vector<PolyQ> out;
  for (int k = 0;; ++k) {
    PolyQ sum;
    for (const auto& x : v) sum += x;
    out.push_back(sum);
    if (k == k_max) break;
    std::vector<PolyQ> w(m);
    for (int s = 0; s < m; ++s) {
      if (v[s].is_zero()) continue;
      for (int r = 0; r < m; ++r)
        if (!b.entries[r][s].is_zero()) w[r] += b.entries[r][s] * v[s];
    }
    v = std::move(w);
  }
  return out;
}

PolyQ simultaneous_classes(const BranchingMatrix& b, int k) {
  return simultaneous_classes_upto(b, k).back();
}

std::vector<PolyQ> characteristic_polynomial(const BranchingMatrix& b) {
  // Faddeev-LeVerrier: only integer divisions, so it stays inside Q[q].
  const int m = b.size();
  std::vector<PolyQ> a(m + 1);
  a[m] = PolyQ(1);
  std::vector<std::vector<PolyQ>> mk(m, std::vector<PolyQ>(m));
  for (int k = 1; k <= m; ++k) {
    std::vector<std::vector<PolyQ>> next(m, std::vector<PolyQ>(m));
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l) {
        if (b.entries[i][l].is_zero()) continue;
        for (int j = 0; j < m; ++j)
          if (!mk[l][j].is_zero()) next[i][j] += b.entries[i][l] * mk[l][j];
      }
    for (int i = 0; i < m; ++i) next[i][i] += a[m - k + 1];
    PolyQ tr;
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l)
        if (!b.entries[i][l].is_zero() && !next[l][i].is_zero()) tr += b.entries[i][l] * next[l][i];
    a[m - k] = -(tr * PolyQ(mpq_class(1, k)));
    mk = std::move(next);
  }
  return a;
}

RatSeries generating_series(const BranchingMatrix& b) {
  const int m = b.size();
  // det(I - tB) = t^m chi(1/t); the numerator is that times the series, cut
  // below degree m.
  const std::vector<PolyQ> chi = characteristic_polynomial(b);
  std::vector<PolyQ> den(m + 1);
  for (int i = 0; i <= m; ++i) den[i] = chi[m - i];
  const std::vector<PolyQ> c = simultaneous_classes_upto(b, 2 * m);
  std::vector<PolyQ> num(2 * m + 1);
  for (int i = 0; i <= 2 * m; ++i)
    for (int j = 0; j <= std::min(i, m); ++j) num[i] += den[j] * c[i - j];
  for (int i = m; i <= 2 * m; ++i)
    if (!num[i].is_zero()) throw Error(ErrorCode::kSingularSystem, "series is not rational");
  num.resize(m);
  TPoly n(std::move(num)), d(std::move(den));
  TPoly diag_product(PolyQ(1));
  for (int i = 0; i < m; ++i) {
    diag_product = diag_product * TPoly(std::vector<PolyQ>{PolyQ(1), -b.entries[i][i]});
  }
  const bool splits = diag_product == d;
  // Strip shared (1 - B_ii t) factors first; the generic gcd then only sees
  // the remaining cofactor.
  for (int i = 0; i < m; ++i) {
    const TPoly f(std::vector<PolyQ>{PolyQ(1), -b.entries[i][i]});
    if (f.degree() < 1) continue;
    try {
      TPoly dq = d.exact_div(f);
      TPoly nq = n.exact_div(f);
      d = std::move(dq);
      n = std::move(nq);
    } catch (const Error&) {
    }
  }
  if (splits) return RatSeries::from_reduced(n, d);
  return RatSeries(n, d);
}

mpq_class commuting_probability(const BranchingMatrix& b_at_q, const mpz_class& group_order,
                                int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "k must be at least 1");
  const PolyQ c = simultaneous_classes(b_at_q, k - 1);
  if (!c.is_constant()) throw Error(ErrorCode::kInvalidParams, "matrix is not specialized");
  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), group_order.get_mpz_t(), static_cast<unsigned long>(k - 1));
  mpq_class r = c.coeff(0) / mpq_class(denom);
  r.canonicalize();
  return r;
}

mpz_class exhaustive_commuting_count(const GroupElements& g, int k, long long limit) {
  const long long n = g.size();
  if (k < 1 || k > 3) throw Error(ErrorCode::kInvalidParams, "k must be 1, 2 or 3");
  if (k == 1) return mpz_class(static_cast<long>(n));
  long long tests = 0;
  auto charge = [&](long long c) {
    tests += c;
    if (tests > limit) {
      throw Error(ErrorCode::kLimitExceeded,
                  "more than " + std::to_string(limit) + " commutation tests");
    }
  };
  const auto& el = g.elements();
  mpz_class total = 0;
  std::vector<int> z;
  for (long long i = 0; i < n; ++i) {
    charge(n);
    z.clear();
    for (long long j = 0; j < n; ++j)
      if (el[i] * el[j] == el[j] * el[i]) z.push_back(static_cast<int>(j));
    if (k == 2) {
      total += static_cast<long>(z.size());
      continue;
    }
    charge(static_cast<long long>(z.size()) * static_cast<long long>(z.size()));
    for (int a : z)
      for (int b : z)
        if (el[a] * el[b] == el[b] * el[a]) ++total;
  }
  return total;
}

mpz_class census_simultaneous_classes(const GroupElements& g, int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::kInvalidParams, "census supports k = 0, 1, 2");
  if (k == 0) return 1;
  const auto classes = conjugacy_classes(g);
  if (k == 1) return static_cast<long>(classes.size());
  mpz_class total = 0;
  for (const auto& c : classes) {
    total += static_cast<long>(conjugacy_classes(centralizer(g, {c.representative})).size());
  }
  return total;
}

LescotReport lescot_consistency(const GroupElements& g, const BranchingMatrix& b_at_q, int k) {
  if (k < 2) throw Error(ErrorCode::kInvalidParams, "k must be at least 2");
  LescotReport rep;
  rep.k = k;
  const mpz_class order(static_cast<long>(g.size()));
  rep.via_matrix = commuting_probability(b_at_q, order, k);
  mpq_class sum = 0;
  for (const ConjClass& c : conjugacy_classes(g)) {
    const GroupElements z = stabilizer(g, c.representative);
    mpz_class zk;
    mpz_pow_ui(zk.get_mpz_t(), mpz_class(static_cast<long>(z.size())).get_mpz_t(),
               static_cast<unsigned long>(k - 1));
    const mpq_class cp = mpq_class(exhaustive_commuting_count(z, k - 1)) / mpq_class(zk);
    mpz_class ck;
    mpz_pow_ui(ck.get_mpz_t(), mpz_class(static_cast<long>(c.members.size())).get_mpz_t(),
               static_cast<unsigned long>(k - 2));
    sum += cp / mpq_class(ck);
  }
  rep.via_recurrence = sum / mpq_class(order);
  rep.via_recurrence.canonicalize();
  mpz_class gk;
  mpz_pow_ui(gk.get_mpz_t(), order.get_mpz_t(), static_cast<unsigned long>(k));
  rep.via_census = mpq_class(exhaustive_commuting_count(g, k)) / mpq_class(gk);
  rep.via_census.canonicalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Duality

QmpPoly::QmpPoly(long long c) {
  if (c != 0) t_[{0, 0, 0}] = mpq_class(static_cast<long>(c));
}

QmpPoly QmpPoly::q() {
  QmpPoly r;
  r.t_[{1, 0, 0}] = 1;
  return r;
}

QmpPoly QmpPoly::m() {
  QmpPoly r;
  r.t_[{0, 1, 0}] = 1;
  return r;
}

QmpPoly QmpPoly::p() {
  QmpPoly r;
  r.t_[{0, 0, 1}] = 1;
  return r;
}

QmpPoly QmpPoly::from_monomial_factorization(const PolyQ& f) {
  if (f.is_zero()) return QmpPoly();
  PolyQ rest = f;
  const PolyQ lin[3] = {PolyQ::var(), PolyQ::var() - PolyQ(1), PolyQ::var() + PolyQ(1)};
  Exp e{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    while (rest.degree() > 0) {
      PolyQ quo, rem;
      rest.divmod(lin[i], &quo, &rem);
      if (!rem.is_zero()) break;
      rest = quo;
      ++e[i];
    }
  }
  if (!rest.is_constant()) {
    throw Error(ErrorCode::kInvalidParams,
                f.to_string() + " is not a product of q, q-1 and q+1");
  }
  QmpPoly r;
  r.t_[e] = rest.coeff(0);
  return r;
}

QmpPoly QmpPoly::operator+(const QmpPoly& o) const {
  QmpPoly r = *this;
  for (const auto& [e, c] : o.t_) {
    r.t_[e] += c;
    if (r.t_[e] == 0) r.t_.erase(e);
  }
  return r;
}

QmpPoly QmpPoly::operator*(const QmpPoly& o) const {
  QmpPoly r;
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) {
      const Exp e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
      r.t_[e] += c1 * c2;
      if (r.t_[e] == 0) r.t_.erase(e);
    }
  return r;
}

QmpPoly QmpPoly::pow(int e) const {
  QmpPoly r(1), b = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

QmpPoly QmpPoly::swap_mp() const {
  QmpPoly r;
  for (const auto& [e, c] : t_) r.t_[{e[0], e[2], e[1]}] = c;
  return r;
}

PolyQ QmpPoly::substitute() const {
  const PolyQ x = PolyQ::var();
  PolyQ r;
  for (const auto& [e, c] : t_)
    r += PolyQ(c) * x.pow(e[0]) * (x - PolyQ(1)).pow(e[1]) * (x + PolyQ(1)).pow(e[2]);
  return r;
}

QmpPoly ClosedForm::term(int k) const {
  // Complete homogeneous symmetric polynomial h_r of roots[i..].
  std::map<std::pair<size_t, int>, QmpPoly> memo;
  std::function<QmpPoly(size_t, int)> h = [&](size_t i, int r) -> QmpPoly {
    if (r == 0) return QmpPoly(1);
    if (i == roots.size()) return QmpPoly();
    auto it = memo.find({i, r});
    if (it != memo.end()) return it->second;
    QmpPoly s;
    for (int a = 0; a <= r; ++a) s = s + roots[i].pow(a) * h(i + 1, r - a);
    memo[{i, r}] = s;
    return s;
  };
  QmpPoly out;
  for (int j = 0; j < static_cast<int>(numerator.size()) && j <= k; ++j)
    out = out + numerator[j] * h(0, k - j);
  return out;
}

ClosedForm closed_form(const BranchingMatrix& b) {
  const int m = b.size();
  for (int r = 0; r < m; ++r)
    for (int s = r + 1; s < m; ++s)
      if (!b.entries[r][s].is_zero())
        throw Error(ErrorCode::kInvalidParams, "closed form needs a lower-triangular matrix");
  ClosedForm cf;
  TPoly prod(PolyQ(1));
  for (int i = 0; i < m; ++i) {
    cf.roots.push_back(QmpPoly::from_monomial_factorization(b.entries[i][i]));
    prod = prod * (TPoly(PolyQ(1)) - TPoly::t() * TPoly(b.entries[i][i]));
  }
  const RatSeries h = generating_series(b);
  const TPoly num = (h.numerator() * prod).exact_div(h.denominator());
  for (const PolyQ& c : num.coeffs()) cf.numerator.push_back(QmpPoly::from_monomial_factorization(c));
  return cf;
}

std::vector<DualityReport> duality_check(int k_max) {
  const BranchingMatrix bu = branching_matrix_symbolic(Family::kU, 2);
  const BranchingMatrix bg = branching_matrix_symbolic(Family::kGL, 2);
  const ClosedForm cu = closed_form(bu);
  const ClosedForm cg = closed_form(bg);
  const auto su = simultaneous_classes_upto(bu, k_max);
  const auto sg = simultaneous_classes_upto(bg, k_max);
  std::vector<DualityReport> out;
  for (int k = 0; k <= k_max; ++k) {
    DualityReport r;
    r.k = k;
    r.c_u = su[k];
    r.c_g = sg[k];
    r.u_sum = cu.term(k).substitute();
    const QmpPoly g = cg.term(k);
    r.g_sum = g.substitute();
    r.swapped_g = g.swap_mp().substitute();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cbranch
