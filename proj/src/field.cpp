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

#include "cbranch/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "cbranch/error.hpp"

namespace cbranch {
namespace {

using PPoly = std::vector<int>;  // over F_p, lowest degree first

void trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial b.
PPoly prem(PPoly a, const PPoly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = a.back();
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

PPoly monic_from_code(long long code, int deg, int p) {
  PPoly f(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = static_cast<int>(code % p);
    code /= p;
  }
  f[deg] = 1;
  return f;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible_over_prime(const PPoly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int e = 1; 2 * e <= d; ++e) {
    const long long n = ipow(p, e);
    for (long long c = 0; c < n; ++c) {
      if (prem(f, monic_from_code(c, e, p), p).empty()) return false;
    }
  }
  return true;
}

// Least irreducible monic polynomial of degree d over F_p, ordering monic
// polynomials by the integer whose base-p digits are a_0, ..., a_{d-1}.
PPoly least_irreducible(int p, int d) {
  if (d == 1) return {0, 1};
  const long long n = ipow(p, d);
  for (long long c = 0; c < n; ++c) {
    PPoly f = monic_from_code(c, d, p);
    if (irreducible_over_prime(f, p)) return f;
  }
  throw Error(ErrorCode::kInvalidParams, "no irreducible polynomial found");
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<int, int, bool>, std::unique_ptr<Field>> fields;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

void check_prime(int p) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::kNonOddPrime,
                "characteristic " + std::to_string(p) + " is not an odd prime");
  }
}

}  // namespace

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "F_" << q << " (p=" << p << ", m=" << m << ", modulus=[";
  for (size_t i = 0; i < modulus.size(); ++i) os << (i ? "," : "") << modulus[i];
  os << "])";
  return os.str();
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool split_prime_power(long long q, int* p, int* m) {
  if (q < 3) return false;
  long long d = 2;
  while (q % d != 0) ++d;
  int e = 0;
  long long r = q;
  while (r % d == 0) {
    r /= d;
    ++e;
  }
  if (r != 1 || d == 2) return false;
  *p = static_cast<int>(d);
  *m = e;
  return true;
}

const Field& field_of_order(long long q, int limit) {
  int p = 0, m = 0;
  if (!split_prime_power(q, &p, &m)) {
    throw Error(ErrorCode::kNonOddPrime,
                "q=" + std::to_string(q) + " is not a power of an odd prime");
  }
  return field_create(p, m, limit);
}

void Field::build_tables() {
  const int p = spec_.p, m = spec_.m;
  size_ = spec_.q;
  const int n = size_;
  std::vector<PPoly> elems(n);
  for (int c = 0; c < n; ++c) {
    PPoly v(m, 0);
    int x = c;
    for (int i = 0; i < m; ++i) {
      v[i] = x % p;
      x /= p;
    }
    elems[c] = v;
  }
  auto encode = [&](const PPoly& v) {
    int c = 0;
    for (int i = m - 1; i >= 0; --i) c = c * p + (i < static_cast<int>(v.size()) ? v[i] : 0);
    return static_cast<Code>(c);
  };
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    PPoly ng(m);
    for (int i = 0; i < m; ++i) ng[i] = (p - elems[a][i]) % p;
    neg_[a] = encode(ng);
    for (int b = 0; b < n; ++b) {
      PPoly s(m);
      for (int i = 0; i < m; ++i) s[i] = (elems[a][i] + elems[b][i]) % p;
      add_[a * n + b] = encode(s);
      PPoly prod(2 * m - 1, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
      mul_[a * n + b] = encode(m == 1 ? prod : prem(prod, spec_.modulus, p));
    }
  }
  // Discrete log tables from the least-code generator.
  for (int g = 1; g < n; ++g) {
    int order = 1;
    Code x = static_cast<Code>(g);
    while (x != 1) {
      x = mul_[x * n + g];
      ++order;
    }
    if (order == n - 1) {
      primitive_ = static_cast<Code>(g);
      break;
    }
  }
  exp_.assign(n - 1, 0);
  log_.assign(n, 0);
  Code x = 1;
  for (int e = 0; e < n - 1; ++e) {
    exp_[e] = x;
    log_[x] = static_cast<Code>(e);
    x = mul_[x * n + primitive_];
  }
  inv_.assign(n, 0);
  for (int a = 1; a < n; ++a) inv_[a] = exp_[(n - 1 - log_[a]) % (n - 1)];
}

Code Field::inv(Code a) const {
  if (a == 0) throw Error(ErrorCode::kSingularSystem, "inverse of zero");
  return inv_[a];
}

Code Field::pow(Code a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error(ErrorCode::kSingularSystem, "negative power of zero");
    return 0;
  }
  const long long n1 = size_ - 1;
  long long r = (static_cast<long long>(log_[a]) * (((e % n1) + n1) % n1)) % n1;
  return exp_[r];
}

Code Field::from_int(long long v) const {
  const long long p = spec_.p;
  return static_cast<Code>(((v % p) + p) % p);
}

int Field::mult_order(Code a) const {
  if (a == 0) throw Error(ErrorCode::kSingularSystem, "order of zero");
  int o = 1;
  Code x = a;
  while (x != 1) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

bool Field::is_square(Code a) const {
  return a == 0 || log_[a] % 2 == 0;
}

std::vector<int> Field::coords(Code a) const {
  std::vector<int> v(spec_.m);
  int x = a;
  for (int i = 0; i < spec_.m; ++i) {
    v[i] = x % spec_.p;
    x /= spec_.p;
  }
  return v;
}

const Field& Field::base() const {
  if (!base_) throw Error(ErrorCode::kWrongField, "not a quadratic extension");
  return *base_;
}

Code Field::frob(Code a) const {
  if (!base_) throw Error(ErrorCode::kWrongField, "frobenius needs F_{q^2}");
  return frob_[a];
}

Code Field::embed(Code base_code) const {
  if (!base_) throw Error(ErrorCode::kWrongField, "not a quadratic extension");
  return embed_.at(base_code);
}

int Field::restrict_to_base(Code a) const {
  if (!base_) throw Error(ErrorCode::kWrongField, "not a quadratic extension");
  return restrict_[a];
}

const Field& field_create(int p, int m, int limit) {
  check_prime(p);
  if (m < 1) throw Error(ErrorCode::kInvalidParams, "extension degree must be >= 1");
  const long long q = ipow(p, m);
  if (q > limit) {
    throw Error(ErrorCode::kLimitExceeded,
                "field order " + std::to_string(q) + " exceeds limit " + std::to_string(limit));
  }
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto key = std::make_tuple(p, m, false);
  auto it = r.fields.find(key);
  if (it != r.fields.end()) return *it->second;
  std::unique_ptr<Field> f(new Field);
  f->spec_.p = p;
  f->spec_.m = m;
  f->spec_.q = static_cast<int>(q);
  f->spec_.modulus = least_irreducible(p, m);
  f->build_tables();
  const Field& out = *f;
  r.fields.emplace(key, std::move(f));
  return out;
}

const Field& quadratic_extension(const Field& base, int limit) {
  const int p = base.spec().p, m = base.spec().m;
  const long long q2 = ipow(p, 2 * m);
  if (q2 > limit) {
    throw Error(ErrorCode::kLimitExceeded,
                "extension order " + std::to_string(q2) + " exceeds limit " + std::to_string(limit));
  }
  const Field& b = field_create(p, m, limit);
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto key = std::make_tuple(p, m, true);
  auto it = r.fields.find(key);
  if (it != r.fields.end()) return *it->second;
  std::unique_ptr<Field> f(new Field);
  f->spec_.p = p;
  f->spec_.m = 2 * m;
  f->spec_.q = static_cast<int>(q2);
  f->spec_.modulus = least_irreducible(p, 2 * m);
  f->build_tables();
  f->base_ = &b;
  const int q = b.size();
  f->frob_.resize(q2);
  for (int a = 0; a < q2; ++a) f->frob_[a] = f->pow(static_cast<Code>(a), q);
  // Image of the base generator t: least-code root of the base modulus.
  Code root = 0;
  if (m > 1) {
    const auto& mod = b.spec().modulus;
    for (int c = 0; c < q2; ++c) {
      Code acc = 0, x = 1;
      for (int coef : mod) {
        acc = f->add(acc, f->mul(f->from_int(coef), x));
        x = f->mul(x, static_cast<Code>(c));
      }
      if (acc == 0) {
        root = static_cast<Code>(c);
        break;
      }
    }
  }
  f->embed_.resize(q);
  f->restrict_.assign(q2, -1);
  for (int c = 0; c < q; ++c) {
    auto v = b.coords(static_cast<Code>(c));
    Code acc = 0, x = 1;
    for (int i = 0; i < m; ++i) {
      acc = f->add(acc, f->mul(f->from_int(v[i]), x));
      x = f->mul(x, root);
    }
    f->embed_[c] = acc;
    f->restrict_[acc] = c;
  }
  const Field& out = *f;
  r.fields.emplace(key, std::move(f));
  return out;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  if (field != o.field) throw Error(ErrorCode::kWrongField, "mixed fields");
  return {*field, field->add(code, o.code)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  if (field != o.field) throw Error(ErrorCode::kWrongField, "mixed fields");
  return {*field, field->sub(code, o.code)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  if (field != o.field) throw Error(ErrorCode::kWrongField, "mixed fields");
  return {*field, field->mul(code, o.code)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  if (field != o.field) throw Error(ErrorCode::kWrongField, "mixed fields");
  return {*field, field->div(code, o.code)};
}

FieldElem frobenius(const FieldElem& x) {
  if (!x.field || !x.field->is_quadratic_extension()) {
    throw Error(ErrorCode::kWrongField, "frobenius is defined on F_{q^2} only");
  }
  return {*x.field, x.field->frob(x.code)};
}

std::vector<FieldElem> norm_one_subgroup(const Field& ext) {
  if (!ext.is_quadratic_extension()) {
    throw Error(ErrorCode::kWrongField, "norm-one subgroup needs F_{q^2}");
  }
  const int q = ext.base().size();
  std::vector<FieldElem> out;
  for (int a = 1; a < ext.size(); ++a) {
    if (ext.pow(static_cast<Code>(a), q + 1) == 1) out.emplace_back(ext, static_cast<Code>(a));
  }
  return out;
}

}  // namespace cbranch
