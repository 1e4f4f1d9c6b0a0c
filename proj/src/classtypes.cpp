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

#include "cbranch/classtypes.hpp"

#include <algorithm>
#include <functional>

#include "cbranch/error.hpp"
#include "cbranch/upolys.hpp"

namespace cbranch {

std::string TypeLabel::to_string() const {
  return family_name(family) + std::to_string(n) + ":" + name;
}

namespace {

struct RawEntry {
  const char* name;
  const char* count;
  const char* order;
  bool parent_only;
};

const RawEntry kU2[] = {
    {"(1,1)_1", "q+1", "q(q+1)(q^2-1)", false},
    {"(2)_1", "q+1", "q(q+1)", false},
    {"(1)_1(1)_1", "binom(q+1,2)", "(q+1)^2", false},
    {"(1)_2", "(q^2-q-2)/2", "q^2-1", false},
};

const RawEntry kU3[] = {
    {"(1,1,1)_1", "q+1", "q^3(q+1)(q^2-1)(q^3+1)", false},
    {"(2,1)_1", "q+1", "q^3(q+1)^2", false},
    {"(1,1)_1(1)_1", "q(q+1)", "q(q+1)^2(q^2-1)", false},
    {"(3)_1", "q+1", "q^2(q+1)", false},
    {"(2)_1(1)_1", "q(q+1)", "q(q+1)^2", false},
    {"(1)_1(1)_1(1)_1", "binom(q+1,3)", "(q+1)^3", false},
    {"(1)_2(1)_1", "(q+1)(q^2-q-2)/2", "(q+1)(q^2-1)", false},
    {"(1)_3", "(q^3-q)/3", "q^3+1", false},
};

const RawEntry kGL2[] = {
    {"(1,1)_1", "q-1", "q(q-1)(q^2-1)", false},
    {"(2)_1", "q-1", "q(q-1)", false},
    {"(1)_1(1)_1", "binom(q-1,2)", "(q-1)^2", false},
    {"(1)_2", "(q^2-q)/2", "q^2-1", false},
};

const RawEntry kGL3[] = {
    {"(1,1,1)_1", "q-1", "q^3(q-1)(q^2-1)(q^3-1)", false},
    {"(2,1)_1", "q-1", "q^3(q-1)^2", false},
    {"(1,1)_1(1)_1", "(q-1)(q-2)", "q(q-1)^2(q^2-1)", false},
    {"(3)_1", "q-1", "q^2(q-1)", false},
    {"(2)_1(1)_1", "(q-1)(q-2)", "q(q-1)^2", false},
    {"(1)_1(1)_1(1)_1", "binom(q-1,3)", "(q-1)^3", false},
    {"(1)_2(1)_1", "(q-1)(q^2-q)/2", "(q-1)(q^2-1)", false},
    {"(1)_3", "(q^3-q)/3", "q^3-1", false},
};

const RawEntry kSp2[] = {
    {"C", "2", "q(q^2-1)", false},
    {"A1", "2", "2q", false},
    {"A2", "2", "2q", false},
    {"D", "(q-3)/2", "q-1", false},
    {"Ir", "(q-1)/2", "q+1", false},
};

const RawEntry kSp4[] = {
    {"A1", "2", "q^4(q^2-1)(q^4-1)", false},
    {"A2", "4", "2q^4(q^2-1)", false},
    {"A3", "2", "2q^3(q-1)", false},
    {"A3'", "2", "2q^3(q+1)", false},
    {"A4", "4", "2q^2", false},
    {"B1", "(q^2-1)/4", "q^2+1", false},
    {"B2", "(q-1)^2/4", "q^2-1", false},
    {"B3", "(q-3)(q-5)/8", "(q-1)^2", false},
    {"B4", "(q-1)(q-3)/8", "(q+1)^2", false},
    {"B5", "(q-1)(q-3)/4", "q^2-1", false},
    {"B6", "(q-1)/2", "q(q+1)(q^2-1)", false},
    {"B7", "(q-1)/2", "q(q+1)", false},
    {"B8", "(q-3)/2", "q(q-1)(q^2-1)", false},
    {"B9", "(q-3)/2", "q(q-1)", false},
    {"C1", "q-1", "q(q+1)(q^2-1)", false},
    {"C2", "2(q-1)", "2q(q+1)", false},
    {"C3", "q-3", "q(q-1)(q^2-1)", false},
    {"C4", "2(q-3)", "2q(q-1)", false},
    {"D1", "1", "q^2(q^2-1)^2", false},
    {"D2", "4", "2q^2(q^2-1)", false},
    {"D3", "4", "4q^2", false},
    {"N1", "0", "4q^3", true},
    {"N2", "0", "2q^3", true},
    {"N3", "0", "2q^3", true},
};

const RawEntry kOplus[] = {
    {"central", "2", "2(q-1)", false},
    {"semisimple", "(q-3)/2", "q-1", false},
    {"reflection", "2", "4", false},
};

const RawEntry kOminus[] = {
    {"central", "2", "2(q+1)", false},
    {"rotation", "(q-1)/2", "q+1", false},
    {"reflection", "2", "4", false},
};

template <size_t N>
std::vector<TypeCatalogEntry> build(Family f, int n, const RawEntry (&raw)[N]) {
  std::vector<TypeCatalogEntry> out;
  for (const RawEntry& r : raw) {
    out.push_back({TypeLabel{f, n, r.name}, PolyQ::parse(r.count), PolyQ::parse(r.order),
                   r.parent_only});
  }
  return out;
}

}  // namespace

const std::vector<TypeCatalogEntry>& type_catalog(Family family, int n) {
  static const auto u2 = build(Family::kU, 2, kU2);
  static const auto u3 = build(Family::kU, 3, kU3);
  static const auto gl2 = build(Family::kGL, 2, kGL2);
  static const auto gl3 = build(Family::kGL, 3, kGL3);
  static const auto sp2 = build(Family::kSp, 2, kSp2);
  static const auto sp4 = build(Family::kSp, 4, kSp4);
  static const auto op = build(Family::kOplus, 2, kOplus);
  static const auto om = build(Family::kOminus, 2, kOminus);
  switch (family) {
    case Family::kU:
      if (n == 2) return u2;
      if (n == 3) return u3;
      break;
    case Family::kGL:
      if (n == 2) return gl2;
      if (n == 3) return gl3;
      break;
    case Family::kSp:
      if (n == 2) return sp2;
      if (n == 4) return sp4;
      break;
    case Family::kOplus:
      if (n == 2) return op;
      break;
    case Family::kOminus:
      if (n == 2) return om;
      break;
  }
  throw Error(ErrorCode::kUnsupportedFamily,
              "no type catalog for " + family_name(family) + std::to_string(n));
}

int catalog_index(Family family, int n, const std::string& name) {
  const auto& cat = type_catalog(family, n);
  for (size_t i = 0; i < cat.size(); ++i)
    if (cat[i].label.name == name) return static_cast<int>(i);
  throw Error(ErrorCode::kInvalidParams, "unknown type '" + name + "' for " +
                                             family_name(family) + std::to_string(n));
}

TypeLabel make_label(Family family, int n, const std::string& name) {
  catalog_index(family, n, name);
  return TypeLabel{family, n, name};
}

// ---------------------------------------------------------------------------
// Field context

namespace {

TypeContext build_context(long long q) {
  TypeContext c;
  c.q = q;
  c.fq = &field_of_order(q);
  c.fq2 = &quadratic_extension(*c.fq);
  const Field& f = *c.fq;
  const Field& e = *c.fq2;
  c.gamma = f.primitive();
  const Code g2 = e.embed(c.gamma);
  for (int x = 1; x < e.size(); ++x) {
    const Code cx = static_cast<Code>(x);
    if (e.mult_order(cx) == e.size() - 1 && e.pow(cx, q + 1) == g2) {
      c.theta = cx;
      break;
    }
  }
  c.eta = e.pow(c.theta, q - 1);
  for (int x = 1; x < f.size(); ++x) c.units.push_back(static_cast<Code>(x));
  for (int x = 1; x < e.size(); ++x)
    if (e.pow(static_cast<Code>(x), q + 1) == 1) c.norm_one.push_back(static_cast<Code>(x));
  for (long long i = 1; i <= (q - 3) / 2; ++i) c.lambdas.push_back(f.pow(c.gamma, i));
  for (long long i = 1; i <= (q - 1) / 2; ++i) {
    const Code s = e.add(e.pow(c.eta, i), e.inv(e.pow(c.eta, i)));
    c.traces.push_back(static_cast<Code>(e.restrict_to_base(s)));
  }
  return c;
}

}  // namespace

const TypeContext& type_context(long long q) {
  static std::mutex mu;
  static std::map<long long, std::unique_ptr<TypeContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) {
    it = cache.emplace(q, std::make_unique<TypeContext>(build_context(q))).first;
  }
  return *it->second;
}

// ---------------------------------------------------------------------------
// Polynomial lists

namespace {

// Least root in F_{q^2} of f.
Code least_root(const FPoly& f) {
  const Field& e = f.field();
  for (int x = 0; x < e.size(); ++x)
    if (f.eval(static_cast<Code>(x)) == 0) return static_cast<Code>(x);
  throw Error(ErrorCode::kInvalidParams, "polynomial has no root");
}

const std::vector<FPoly>& u_irreducibles(long long q, int d) {
  static std::mutex mu;
  static std::map<std::pair<long long, int>, std::vector<FPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(q, d);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, enumerate_u_irreducible(d, *type_context(q).fq2)).first;
  return it->second;
}

const std::vector<FPoly>& gl_irreducibles(long long q, int d) {
  static std::mutex mu;
  static std::map<std::pair<long long, int>, std::vector<FPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(q, d);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, monic_irreducibles(*type_context(q).fq, d)).first;
  return it->second;
}

// Self-reciprocal irreducible quartics over F_q.
std::vector<FPoly> b1_quartics(long long q) {
  std::vector<FPoly> out;
  for (const FPoly& f : gl_irreducibles(q, 4))
    if (f.coeff(0) == 1 && f.coeff(1) == f.coeff(3)) out.push_back(f);
  return out;
}

FPoly monic_reciprocal(const FPoly& g) {
  const Field& f = g.field();
  std::vector<Code> c(g.coeffs().rbegin(), g.coeffs().rend());
  return FPoly(f, c).monic();
}

// One of each pair {g, g*} of irreducible quadratics with g != g*.
std::vector<FPoly> b2_quadratics(long long q) {
  std::vector<FPoly> out;
  for (const FPoly& g : gl_irreducibles(q, 2)) {
    const FPoly r = monic_reciprocal(g);
    if (g < r) out.push_back(g);
  }
  return out;
}

// Values a0 of rotations [[a0, a1], [gamma a1, a0]] in O2-, a1 != 0.
std::vector<std::pair<Code, Code>> ominus_rotations(long long q) {
  const TypeContext& c = type_context(q);
  const Field& f = *c.fq;
  std::vector<std::pair<Code, Code>> out;
  for (int a0 = 0; a0 < f.size(); ++a0) {
    for (int a1 = 1; a1 < f.size(); ++a1) {
      const Code x = static_cast<Code>(a0), y = static_cast<Code>(a1);
      const Code v = f.sub(f.mul(x, x), f.mul(c.gamma, f.mul(y, y)));
      if (v == 1) {
        out.emplace_back(x, y);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter spaces

using Params = std::vector<std::vector<int>>;

Params range1(int n) {
  Params out;
  for (int i = 0; i < n; ++i) out.push_back({i});
  return out;
}

Params product(const Params& a, const Params& b) {
  Params out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.push_back(z);
    }
  return out;
}

Params pairs_lt(int n) {
  Params out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

Params triples_lt(int n) {
  Params out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

Params pairs_ne(int n) {
  Params out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

Params partition_params(Family fam, int n, const std::string& name, long long q) {
  const TypeContext& c = type_context(q);
  const int m = fam == Family::kU ? static_cast<int>(c.norm_one.size())
                                  : static_cast<int>(c.units.size());
  const bool u = fam == Family::kU;
  auto irr = [&](int d) {
    return static_cast<int>(u ? u_irreducibles(q, d).size() : gl_irreducibles(q, d).size());
  };
  if (name == "(1,1)_1" || name == "(2)_1" || name == "(1,1,1)_1" || name == "(2,1)_1" ||
      name == "(3)_1")
    return range1(m);
  if (name == "(1)_1(1)_1" && n == 2) return pairs_lt(m);
  if (name == "(1)_1(1)_1(1)_1") return triples_lt(m);
  if (name == "(1,1)_1(1)_1" || name == "(2)_1(1)_1") return pairs_ne(m);
  if (name == "(1)_2") return range1(irr(2));
  if (name == "(1)_2(1)_1") return product(range1(irr(2)), range1(m));
  if (name == "(1)_3") return range1(irr(3));
  throw Error(ErrorCode::kInvalidParams, "unknown type " + name);
}

Params sp2_params(const std::string& name, long long q) {
  const TypeContext& c = type_context(q);
  if (name == "C" || name == "A1" || name == "A2") return range1(2);
  if (name == "D") return range1(static_cast<int>(c.lambdas.size()));
  if (name == "Ir") return range1(static_cast<int>(c.traces.size()));
  throw Error(ErrorCode::kInvalidParams, "unknown type " + name);
}

Params sp4_params(const std::string& name, long long q) {
  const TypeContext& c = type_context(q);
  const int nl = static_cast<int>(c.lambdas.size());
  const int nt = static_cast<int>(c.traces.size());
  const Params sign = range1(2);
  if (name == "A1" || name == "A3" || name == "A3'") return sign;
  if (name == "A2" || name == "A4" || name == "D2") return product(sign, sign);
  if (name == "D3") return product(sign, sign);
  if (name == "D1" || name == "N1" || name == "N2" || name == "N3") return Params{{}};
  if (name == "B1") return range1(static_cast<int>(b1_quartics(q).size()));
  if (name == "B2") return range1(static_cast<int>(b2_quadratics(q).size()));
  if (name == "B3") return pairs_lt(nl);
  if (name == "B4") return pairs_lt(nt);
  if (name == "B5") return product(range1(nt), range1(nl));
  if (name == "B6" || name == "B7") return range1(nt);
  if (name == "B8" || name == "B9") return range1(nl);
  if (name == "C1") return product(range1(nt), sign);
  if (name == "C2") return product(product(range1(nt), sign), sign);
  if (name == "C3") return product(range1(nl), sign);
  if (name == "C4") return product(product(range1(nl), sign), sign);
  throw Error(ErrorCode::kInvalidParams, "unknown type " + name);
}

Params orth_params(Family fam, const std::string& name, long long q) {
  const TypeContext& c = type_context(q);
  if (name == "central" || name == "reflection") return range1(2);
  if (fam == Family::kOplus && name == "semisimple")
    return range1(static_cast<int>(c.lambdas.size()));
  if (fam == Family::kOminus && name == "rotation")
    return range1(static_cast<int>(ominus_rotations(q).size()));
  throw Error(ErrorCode::kInvalidParams, "unknown type " + name);
}

}  // namespace

std::vector<std::vector<int>> parameter_space(const TypeLabel& label, long long q) {
  catalog_index(label.family, label.n, label.name);
  make_group_spec(label.family, label.n, q);  // validates q
  switch (label.family) {
    case Family::kU:
    case Family::kGL:
      return partition_params(label.family, label.n, label.name, q);
    case Family::kSp:
      return label.n == 2 ? sp2_params(label.name, q) : sp4_params(label.name, q);
    case Family::kOplus:
    case Family::kOminus:
      return orth_params(label.family, label.name, q);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Matrix builders

namespace {

Mat upper2(const Field& f, Code a, Code x) { return Mat::from_rows(f, {{a, x}, {0, a}}); }
Mat diag2(const Field& f, Code a, Code b) { return Mat::diagonal(f, {a, b}); }
Mat torus2(const Field& f, Code x) { return diag2(f, x, f.inv(x)); }
// [[0, 1], [-1, b]]: determinant 1, characteristic polynomial x^2 - bx + 1.
Mat kblock(const Field& f, Code b) { return Mat::from_rows(f, {{0, 1}, {f.neg(1), b}}); }
Code sign_code(const Field& f, int s) { return s == 0 ? Code{1} : f.neg(1); }

Mat beta3(const Field& f) {
  const int m = f.neg(1);
  return Mat::from_rows(f, {{0, 0, 1, 0}, {0, 0, 0, 1}, {m, 0, 0, 0}, {0, m, 0, 0}});
}

Mat beta2(const Field& f) {
  const int m = f.neg(1);
  return Mat::from_rows(f, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, m, 0, 0}, {m, 0, 0, 0}});
}

// Hermitian form [[0,1,0],[1,0,0],[0,0,1]].
Mat u3_gamma_form(const Field& e) { return Mat::from_rows(e, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}); }

Mat check_member(const GroupSpec& spec, const Mat& m, const std::string& what) {
  if (!is_member(spec, m))
    throw Error(ErrorCode::kNotAMember, "representative of " + what + " is not in the group");
  return m;
}

// Moves m, which preserves the form h, into the group of spec.
Mat to_pinned(const GroupSpec& spec, const Mat& m, const Mat& h) {
  auto p = find_transport(spec, h);
  if (!p) throw Error(ErrorCode::kInvalidParams, "form not equivalent to the pinned form");
  return transport_element(*p, m);
}

// Some nondegenerate form preserved by m: skew (Sp), symmetric (O) or
// hermitian (U).
Mat invariant_form(const GroupSpec& spec, const Mat& m) {
  const Field& f = *spec.field;
  const int n = m.n;
  const bool herm = spec.family == Family::kU;
  const Mat mc = herm ? conj(m) : m;
  std::vector<std::vector<Code>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Code> row(n * n, 0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // hermitian: (m^T X conj(m))_{ij}; bilinear: (m X m^T)_{ij}
          const Code c = herm ? f.mul(m(k, i), mc(l, j)) : f.mul(m(i, k), m(j, l));
          row[k * n + l] = f.add(row[k * n + l], c);
        }
      row[i * n + j] = f.sub(row[i * n + j], 1);
      rows.push_back(row);
    }
  if (!herm) {
    const bool skew = spec.family == Family::kSp;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::vector<Code> row(n * n, 0);
        row[i * n + j] = 1;
        row[j * n + i] = f.add(row[j * n + i], skew ? Code{1} : f.neg(1));
        rows.push_back(row);
      }
  }
  std::vector<Mat> basis;
  for (const auto& v : nullspace(f, rows, n * n)) {
    Mat b(f, n);
    for (int i = 0; i < n * n; ++i) b.a[i] = v[i];
    basis.push_back(b);
  }
  std::optional<Mat> found;
  for_each_in_span(f, n, basis, [&](const Mat& x) {
    if (!is_invertible(x)) return true;
    if (herm && x != transpose(conj(x))) return true;
    found = x;
    return false;
  });
  if (!found) throw Error(ErrorCode::kInvalidParams, "no invariant form");
  return *found;
}

Mat realize(const GroupSpec& spec, const Mat& m) { return to_pinned(spec, m, invariant_form(spec, m)); }

// Least nonzero a1 with a0 a1^q + a0^q a1 = 0, and all of them.
std::vector<Code> u_nilpotent_parts(const Field& e, Code a0) {
  std::vector<Code> out;
  for (int x = 1; x < e.size(); ++x) {
    const Code a1 = static_cast<Code>(x);
    if (e.add(e.mul(a0, e.frob(a1)), e.mul(e.frob(a0), a1)) == 0) out.push_back(a1);
  }
  return out;
}

// a2 with a0^q a2 + a1^{q+1} + a0 a2^q = 0.
std::vector<Code> u_second_parts(const Field& e, Code a0, Code a1) {
  std::vector<Code> out;
  const Code n1 = e.mul(a1, e.frob(a1));
  for (int x = 0; x < e.size(); ++x) {
    const Code a2 = static_cast<Code>(x);
    if (e.add(e.add(e.mul(e.frob(a0), a2), n1), e.mul(a0, e.frob(a2))) == 0) out.push_back(a2);
  }
  return out;
}

Mat u_unipotent_form(const GroupSpec& spec, const std::string& name, Code a0, Code a1, Code a2,
                     Code b0) {
  const Field& e = *spec.field;
  if (name == "(2)_1") return Mat::from_rows(e, {{a0, a1}, {0, a0}});
  if (name == "(2,1)_1")
    return to_pinned(spec, Mat::from_rows(e, {{a0, a1, 0}, {0, a0, 0}, {0, 0, a0}}),
                     u3_gamma_form(e));
  if (name == "(3)_1") return Mat::from_rows(e, {{a0, a1, a2}, {0, a0, a1}, {0, 0, a0}});
  if (name == "(2)_1(1)_1")
    return to_pinned(spec, Mat::from_rows(e, {{a0, a1, 0}, {0, a0, 0}, {0, 0, b0}}),
                     u3_gamma_form(e));
  throw Error(ErrorCode::kInvalidParams, name);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

void check_params(const TypeLabel& label, long long q, const std::vector<int>& params) {
  const auto space = parameter_space(label, q);
  require(std::find(space.begin(), space.end(), params) != space.end(),
          "parameters out of range for " + label.to_string());
}

Mat u_rep(const GroupSpec& spec, const TypeLabel& label, const std::vector<int>& p) {
  const TypeContext& c = type_context(spec.q);
  const Field& e = *spec.field;
  const auto& nu = c.norm_one;
  const std::string& nm = label.name;
  const int n = label.n;
  if (nm == "(1,1)_1" || nm == "(1,1,1)_1") return Mat::scalar(e, n, nu[p[0]]);
  if (nm == "(2)_1" || nm == "(2,1)_1") {
    const Code a0 = nu[p[0]];
    return u_unipotent_form(spec, nm, a0, u_nilpotent_parts(e, a0)[0], 0, 0);
  }
  if (nm == "(3)_1") {
    const Code a0 = nu[p[0]];
    const Code a1 = u_nilpotent_parts(e, a0)[0];
    return u_unipotent_form(spec, nm, a0, a1, u_second_parts(e, a0, a1)[0], 0);
  }
  if (nm == "(2)_1(1)_1") {
    const Code a0 = nu[p[0]];
    return u_unipotent_form(spec, nm, a0, u_nilpotent_parts(e, a0)[0], 0, nu[p[1]]);
  }
  if (nm == "(1)_1(1)_1" && n == 2)
    return to_pinned(spec, Mat::diagonal(e, {nu[p[0]], nu[p[1]]}), Mat::identity(e, 2));
  if (nm == "(1,1)_1(1)_1")
    return to_pinned(spec, Mat::diagonal(e, {nu[p[0]], nu[p[0]], nu[p[1]]}),
                     Mat::identity(e, 3));
  if (nm == "(1)_1(1)_1(1)_1")
    return to_pinned(spec, Mat::diagonal(e, {nu[p[0]], nu[p[1]], nu[p[2]]}),
                     Mat::identity(e, 3));
  if (nm == "(1)_2") {
    const Code a = least_root(u_irreducibles(spec.q, 2)[p[0]]);
    return Mat::diagonal(e, {a, e.inv(e.frob(a))});
  }
  if (nm == "(1)_2(1)_1") {
    const Code a = least_root(u_irreducibles(spec.q, 2)[p[0]]);
    return to_pinned(spec, Mat::diagonal(e, {a, e.inv(e.frob(a)), nu[p[1]]}), u3_gamma_form(e));
  }
  if (nm == "(1)_3") return realize(spec, companion(u_irreducibles(spec.q, 3)[p[0]]));
  throw Error(ErrorCode::kInvalidParams, nm);
}

Mat gl_rep(const GroupSpec& spec, const TypeLabel& label, const std::vector<int>& p) {
  const TypeContext& c = type_context(spec.q);
  const Field& f = *spec.field;
  const auto& u = c.units;
  const std::string& nm = label.name;
  const int n = label.n;
  if (nm == "(1,1)_1" || nm == "(1,1,1)_1") return Mat::scalar(f, n, u[p[0]]);
  if (nm == "(2)_1") return upper2(f, u[p[0]], 1);
  if (nm == "(2,1)_1") return Mat::block_diag(upper2(f, u[p[0]], 1), Mat::scalar(f, 1, u[p[0]]));
  if (nm == "(3)_1") {
    const Code a = u[p[0]];
    return Mat::from_rows(f, {{a, 1, 0}, {0, a, 1}, {0, 0, a}});
  }
  if (nm == "(2)_1(1)_1") return Mat::block_diag(upper2(f, u[p[0]], 1), Mat::scalar(f, 1, u[p[1]]));
  if (nm == "(1)_1(1)_1" && n == 2) return Mat::diagonal(f, {u[p[0]], u[p[1]]});
  if (nm == "(1,1)_1(1)_1") return Mat::diagonal(f, {u[p[0]], u[p[0]], u[p[1]]});
  if (nm == "(1)_1(1)_1(1)_1") return Mat::diagonal(f, {u[p[0]], u[p[1]], u[p[2]]});
  if (nm == "(1)_2") return companion(gl_irreducibles(spec.q, 2)[p[0]]);
  if (nm == "(1)_2(1)_1")
    return Mat::block_diag(companion(gl_irreducibles(spec.q, 2)[p[0]]),
                           Mat::scalar(f, 1, u[p[1]]));
  if (nm == "(1)_3") return companion(gl_irreducibles(spec.q, 3)[p[0]]);
  throw Error(ErrorCode::kInvalidParams, nm);
}

Mat sp2_rep(const GroupSpec& spec, const std::string& nm, const std::vector<int>& p) {
  const TypeContext& c = type_context(spec.q);
  const Field& f = *spec.field;
  if (nm == "C") return Mat::scalar(f, 2, sign_code(f, p[0]));
  if (nm == "A1") return upper2(f, sign_code(f, p[0]), 1);
  if (nm == "A2") return upper2(f, sign_code(f, p[0]), c.gamma);
  if (nm == "D") return torus2(f, c.lambdas[p[0]]);
  if (nm == "Ir") return kblock(f, c.traces[p[0]]);
  throw Error(ErrorCode::kInvalidParams, nm);
}

// Elements [[A, S A^-T], [0, A^-T]] of Sp4 in the form beta3, moved to the
// pinned form, for symmetric S in a fixed order. Returns the first `count`
// pairwise non-conjugate ones whose centralizer has the given order.
std::vector<Mat> coupled_forms(const GroupSpec& spec, const Mat& a, long long order, int count) {
  const Field& f = *spec.field;
  const Mat ait = inverse(transpose(a));
  const Mat b3 = beta3(f);
  std::vector<Mat> found;
  const int s = f.size();
  for (int idx = 1; idx < s * s * s && static_cast<int>(found.size()) < count; ++idx) {
    const Code s11 = static_cast<Code>(idx % s), s12 = static_cast<Code>(idx / s % s),
               s22 = static_cast<Code>(idx / (s * s));
    const Mat sm = Mat::from_rows(f, {{s11, s12}, {s12, s22}});
    const Mat top = sm * ait;
    Mat m(f, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        m(i, j) = a(i, j);
        m(i, j + 2) = top(i, j);
        m(i + 2, j + 2) = ait(i, j);
      }
    const Mat x = to_pinned(spec, m, b3);
    if (centralizer_local(spec, {x}).size() != order) continue;
    bool fresh = true;
    for (const Mat& y : found)
      if (are_conjugate_in_group(spec, x, y)) fresh = false;
    if (fresh) found.push_back(x);
  }
  if (static_cast<int>(found.size()) < count)
    throw Error(ErrorCode::kInvalidParams, "no coupled form with the requested centralizer");
  return found;
}

const std::vector<Mat>& cached_coupled(const GroupSpec& spec, const std::string& key,
                                       const Mat& a, long long order, int count) {
  static std::mutex mu;
  static std::map<std::pair<long long, std::string>, std::vector<Mat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto k = std::make_pair(spec.q, key);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, coupled_forms(spec, a, order, count)).first;
  return it->second;
}

Mat sp4_rep(const GroupSpec& spec, const std::string& nm, const std::vector<int>& p) {
  const TypeContext& c = type_context(spec.q);
  const Field& f = *spec.field;
  const long long q = spec.q;
  const Mat i2 = Mat::identity(f, 2);
  auto lam = [&](int s) { return s == 0 ? Code{1} : c.gamma; };
  if (nm == "A1") return Mat::scalar(f, 4, sign_code(f, p[0]));
  if (nm == "A2") {
    const Code a0 = sign_code(f, p[0]);
    return Mat::block_diag(upper2(f, a0, lam(p[1])), scale(i2, a0));
  }
  if (nm == "A3" || nm == "A3'") {
    const Code a0 = sign_code(f, p[0]);
    const Code x = nm == "A3" ? f.neg(1) : f.neg(c.gamma);
    return Mat::block_diag(upper2(f, a0, 1), upper2(f, a0, x));
  }
  if (nm == "A4") {
    const auto& base = cached_coupled(spec, "A4", upper2(f, 1, 1), 2 * q * q, 2);
    return scale(base[p[1]], sign_code(f, p[0]));
  }
  if (nm == "B1") return realize(spec, companion(b1_quartics(q)[p[0]]));
  if (nm == "B2") {
    const Mat cg = companion(b2_quadratics(q)[p[0]]);
    return to_pinned(spec, Mat::block_diag(cg, inverse(transpose(cg))), beta3(f));
  }
  if (nm == "B3")
    return Mat::block_diag(torus2(f, c.lambdas[p[0]]), torus2(f, c.lambdas[p[1]]));
  if (nm == "B4") return Mat::block_diag(kblock(f, c.traces[p[0]]), kblock(f, c.traces[p[1]]));
  if (nm == "B5") return Mat::block_diag(kblock(f, c.traces[p[0]]), torus2(f, c.lambdas[p[1]]));
  if (nm == "B6") return Mat::block_diag(kblock(f, c.traces[p[0]]), kblock(f, c.traces[p[0]]));
  if (nm == "B7")
    return cached_coupled(spec, "B7:" + std::to_string(p[0]), kblock(f, c.traces[p[0]]),
                          q * (q + 1), 1)[0];
  if (nm == "B8")
    return Mat::block_diag(torus2(f, c.lambdas[p[0]]), torus2(f, c.lambdas[p[0]]));
  if (nm == "B9")
    return cached_coupled(spec, "B9:" + std::to_string(p[0]), torus2(f, c.lambdas[p[0]]),
                          q * (q - 1), 1)[0];
  if (nm == "C1")
    return Mat::block_diag(kblock(f, c.traces[p[0]]), scale(i2, sign_code(f, p[1])));
  if (nm == "C2")
    return Mat::block_diag(kblock(f, c.traces[p[0]]), upper2(f, sign_code(f, p[1]), lam(p[2])));
  if (nm == "C3")
    return Mat::block_diag(torus2(f, c.lambdas[p[0]]), scale(i2, sign_code(f, p[1])));
  if (nm == "C4")
    return Mat::block_diag(torus2(f, c.lambdas[p[0]]), upper2(f, sign_code(f, p[1]), lam(p[2])));
  if (nm == "D1") return Mat::block_diag(i2, scale(i2, f.neg(1)));
  if (nm == "D2") {
    const Code a0 = sign_code(f, p[0]);
    return Mat::block_diag(scale(i2, a0), upper2(f, f.neg(a0), lam(p[1])));
  }
  if (nm == "D3") return Mat::block_diag(upper2(f, 1, lam(p[0])), upper2(f, f.neg(1), lam(p[1])));
  throw Error(ErrorCode::kInvalidParams, nm);
}

Mat orth_rep(const GroupSpec& spec, const std::string& nm, const std::vector<int>& p) {
  const TypeContext& c = type_context(spec.q);
  const Field& f = *spec.field;
  if (nm == "central") return Mat::scalar(f, 2, sign_code(f, p[0]));
  if (spec.family == Family::kOplus) {
    if (nm == "semisimple") return torus2(f, c.lambdas[p[0]]);
    if (nm == "reflection") {
      const Code g = p[0] == 0 ? Code{1} : c.gamma;
      return Mat::from_rows(f, {{0, g}, {f.inv(g), 0}});
    }
  } else {
    if (nm == "rotation") {
      const auto r = ominus_rotations(spec.q)[p[0]];
      return Mat::from_rows(f, {{r.first, r.second}, {f.mul(c.gamma, r.second), r.first}});
    }
    if (nm == "reflection") {
      const Code s = sign_code(f, p[0]);
      return diag2(f, s, f.neg(s));
    }
  }
  throw Error(ErrorCode::kInvalidParams, nm);
}

std::vector<Mat> new_type_pair(const GroupSpec& spec, const std::string& nm);

}  // namespace

std::vector<Mat> canonical_representative(const TypeLabel& label, long long q,
                                          const std::vector<int>& params) {
  check_params(label, q, params);
  const GroupSpec spec = make_group_spec(label.family, label.n, q);
  const std::string what = label.to_string();
  switch (label.family) {
    case Family::kU:
      return {check_member(spec, u_rep(spec, label, params), what)};
    case Family::kGL:
      return {check_member(spec, gl_rep(spec, label, params), what)};
    case Family::kSp:
      if (label.n == 2) return {check_member(spec, sp2_rep(spec, label.name, params), what)};
      if (label.name[0] == 'N') return new_type_pair(spec, label.name);
      return {check_member(spec, sp4_rep(spec, label.name, params), what)};
    case Family::kOplus:
    case Family::kOminus:
      return {check_member(spec, orth_rep(spec, label.name, params), what)};
  }
  return {};
}

std::vector<Mat> fallback_reference_tuple(const TypeLabel& label, long long q) {
  const GroupSpec spec = make_group_spec(label.family, label.n, q);
  const TypeContext& c = type_context(q);
  const Field& f = *spec.field;
  const Mat i2 = Mat::identity(f, 2);
  if (label.family == Family::kSp && label.n == 4) {
    const std::string& nm = label.name;
    const bool has_l = !c.lambdas.empty();
    const Mat k = kblock(f, c.traces[0]);
    if (nm == "B4") return {Mat::block_diag(k, i2), Mat::block_diag(i2, k)};
    if (has_l) {
      const Mat t = torus2(f, c.lambdas[0]);
      if (nm == "B3") return {Mat::block_diag(t, i2), Mat::block_diag(i2, t)};
      if (nm == "B5") return {Mat::block_diag(k, i2), Mat::block_diag(i2, t)};
    }
  }
  if (label.family == Family::kGL && label.n == 3 && label.name == "(1)_1(1)_1(1)_1" &&
      c.units.size() >= 2) {
    const Code u = c.units[1];
    return {Mat::diagonal(f, {u, 1, 1}), Mat::diagonal(f, {1, u, 1})};
  }
  return {};
}

GroupElements displayed_new_type_subgroup(const std::string& name, long long q) {
  const Field& f = field_of_order(q);
  const Code m1 = f.neg(1);
  std::vector<Mat> out;
  const int s = f.size();
  for (Code x0 : {Code{1}, m1}) {
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        for (int c = 0; c < s; ++c) {
          const Code ya = static_cast<Code>(a), yb = static_cast<Code>(b), yc = static_cast<Code>(c);
          if (name == "N1") {
            for (Code z0 : {Code{1}, m1}) {
              const Code w = f.mul(ya, f.mul(z0, x0));
              out.push_back(Mat::from_rows(
                  f, {{x0, 0, ya, yb}, {0, z0, yc, w}, {0, 0, z0, 0}, {0, 0, 0, x0}}));
            }
          } else if (name == "N2") {
            out.push_back(Mat::from_rows(
                f, {{x0, ya, 0, yb}, {0, x0, 0, 0}, {0, yc, x0, f.neg(ya)}, {0, 0, 0, x0}}));
          } else if (name == "N3") {
            out.push_back(Mat::from_rows(
                f, {{x0, 0, yb, ya}, {0, x0, ya, yc}, {0, 0, x0, 0}, {0, 0, 0, x0}}));
          } else {
            throw Error(ErrorCode::kInvalidParams, "no displayed subgroup for " + name);
          }
        }
  }
  const Mat form = name == "N3" ? beta3(f) : beta2(f);
  return GroupElements(make_group_spec_with_form(Family::kSp, form, q), std::move(out));
}

namespace {

// A commuting pair whose common centralizer is ambient-conjugate to the
// displayed subgroup: the least-parameter A2 (N1, N2) or A3 (N3) element and
// the first element of its centralizer that gives the right centralizer.
std::vector<Mat> new_type_pair(const GroupSpec& spec, const std::string& nm) {
  static std::mutex mu;
  static std::map<std::pair<long long, std::string>, std::vector<Mat>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({spec.q, nm});
    if (it != cache.end()) return it->second;
  }
  const std::string parent = nm == "N3" ? "A3" : "A2";
  const Mat a = canonical_representative(make_label(Family::kSp, 4, parent), spec.q,
                                         parameter_space(make_label(Family::kSp, 4, parent),
                                                         spec.q)[0])[0];
  const GroupElements z = centralizer_local(spec, {a});
  const GroupElements ref = displayed_new_type_subgroup(nm, spec.q);
  const auto ref_orders = sorted_element_orders(ref);
  std::vector<Mat> out;
  for (const Mat& b : z.elements()) {
    const GroupElements h = stabilizer(z, b);
    if (h.size() != ref.size() || h.is_abelian() != ref.is_abelian()) continue;
    if (sorted_element_orders(h) != ref_orders) continue;
    if (!are_conjugate_in_ambient(h, ref)) continue;
    out = {a, b};
    break;
  }
  if (out.empty()) throw Error(ErrorCode::kUnclassifiedType, "no pair of type " + nm);
  std::lock_guard<std::mutex> lock(mu);
  cache[{spec.q, nm}] = out;
  return out;
}

}  // namespace

std::vector<Mat> u_canonical_form_variants(const TypeLabel& label, long long q,
                                           const std::vector<int>& params) {
  check_params(label, q, params);
  const GroupSpec spec = make_group_spec(label.family, label.n, q);
  const TypeContext& c = type_context(q);
  const Field& e = *spec.field;
  const std::string& nm = label.name;
  require(label.family == Family::kU &&
              (nm == "(2)_1" || nm == "(2,1)_1" || nm == "(3)_1" || nm == "(2)_1(1)_1"),
          "no free choices for " + label.to_string());
  const Code a0 = c.norm_one[params[0]];
  const Code b0 = nm == "(2)_1(1)_1" ? c.norm_one[params[1]] : Code{0};
  std::vector<Mat> out;
  for (Code a1 : u_nilpotent_parts(e, a0)) {
    if (nm == "(3)_1") {
      for (Code a2 : u_second_parts(e, a0, a1))
        out.push_back(check_member(spec, u_unipotent_form(spec, nm, a0, a1, a2, b0), nm));
    } else {
      out.push_back(check_member(spec, u_unipotent_form(spec, nm, a0, a1, 0, b0), nm));
    }
  }
  return out;
}

std::vector<long long> sorted_element_orders(const GroupElements& h) {
  std::vector<long long> v = h.element_orders();
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Classifier

Classifier::Classifier(Family family, int n, long long q)
    : spec_(make_group_spec(family, n, q)), catalog_(&type_catalog(family, n)) {
  for (const auto& e : *catalog_) {
    const mpq_class v = e.centralizer_order.eval(mpq_class(static_cast<long>(q)));
    orders_.push_back(v.get_den() == 1 ? v.get_num().get_si() : -1);
  }
  refs_.resize(catalog_->size());
}

const GroupElements* Classifier::reference(int index) {
  std::lock_guard<std::mutex> lock(ref_mu_);
  Ref& r = refs_[index];
  if (r.built) return r.group.get();
  r.built = true;
  const TypeCatalogEntry& e = (*catalog_)[index];
  std::vector<Mat> tuple;
  if (e.parent_only) {
    r.group = std::make_unique<GroupElements>(displayed_new_type_subgroup(e.label.name, spec_.q));
  } else {
    if (e.class_count.eval(mpq_class(static_cast<long>(spec_.q))) > 0) {
      tuple = canonical_representative(e.label, spec_.q, parameter_space(e.label, spec_.q)[0]);
    } else {
      tuple = fallback_reference_tuple(e.label, spec_.q);
    }
    if (!tuple.empty())
      r.group = std::make_unique<GroupElements>(centralizer_local(spec_, tuple));
  }
  if (r.group) r.order_profile = sorted_element_orders(*r.group);
  return r.group.get();
}

Classification Classifier::classify_centralizer(const GroupElements& h) {
  const auto key = std::make_pair(h.fingerprint(), h.size());
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Classification out;
  const long long gorder = group_order(spec_.family, spec_.n, spec_.q);
  if (h.size() == gorder) {
    // Every type whose centralizer is the whole group at this q.
    out.label = (*catalog_)[0].label;
    for (size_t i = 0; i < catalog_->size(); ++i) {
      if (i == 0 || orders_[i] == gorder) out.equivalent.push_back((*catalog_)[i].label.name);
    }
  } else {
    std::vector<long long> profile;
    for (size_t i = 0; i < catalog_->size(); ++i) {
      if (orders_[i] != h.size()) continue;
      const GroupElements* ref = reference(static_cast<int>(i));
      if (ref == nullptr || ref->is_abelian() != h.is_abelian()) continue;
      if (profile.empty()) profile = sorted_element_orders(h);
      if (refs_[i].order_profile != profile) continue;
      if (!are_conjugate_in_ambient(h, *ref)) continue;
      if (out.equivalent.empty()) out.label = (*catalog_)[i].label;
      out.equivalent.push_back((*catalog_)[i].label.name);
    }
    if (out.equivalent.empty()) {
      throw Error(ErrorCode::kUnclassifiedType,
                  "no type of " + family_name(spec_.family) + std::to_string(spec_.n) +
                      " matches a centralizer of order " + std::to_string(h.size()) +
                      (h.is_abelian() ? " (abelian)" : " (non-abelian)"));
    }
  }
  std::lock_guard<std::mutex> lock(cache_mu_);
  cache_[key] = out;
  return out;
}

Classification Classifier::classify_tuple(const GroupElements& g, const std::vector<Mat>& tuple) {
  return classify_centralizer(centralizer(g, tuple));
}

Classification Classifier::classify_tuple_local(const std::vector<Mat>& tuple) {
  return classify_centralizer(centralizer_local(spec_, tuple));
}

}  // namespace cbranch
