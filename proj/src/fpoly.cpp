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

#include "cbranch/fpoly.hpp"

#include <algorithm>
#include <sstream>

#include "cbranch/error.hpp"

namespace cbranch {

FPoly::FPoly(const Field& f, std::vector<Code> coeffs) : field_(&f), c_(std::move(coeffs)) {
  normalize();
}

void FPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FPoly FPoly::monomial(const Field& f, int degree, Code c) {
  std::vector<Code> v(degree + 1, 0);
  v[degree] = c;
  return FPoly(f, v);
}

FPoly FPoly::monic_from_index(const Field& f, int degree, long long index) {
  std::vector<Code> v(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    v[i] = static_cast<Code>(index % f.size());
    index /= f.size();
  }
  v[degree] = 1;
  return FPoly(f, v);
}

FPoly FPoly::operator+(const FPoly& o) const {
  std::vector<Code> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(i), o.coeff(i));
  return FPoly(*field_, r);
}

FPoly FPoly::operator-(const FPoly& o) const {
  std::vector<Code> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = field_->sub(coeff(i), o.coeff(i));
  return FPoly(*field_, r);
}

FPoly FPoly::operator*(const FPoly& o) const {
  if (is_zero() || o.is_zero()) return FPoly(*field_);
  std::vector<Code> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
  return FPoly(*field_, r);
}

FPoly FPoly::scaled(Code s) const {
  std::vector<Code> r(c_);
  for (auto& x : r) x = field_->mul(x, s);
  return FPoly(*field_, r);
}

FPoly FPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

void FPoly::divmod(const FPoly& d, FPoly* quot, FPoly* rem) const {
  if (d.is_zero()) throw Error(ErrorCode::kSingularSystem, "polynomial division by zero");
  std::vector<Code> r(c_);
  const int dd = d.degree();
  const Code li = field_->inv(d.leading());
  std::vector<Code> q(std::max(0, degree() - dd + 1), 0);
  for (int i = degree(); i >= dd; --i) {
    const Code c = field_->mul(r[i], li);
    if (c == 0) continue;
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] = field_->sub(r[i - dd + j], field_->mul(c, d.c_[j]));
  }
  if (quot) *quot = FPoly(*field_, q);
  if (rem) *rem = FPoly(*field_, r);
}

FPoly FPoly::operator%(const FPoly& d) const {
  FPoly r;
  divmod(d, nullptr, &r);
  return r;
}

FPoly FPoly::operator/(const FPoly& d) const {
  FPoly q;
  divmod(d, &q, nullptr);
  return q;
}

Code FPoly::eval(Code x) const {
  Code acc = 0;
  for (int i = degree(); i >= 0; --i) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

bool FPoly::operator<(const FPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string FPoly::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << static_cast<int>(c_[i]);
  os << "]";
  return os.str();
}

std::vector<std::pair<FPoly, int>> factor(const FPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::kInvalidParams, "factor of zero polynomial");
  std::vector<std::pair<FPoly, int>> out;
  FPoly g = f.monic();
  const Field& F = f.field();
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= F.size();
    for (long long idx = 0; idx < count && 2 * d <= g.degree(); ++idx) {
      FPoly h = FPoly::monic_from_index(F, d, idx);
      int mult = 0;
      while (g.degree() >= d) {
        FPoly q, r;
        g.divmod(h, &q, &r);
        if (!r.is_zero()) break;
        g = q;
        ++mult;
      }
      if (mult > 0) out.emplace_back(h, mult);
    }
  }
  if (g.degree() >= 1) {
    bool merged = false;
    for (auto& pr : out) {
      if (pr.first == g) {
        ++pr.second;
        merged = true;
      }
    }
    if (!merged) out.emplace_back(g, 1);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const FPoly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

std::vector<FPoly> monic_irreducibles(const Field& f, int degree) {
  std::vector<FPoly> out;
  long long count = 1;
  for (int i = 0; i < degree; ++i) count *= f.size();
  for (long long idx = 0; idx < count; ++idx) {
    FPoly h = FPoly::monic_from_index(f, degree, idx);
    if (is_irreducible(h)) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cbranch
