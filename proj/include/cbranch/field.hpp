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

#ifndef CBRANCH_FIELD_HPP_
#define CBRANCH_FIELD_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace cbranch {

// Field elements are small integer codes: the base-p digits of a code are the
// coordinates of the element in the basis 1, t, ..., t^{m-1} of F_p[t]/(f).
using Code = std::uint8_t;

struct FieldSpec {
  int p = 0;
  int m = 0;
  std::vector<int> modulus;  // monic, lowest degree first
  int q = 0;

  bool operator==(const FieldSpec&) const = default;
  std::string to_string() const;
};

class Field {
 public:
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const { return spec_; }
  int size() const { return size_; }
  int characteristic() const { return spec_.p; }

  Code add(Code a, Code b) const { return add_[a * size_ + b]; }
  Code sub(Code a, Code b) const { return add_[a * size_ + neg_[b]]; }
  Code neg(Code a) const { return neg_[a]; }
  Code mul(Code a, Code b) const { return mul_[a * size_ + b]; }
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, long long e) const;
  Code from_int(long long v) const;

  // Least-code generator of the multiplicative group.
  Code primitive() const { return primitive_; }
  int mult_order(Code a) const;
  bool is_square(Code a) const;
  std::vector<int> coords(Code a) const;

  // Quadratic-extension structure: this field is F_{q^2} over base() = F_q.
  bool is_quadratic_extension() const { return base_ != nullptr; }
  const Field& base() const;
  Code frob(Code a) const;            // a^q
  Code embed(Code base_code) const;   // F_q -> F_{q^2}
  int restrict_to_base(Code a) const; // inverse of embed, -1 off the subfield
  bool in_base(Code a) const { return restrict_to_base(a) >= 0; }

  const Code* mul_table() const { return mul_.data(); }
  const Code* add_table() const { return add_.data(); }

 private:
  friend const Field& field_create(int p, int m, int limit);
  friend const Field& quadratic_extension(const Field& base, int limit);
  Field() = default;
  void build_tables();

  FieldSpec spec_;
  int size_ = 0;
  std::vector<Code> add_, mul_, neg_, inv_, log_, exp_;
  Code primitive_ = 1;
  const Field* base_ = nullptr;
  std::vector<Code> frob_, embed_;
  std::vector<int> restrict_;
};

// Fields are interned: repeated calls with the same arguments return the same
// object, which lives for the rest of the process.
const Field& field_create(int p, int m, int limit = 121);
const Field& quadratic_extension(const Field& base, int limit = 121);

bool is_prime(long long n);
// Decomposes q = p^m; returns false if q is not an odd prime power.
bool split_prime_power(long long q, int* p, int* m);
// F_q for an odd prime power q.
const Field& field_of_order(long long q, int limit = 121);

struct FieldElem {
  const Field* field = nullptr;
  Code code = 0;

  FieldElem() = default;
  FieldElem(const Field& f, Code c) : field(&f), code(c) {}

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const { return {*field, field->neg(code)}; }
  FieldElem pow(long long e) const { return {*field, field->pow(code, e)}; }
  FieldElem inverse() const { return {*field, field->inv(code)}; }
  bool operator==(const FieldElem& o) const {
    return field == o.field && code == o.code;
  }
  bool is_zero() const { return code == 0; }
};

FieldElem frobenius(const FieldElem& x);
std::vector<FieldElem> norm_one_subgroup(const Field& ext);

}  // namespace cbranch

#endif  // CBRANCH_FIELD_HPP_
