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

#ifndef CBRANCH_EXPORT_HPP_
#define CBRANCH_EXPORT_HPP_

#include <gmpxx.h>

#include <string>

#include "cbranch/branching.hpp"
#include "cbranch/polyq.hpp"
#include "cbranch/symcount.hpp"
#include "json.hpp"

namespace cbranch {

inline constexpr int kSchemaVersion = 1;

// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
nlohmann::ordered_json integer_to_json(const mpz_class& z);
// [numerator, denominator]
nlohmann::ordered_json rational_to_json(const mpq_class& r);
// Lowest-degree-first list of [numerator, denominator] pairs.
nlohmann::ordered_json poly_to_json(const PolyQ& p);
// A constant polynomial with integral value exports as an integer, anything
// else as a coefficient vector.
nlohmann::ordered_json value_to_json(const PolyQ& p);

nlohmann::ordered_json matrix_to_json(const BranchingMatrix& b);
std::string matrix_to_csv(const BranchingMatrix& b);
std::string matrix_to_pretty(const BranchingMatrix& b);

nlohmann::ordered_json verify_report_to_json(const VerifyReport& r);
nlohmann::ordered_json series_to_json(const RatSeries& s, int expand_to);
nlohmann::ordered_json tpoly_to_json(const TPoly& t);

}  // namespace cbranch

#endif  // CBRANCH_EXPORT_HPP_
