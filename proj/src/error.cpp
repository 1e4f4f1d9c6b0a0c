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

#include "cbranch/error.hpp"

namespace cbranch {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonOddPrime: return "NonOddPrime";
    case ErrorCode::kLimitExceeded: return "LimitExceeded";
    case ErrorCode::kWrongField: return "WrongField";
    case ErrorCode::kZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotAMember: return "NotAMember";
    case ErrorCode::kUnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kUnclassifiedType: return "UnclassifiedType";
    case ErrorCode::kSingularSystem: return "SingularSystem";
  }
  return "Unknown";
}

}  // namespace cbranch
