// Copyright 2026 The dpcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPCOMM_ERROR_H_
#define DPCOMM_ERROR_H_

#include <stdexcept>
#include <string>

namespace dpcomm {

// Failure categories shared by every module. The numeric values are part of
// the C API (see dpcomm.h) and must not be reordered.
enum class ErrorCode {
  kInvalidParameter = 1,
  kInfeasibleOrder = 2,
  kCompositionOrder = 3,
  kCalibrationInfeasible = 4,
  kDegenerateMechanism = 5,
  kEvaluation = 6,
  kInvalidAction = 7,
  kEnumerationBudget = 8,
  kSingularTarget = 9,
  kStepSize = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidParameter, message);
}

}  // namespace dpcomm

#endif  // DPCOMM_ERROR_H_
