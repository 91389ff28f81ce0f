// Copyright 2026 The radaug Authors.
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

#ifndef RADAUG_ERRORS_H_
#define RADAUG_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace radaug {

enum class ErrorCode {
  // Configuration and validation failures (CLI exit code 1).
  kInvalidConfig,
  kMissingFile,
  kInvalidTriplet,
  kEmptyKeywordList,
  kNonDivisible,
  kDimMismatch,
  kInvalidPlan,
  kInvalidArgument,
  // Data failures (CLI exit code 2).
  kMalformedLine,
  kDuplicateRegion,
  kDuplicateId,
  kEmptyCorpus,
  kDuplicateKey,
  kMissingAnswer,
  kMissingGenerated,
  kIdMismatch,
  kEmptyPrediction,
  kEmptyReference,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for codes that signal bad configuration rather than bad data.
bool IsValidationError(ErrorCode code);

// All library failures are reported with this exception. `line()` is set for
// line-oriented file errors (1-based, 0 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, int line = 0)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace radaug

#endif  // RADAUG_ERRORS_H_
