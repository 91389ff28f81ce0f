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

#include "radaug/errors.h"

namespace radaug {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kInvalidTriplet: return "InvalidTriplet";
    case ErrorCode::kEmptyKeywordList: return "EmptyKeywordList";
    case ErrorCode::kNonDivisible: return "NonDivisible";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateRegion: return "DuplicateRegion";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kMissingAnswer: return "MissingAnswer";
    case ErrorCode::kMissingGenerated: return "MissingGenerated";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kEmptyPrediction: return "EmptyPrediction";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kMissingFile:
    case ErrorCode::kInvalidTriplet:
    case ErrorCode::kEmptyKeywordList:
    case ErrorCode::kNonDivisible:
    case ErrorCode::kDimMismatch:
    case ErrorCode::kInvalidPlan:
    case ErrorCode::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace radaug
