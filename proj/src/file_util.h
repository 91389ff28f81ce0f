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

#ifndef RADAUG_SRC_FILE_UTIL_H_
#define RADAUG_SRC_FILE_UTIL_H_

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "radaug/errors.h"

namespace radaug::internal {

inline std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path);
  return in;
}

inline void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

// Parses a whole JSON document; syntax errors are configuration errors.
inline nlohmann::json ReadJsonFile(const std::string &path) {
  std::ifstream in = OpenInput(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, path + ": " + e.what());
  }
}

}  // namespace radaug::internal

#endif  // RADAUG_SRC_FILE_UTIL_H_
