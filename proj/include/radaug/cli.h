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

#ifndef RADAUG_CLI_H_
#define RADAUG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "radaug/oracle.h"
#include "radaug/vol3d.h"

namespace radaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitData = 2;

// Runs one subcommand. `args` excludes the program name. Payloads go to
// `out` (or the --out file), diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

// Parses reference | file:<path> | const:true | const:false. File-backed
// answers are loaded immediately; the reference variant needs the corpus and
// is returned empty.
struct OracleSelector {
  enum class Kind { kReference, kFile, kConstant };
  Kind kind = Kind::kReference;
  std::string path;
  bool value = false;
};
OracleSelector ParseOracleSelector(const std::string &text);

// "D,H,W" with positive integers.
template <class Tag>
vol3d::Extent3<Tag> ParseExtent(const std::string &text, const char *what);

struct GeometryRequest {
  vol3d::VolumeDims volume;
  vol3d::PatchDims patch;
  bool anyres = false;
  vol3d::VolumeDims crop;
  vol3d::VolumeDims global;
  std::string projector = "mlp";  // mlp | spp | tokenpacker
  vol3d::KernelDims pool{2, 2, 2};
  vol3d::KernelDims down{2, 2, 2};
  bool with_mask = false;
  // Runs the projector on seeded random embeddings of a single view.
  bool forward = false;
  int64_t embed_dim = 16;
  int64_t out_dim = 32;
  uint64_t seed = 0;
};

nlohmann::ordered_json DescribeGeometry(const GeometryRequest &request);

}  // namespace radaug::cli

#endif  // RADAUG_CLI_H_
