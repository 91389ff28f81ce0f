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

// Report corpora. On disk a corpus is JSON-Lines with one record per
// (report, region) pair:
//
//   {"id": "c1", "region": "abdomen", "findings": "...", "generated": "..."}
//
// Records sharing an id are merged into one Report. Text is kept verbatim.

#ifndef RADAUG_CORPUS_H_
#define RADAUG_CORPUS_H_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radaug {

enum class Region { kChest, kAbdomen, kPelvis };

inline constexpr std::array<Region, 3> kAllRegions = {
    Region::kChest, Region::kAbdomen, Region::kPelvis};

std::string_view RegionName(Region region);
std::optional<Region> ParseRegion(std::string_view name);

struct Report {
  std::string id;
  // Reference findings per region. Map order is chest, abdomen, pelvis.
  std::map<Region, std::string> findings;
  // Model output; may be absent for any region.
  std::map<Region, std::string> generated;

  const std::string *Findings(Region region) const;
  const std::string *Generated(Region region) const;

  bool operator==(const Report &other) const = default;
};

struct Corpus {
  std::vector<Report> reports;

  const Report *Find(std::string_view id) const;
  size_t RecordCount() const;

  bool operator==(const Corpus &other) const = default;
};

// Throws Error if the corpus breaks a data invariant (duplicate ids, empty
// texts, reports with no regions, or generated text without findings).
void ValidateCorpus(const Corpus &corpus);

Corpus ParseCorpus(std::istream &in);
Corpus LoadCorpus(const std::string &path);

std::string SerializeCorpus(const Corpus &corpus);
void WriteCorpus(const Corpus &corpus, const std::string &path);

}  // namespace radaug

#endif  // RADAUG_CORPUS_H_
