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

#include "radaug/corpus.h"

#include <set>
#include <unordered_map>

#include "file_util.h"
#include "json.hpp"
#include "radaug/errors.h"
#include "radaug/text.h"

namespace radaug {
namespace {

using nlohmann::json;

std::string RequireString(const json &record, const char *field, int line_no,
                          bool required) {
  auto it = record.find(field);
  if (it == record.end()) {
    if (!required) return {};
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": missing field '" +
                    field + "'",
                line_no);
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": field '" + field +
                    "' must be a string",
                line_no);
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view RegionName(Region region) {
  switch (region) {
    case Region::kChest: return "chest";
    case Region::kAbdomen: return "abdomen";
    case Region::kPelvis: return "pelvis";
  }
  return "";
}

std::optional<Region> ParseRegion(std::string_view name) {
  for (Region r : kAllRegions) {
    if (RegionName(r) == name) return r;
  }
  return std::nullopt;
}

const std::string *Report::Findings(Region region) const {
  auto it = findings.find(region);
  return it == findings.end() ? nullptr : &it->second;
}

const std::string *Report::Generated(Region region) const {
  auto it = generated.find(region);
  return it == generated.end() ? nullptr : &it->second;
}

const Report *Corpus::Find(std::string_view id) const {
  for (const Report &r : reports) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

size_t Corpus::RecordCount() const {
  size_t n = 0;
  for (const Report &r : reports) n += r.findings.size();
  return n;
}

void ValidateCorpus(const Corpus &corpus) {
  if (corpus.reports.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no reports");
  }
  std::set<std::string_view> ids;
  for (const Report &r : corpus.reports) {
    if (r.id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "report with empty id");
    }
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate report id " + r.id);
    }
    if (r.findings.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "report " + r.id + " has no regions");
    }
    for (const auto &[region, text] : r.findings) {
      if (Trim(text).empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "report " + r.id + " has empty " +
                        std::string(RegionName(region)) + " findings");
      }
    }
    for (const auto &[region, text] : r.generated) {
      if (!r.findings.contains(region)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "report " + r.id + " has generated " +
                        std::string(RegionName(region)) +
                        " text without findings");
      }
      if (Trim(text).empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "report " + r.id + " has empty generated text");
      }
    }
  }
}

Corpus ParseCorpus(std::istream &in) {
  Corpus corpus;
  std::unordered_map<std::string, size_t> index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": not a JSON object",
                  line_no);
    }

    std::string id = RequireString(record, "id", line_no, true);
    std::string region_name = RequireString(record, "region", line_no, true);
    std::string findings = RequireString(record, "findings", line_no, true);
    bool has_generated = record.contains("generated");
    std::string generated =
        RequireString(record, "generated", line_no, has_generated);

    auto region = ParseRegion(region_name);
    if (!region) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": unknown region '" +
                      region_name + "'",
                  line_no);
    }
    if (id.empty() || Trim(findings).empty() ||
        (has_generated && Trim(generated).empty())) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": empty id or text",
                  line_no);
    }

    auto [it, inserted] = index.emplace(id, corpus.reports.size());
    if (inserted) {
      corpus.reports.emplace_back();
      corpus.reports.back().id = id;
    }
    Report &report = corpus.reports[it->second];
    if (report.findings.contains(*region)) {
      throw Error(ErrorCode::kDuplicateRegion,
                  "line " + std::to_string(line_no) + ": report " + id +
                      " repeats region " + region_name,
                  line_no);
    }
    report.findings.emplace(*region, std::move(findings));
    if (has_generated) report.generated.emplace(*region, std::move(generated));
  }
  if (corpus.reports.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no records");
  }
  return corpus;
}

Corpus LoadCorpus(const std::string &path) {
  std::ifstream in = internal::OpenInput(path);
  return ParseCorpus(in);
}

std::string SerializeCorpus(const Corpus &corpus) {
  ValidateCorpus(corpus);
  std::string out;
  for (const Report &r : corpus.reports) {
    for (const auto &[region, text] : r.findings) {
      nlohmann::ordered_json record;
      record["id"] = r.id;
      record["region"] = RegionName(region);
      record["findings"] = text;
      if (const std::string *gen = r.Generated(region)) {
        record["generated"] = *gen;
      }
      out += record.dump();
      out += '\n';
    }
  }
  return out;
}

void WriteCorpus(const Corpus &corpus, const std::string &path) {
  internal::WriteText(path, SerializeCorpus(corpus));
}

}  // namespace radaug
