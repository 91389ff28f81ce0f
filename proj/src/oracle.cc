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

#include "radaug/oracle.h"

#include <algorithm>

#include "file_util.h"
#include "json.hpp"
#include "radaug/errors.h"
#include "radaug/text.h"

namespace radaug {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

bool ReferenceAnswer(const Triplet &query,
                     const std::vector<Triplet> &reference_triplets) {
  for (const Triplet &ref : reference_triplets) {
    if (ref.SameKey(query)) return ref.exist;
  }
  return false;
}

ReferenceDerived BuildReferenceSource(const Corpus &corpus,
                                      const Lexicon &lexicon,
                                      const CanonicalMap &map) {
  ReferenceDerived source;
  for (const Report &report : corpus.reports) {
    std::vector<Triplet> all;
    for (const auto &[region, text] : report.findings) {
      for (Triplet &t : ReportToTriplets(text, lexicon, map)) {
        bool seen = std::any_of(all.begin(), all.end(),
                                [&](const Triplet &o) { return o.SameKey(t); });
        if (!seen) all.push_back(std::move(t));
      }
    }
    source.triplets_by_report.emplace(report.id, std::move(all));
  }
  return source;
}

FileBacked ParseAnswers(std::istream &in) {
  FileBacked table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto malformed = [&](const std::string &why) {
      return Error(ErrorCode::kMalformedLine,
                   "answers line " + std::to_string(line_no) + ": " + why,
                   line_no);
    };
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception &e) {
      throw malformed(e.what());
    }
    if (!record.is_object()) throw malformed("not a JSON object");
    for (const char *field : {"id", "entity", "position"}) {
      if (!record.contains(field) || !record[field].is_string()) {
        throw malformed(std::string("field '") + field + "' must be a string");
      }
    }
    if (!record.contains("answer") || !record["answer"].is_boolean()) {
      throw malformed("field 'answer' must be a boolean");
    }
    AnswerKey key{record["id"].get<std::string>(),
                  NormalizePhrase(record["entity"].get<std::string>()),
                  NormalizePhrase(record["position"].get<std::string>())};
    if (key.report_id.empty() || (key.entity.empty() && key.position.empty())) {
      throw malformed("empty id or triplet");
    }
    if (!table.answers.emplace(key, record["answer"].get<bool>()).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "answers line " + std::to_string(line_no) +
                      ": duplicate key (" + key.report_id + ", " + key.entity +
                      ", " + key.position + ")",
                  line_no);
    }
  }
  return table;
}

FileBacked LoadAnswers(const std::string &path) {
  std::ifstream in = internal::OpenInput(path);
  return ParseAnswers(in);
}

bool Answer(const AnswerSource &source, std::string_view report_id,
            const Triplet &query) {
  return std::visit(
      Overloaded{
          [&](const ReferenceDerived &ref) {
            auto it = ref.triplets_by_report.find(report_id);
            if (it == ref.triplets_by_report.end()) return false;
            return ReferenceAnswer(query, it->second);
          },
          [&](const FileBacked &file) {
            AnswerKey key{std::string(report_id), query.entity,
                          query.position};
            auto it = file.answers.find(key);
            if (it == file.answers.end()) {
              throw Error(ErrorCode::kMissingAnswer,
                          "no answer for (" + key.report_id + ", " +
                              key.entity + ", " + key.position + ")");
            }
            return it->second;
          },
          [](const Constant &c) { return c.value; },
      },
      source);
}

}  // namespace radaug
