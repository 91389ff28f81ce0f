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

#include "radaug/augment.h"

#include <algorithm>

#include "file_util.h"
#include "radaug/errors.h"
#include "radaug/text.h"

namespace radaug {
namespace {

using nlohmann::json;

Error ConfigError(const std::string &msg) {
  return Error(ErrorCode::kInvalidConfig, msg);
}

void NormalizeKeywords(std::vector<std::string> &keywords, const char *what) {
  if (keywords.empty()) {
    throw Error(ErrorCode::kEmptyKeywordList, std::string(what) + " is empty");
  }
  for (std::string &k : keywords) {
    k = NormalizePhrase(k);
    if (k.empty()) throw ConfigError(std::string(what) + " has a blank entry");
  }
}

void CheckFinding(const std::string &sentence, const char *what) {
  std::string_view trimmed = Trim(sentence);
  if (trimmed.empty() || trimmed.back() != '.' ||
      trimmed.size() != sentence.size()) {
    throw ConfigError(std::string(what) + " must be trimmed and end with '.': \"" +
                      sentence + "\"");
  }
}

Region RegionField(const json &obj) {
  if (!obj.contains("region") || !obj["region"].is_string()) {
    throw ConfigError("entry needs a string 'region'");
  }
  auto region = ParseRegion(obj["region"].get<std::string>());
  if (!region) {
    throw ConfigError("unknown region '" + obj["region"].get<std::string>() +
                      "'");
  }
  return *region;
}

std::string StringField(const json &obj, const char *field) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw ConfigError(std::string("entry needs a string '") + field + "'");
  }
  return it->get<std::string>();
}

std::vector<std::string> StringList(const json &obj, const char *field) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_array()) {
    throw ConfigError(std::string("entry needs an array '") + field + "'");
  }
  std::vector<std::string> out;
  for (const json &v : *it) {
    if (!v.is_string()) {
      throw ConfigError(std::string("'") + field + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <class Fn>
auto WithPath(const std::string &path, Fn &&fn) {
  try {
    return fn(internal::ReadJsonFile(path));
  } catch (const Error &e) {
    if (IsValidationError(e.code())) throw Error(e.code(), path + ": " + e.what());
    throw;
  }
}

}  // namespace

void ValidateKnowledgeBase(KnowledgeBase &kb) {
  for (size_t i = 0; i < kb.entries.size(); ++i) {
    CommonTripletEntry &e = kb.entries[i];
    e.triplet = MakeTriplet(e.triplet.entity, e.triplet.position, true);
    NormalizeKeywords(e.guard_keywords, "guard_keywords");
    CheckFinding(e.positive_finding, "positive_finding");
    CheckFinding(e.negative_finding, "negative_finding");
    for (size_t j = 0; j < i; ++j) {
      const CommonTripletEntry &o = kb.entries[j];
      if (o.region == e.region && o.triplet.SameKey(e.triplet)) {
        throw ConfigError("duplicate knowledge-base entry {" +
                          e.triplet.entity + ", " + e.triplet.position +
                          "} for region " + std::string(RegionName(e.region)));
      }
    }
  }
}

void ValidateNormalityRules(std::vector<NormalityRule> &rules) {
  for (NormalityRule &r : rules) {
    NormalizeKeywords(r.required_keywords, "required_keywords");
    if (r.required_keywords.size() > 2) {
      throw ConfigError("normality rule takes one or two keywords");
    }
    CheckFinding(r.normal_finding, "normal_finding");
    // The finding has to satisfy its own rule, otherwise a second pass would
    // append it again.
    if (!KeywordPresent(r.normal_finding, r.required_keywords)) {
      throw ConfigError("normal_finding \"" + r.normal_finding +
                        "\" does not contain its required keywords");
    }
  }
}

KnowledgeBase KnowledgeBaseFromJson(const json &doc) {
  if (!doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    throw ConfigError("knowledge base must be an object with an 'entries' array");
  }
  KnowledgeBase kb;
  for (const json &item : doc["entries"]) {
    if (!item.is_object()) throw ConfigError("entry must be an object");
    CommonTripletEntry e;
    e.region = RegionField(item);
    e.triplet.entity = item.contains("entity") ? StringField(item, "entity") : "";
    e.triplet.position =
        item.contains("position") ? StringField(item, "position") : "";
    e.guard_keywords = StringList(item, "guard_keywords");
    e.positive_finding = StringField(item, "positive_finding");
    e.negative_finding = StringField(item, "negative_finding");
    kb.entries.push_back(std::move(e));
  }
  ValidateKnowledgeBase(kb);
  return kb;
}

KnowledgeBase LoadKnowledgeBase(const std::string &path) {
  return WithPath(path, [](const json &doc) { return KnowledgeBaseFromJson(doc); });
}

std::vector<NormalityRule> NormalityRulesFromJson(const json &doc) {
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
    throw ConfigError("normality rules must be an object with a 'rules' array");
  }
  std::vector<NormalityRule> rules;
  for (const json &item : doc["rules"]) {
    if (!item.is_object()) throw ConfigError("rule must be an object");
    rules.push_back({RegionField(item), StringList(item, "required_keywords"),
                     StringField(item, "normal_finding")});
  }
  ValidateNormalityRules(rules);
  return rules;
}

std::vector<NormalityRule> LoadNormalityRules(const std::string &path) {
  return WithPath(path,
                  [](const json &doc) { return NormalityRulesFromJson(doc); });
}

bool KeywordPresent(std::string_view report_text,
                    const std::vector<std::string> &keywords) {
  if (keywords.empty()) {
    throw Error(ErrorCode::kEmptyKeywordList, "keyword list is empty");
  }
  std::vector<std::string> needles;
  for (const std::string &k : keywords) needles.push_back(NormalizePhrase(k));

  auto all_in = [&](std::string_view text) {
    std::string norm = NormalizePhrase(text);
    return std::all_of(needles.begin(), needles.end(), [&](const std::string &k) {
      return ContainsPhrase(norm, k);
    });
  };
  if (needles.size() == 1) return all_in(report_text);
  for (const std::string &sentence : SplitSentences(report_text)) {
    if (all_in(sentence)) return true;
  }
  return false;
}

std::string AppendSentence(std::string_view text, std::string_view sentence) {
  std::string out(text);
  if (!out.empty() && !Trim(out.substr(out.size() - 1)).empty()) out += ' ';
  out += sentence;
  return out;
}

AugmentedReport BqAugment(const Report &report, Region region,
                          const KnowledgeBase &kb, const AnswerSource &source) {
  const std::string *generated = report.Generated(region);
  if (generated == nullptr) {
    throw Error(ErrorCode::kMissingGenerated,
                "report " + report.id + " has no generated " +
                    std::string(RegionName(region)) + " text");
  }
  AugmentedReport out;
  out.id = report.id;
  out.region = region;
  out.original_generated = *generated;
  out.final_text = *generated;
  for (const CommonTripletEntry &entry : kb.entries) {
    if (entry.region != region) continue;
    if (KeywordPresent(out.final_text, entry.guard_keywords)) continue;
    Triplet answered = entry.triplet;
    answered.exist = Answer(source, report.id, entry.triplet);
    const std::string &sentence =
        answered.exist ? entry.positive_finding : entry.negative_finding;
    out.final_text = AppendSentence(out.final_text, sentence);
    out.appended_bq.push_back({sentence, std::move(answered)});
  }
  return out;
}

NnResult NnAugment(std::string_view report_text, Region region,
                   const std::vector<NormalityRule> &rules) {
  NnResult out{std::string(report_text), {}};
  for (const NormalityRule &rule : rules) {
    if (rule.region != region) continue;
    if (KeywordPresent(out.text, rule.required_keywords)) continue;
    out.text = AppendSentence(out.text, rule.normal_finding);
    out.appended.push_back({rule.normal_finding, rule.required_keywords});
  }
  return out;
}

AugmentedReport AugmentPipeline(const Report &report, Region region,
                                const KnowledgeBase &kb,
                                const std::vector<NormalityRule> &rules,
                                const AnswerSource &source,
                                const AugmentOptions &options) {
  static const KnowledgeBase kEmptyKb;
  AugmentedReport out =
      BqAugment(report, region, options.binary_questioning ? kb : kEmptyKb,
                source);
  if (options.naive_normality) {
    NnResult nn = NnAugment(out.final_text, region, rules);
    out.final_text = std::move(nn.text);
    out.appended_nn = std::move(nn.appended);
  }
  return out;
}

}  // namespace radaug
