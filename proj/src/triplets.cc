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

#include "radaug/triplets.h"

#include <algorithm>
#include <limits>
#include <set>

#include "file_util.h"
#include "radaug/errors.h"
#include "radaug/text.h"

namespace radaug {
namespace {

using nlohmann::json;

struct Mention {
  Span span;
  const Lexicon::Term *term = nullptr;
};

// Leftmost-longest, non-overlapping mentions of any term.
std::vector<Mention> FindMentions(std::string_view sentence,
                                  const std::vector<Lexicon::Term> &terms) {
  std::vector<Mention> hits;
  for (const Lexicon::Term &term : terms) {
    for (const Span &s : FindPhrase(sentence, term.surface)) {
      hits.push_back({s, &term});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Mention &a, const Mention &b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    return a.span.size() > b.span.size();
  });
  std::vector<Mention> chosen;
  for (const Mention &m : hits) {
    if (!chosen.empty() && chosen.back().span.end > m.span.begin) continue;
    chosen.push_back(m);
  }
  return chosen;
}

size_t Gap(const Span &a, const Span &b) {
  if (b.begin >= a.end) return b.begin - a.end;
  if (a.begin >= b.end) return a.begin - b.end;
  return 0;
}

bool NegatedBefore(std::string_view sentence, size_t start,
                   const std::vector<std::string> &cues) {
  for (const std::string &cue : cues) {
    for (const Span &s : FindPhrase(sentence, cue)) {
      if (s.end <= start) return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, std::string>> TermPairs(
    const json &doc, const char *field) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!doc.contains(field)) return out;
  const json &list = doc.at(field);
  if (!list.is_array()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("lexicon field '") + field + "' must be an array");
  }
  for (const json &item : list) {
    if (item.is_array() && item.size() == 2 && item[0].is_string() &&
        item[1].is_string()) {
      out.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
    } else if (item.is_string()) {
      // A bare string is its own canonical form.
      out.emplace_back(item.get<std::string>(), item.get<std::string>());
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string("lexicon '") + field +
                      "' entries must be [surface, canonical] pairs");
    }
  }
  return out;
}

std::string OptionalString(const json &obj, const char *field) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "canonical map rule side must be "
                                           "an object");
  }
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("canonical map field '") + field +
                    "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Triplet MakeTriplet(std::string_view entity, std::string_view position,
                    bool exist) {
  Triplet t{NormalizePhrase(entity), NormalizePhrase(position), exist};
  ValidateTriplet(t);
  return t;
}

void ValidateTriplet(const Triplet &t) {
  if (t.entity.empty() && t.position.empty()) {
    throw Error(ErrorCode::kInvalidTriplet,
                "entity and position are both empty");
  }
  if ((!t.entity.empty() && !IsNormalizedPhrase(t.entity)) ||
      (!t.position.empty() && !IsNormalizedPhrase(t.position))) {
    throw Error(ErrorCode::kInvalidTriplet,
                "triplet fields must be lowercase and single-spaced: {" +
                    t.entity + ", " + t.position + "}");
  }
}

Lexicon MakeLexicon(std::vector<std::pair<std::string, std::string>> entities,
                    std::vector<std::pair<std::string, std::string>> positions,
                    std::vector<std::string> negation_cues) {
  Lexicon lex;
  for (auto &[surface, canonical] : entities) {
    lex.entities.push_back({NormalizePhrase(surface), NormalizePhrase(canonical)});
  }
  for (auto &[surface, canonical] : positions) {
    lex.positions.push_back(
        {NormalizePhrase(surface), NormalizePhrase(canonical)});
  }
  for (auto &cue : negation_cues) lex.negation_cues.push_back(NormalizePhrase(cue));
  ValidateLexicon(lex);
  return lex;
}

void ValidateLexicon(const Lexicon &lexicon) {
  auto check_terms = [](const std::vector<Lexicon::Term> &terms,
                        const char *what) {
    std::set<std::string_view> seen;
    for (const Lexicon::Term &t : terms) {
      if (!IsNormalizedPhrase(t.surface) || !IsNormalizedPhrase(t.canonical)) {
        throw Error(ErrorCode::kInvalidConfig,
                    std::string("lexicon ") + what + " term '" + t.surface +
                        "' must be non-empty, lowercase and single-spaced");
      }
      if (!seen.insert(t.surface).second) {
        throw Error(ErrorCode::kInvalidConfig,
                    std::string("duplicate lexicon ") + what + " '" +
                        t.surface + "'");
      }
    }
  };
  check_terms(lexicon.entities, "entity");
  check_terms(lexicon.positions, "position");
  std::set<std::string_view> cues;
  for (const std::string &cue : lexicon.negation_cues) {
    if (!IsNormalizedPhrase(cue) || !cues.insert(cue).second) {
      throw Error(ErrorCode::kInvalidConfig,
                  "negation cue '" + cue + "' is empty, not normalized, or "
                  "duplicated");
    }
  }
}

Lexicon LexiconFromJson(const json &doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "lexicon must be a JSON object");
  }
  std::vector<std::string> cues;
  if (doc.contains("negation_cues")) {
    const json &list = doc.at("negation_cues");
    if (!list.is_array()) {
      throw Error(ErrorCode::kInvalidConfig, "negation_cues must be an array");
    }
    for (const json &c : list) {
      if (!c.is_string()) {
        throw Error(ErrorCode::kInvalidConfig, "negation cue must be a string");
      }
      cues.push_back(c.get<std::string>());
    }
  }
  return MakeLexicon(TermPairs(doc, "entities"), TermPairs(doc, "positions"),
                     std::move(cues));
}

Lexicon LoadLexicon(const std::string &path) {
  try {
    return LexiconFromJson(internal::ReadJsonFile(path));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kInvalidConfig) {
      throw Error(ErrorCode::kInvalidConfig, path + ": " + e.what());
    }
    throw;
  }
}

CanonicalMap::CanonicalMap(std::vector<CanonicalRule> rules) {
  for (CanonicalRule &r : rules) {
    r.from_entity = NormalizePhrase(r.from_entity);
    r.from_position = NormalizePhrase(r.from_position);
    r.to_entity = NormalizePhrase(r.to_entity);
    r.to_position = NormalizePhrase(r.to_position);
    if ((r.from_entity.empty() && r.from_position.empty()) ||
        (r.to_entity.empty() && r.to_position.empty())) {
      throw Error(ErrorCode::kInvalidConfig,
                  "canonical map rule with empty entity and position");
    }
  }
  rules_ = std::move(rules);
  for (const CanonicalRule &r : rules_) {
    const CanonicalRule *next = Match(r.to_entity, r.to_position);
    if (next != nullptr && (next->to_entity != r.to_entity ||
                            next->to_position != r.to_position)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "canonical map is not idempotent: {" + r.to_entity + ", " +
                      r.to_position + "} is rewritten to {" +
                      next->to_entity + ", " + next->to_position + "}");
    }
  }
}

const CanonicalRule *CanonicalMap::Match(std::string_view entity,
                                         std::string_view position) const {
  for (const CanonicalRule &r : rules_) {
    if (r.from_entity == entity && r.from_position == position) return &r;
  }
  return nullptr;
}

Triplet CanonicalMap::Apply(const Triplet &t) const {
  const CanonicalRule *r = Match(t.entity, t.position);
  if (r == nullptr) return t;
  return Triplet{r->to_entity, r->to_position, t.exist};
}

CanonicalMap CanonicalMapFromJson(const json &doc) {
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
    throw Error(ErrorCode::kInvalidConfig,
                "canonical map must be an object with a 'rules' array");
  }
  std::vector<CanonicalRule> rules;
  for (const json &rule : doc["rules"]) {
    if (!rule.is_object() || !rule.contains("from") || !rule.contains("to")) {
      throw Error(ErrorCode::kInvalidConfig,
                  "canonical map rule needs 'from' and 'to'");
    }
    rules.push_back({OptionalString(rule["from"], "entity"),
                     OptionalString(rule["from"], "position"),
                     OptionalString(rule["to"], "entity"),
                     OptionalString(rule["to"], "position")});
  }
  return CanonicalMap(std::move(rules));
}

CanonicalMap LoadCanonicalMap(const std::string &path) {
  try {
    return CanonicalMapFromJson(internal::ReadJsonFile(path));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kInvalidConfig) {
      throw Error(ErrorCode::kInvalidConfig, path + ": " + e.what());
    }
    throw;
  }
}

std::vector<std::string> SplitSentences(std::string_view findings) {
  std::vector<std::string> sentences;
  auto flush = [&](size_t begin, size_t end) {
    std::string_view piece = Trim(findings.substr(begin, end - begin));
    if (!piece.empty()) sentences.emplace_back(piece);
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  size_t start = 0;
  for (size_t i = 0; i < findings.size(); ++i) {
    char c = findings[i];
    if (c == '\n') {
      flush(start, i);
      start = i + 1;
    } else if (c == ';' || c == '.') {
      if (c == '.' && i > 0 && i + 1 < findings.size() &&
          is_digit(findings[i - 1]) && is_digit(findings[i + 1])) {
        continue;
      }
      flush(start, i + 1);
      start = i + 1;
    }
  }
  flush(start, findings.size());
  return sentences;
}

std::vector<Triplet> ExtractTriplets(std::string_view sentence,
                                     const Lexicon &lexicon) {
  const std::string text = NormalizePhrase(sentence);
  std::vector<Mention> entities = FindMentions(text, lexicon.entities);
  std::vector<Mention> positions;
  for (const Mention &p : FindMentions(text, lexicon.positions)) {
    bool overlaps = std::any_of(
        entities.begin(), entities.end(),
        [&](const Mention &e) { return e.span.Overlaps(p.span); });
    if (!overlaps) positions.push_back(p);
  }

  std::vector<Triplet> out;
  if (entities.empty()) {
    for (const Mention &p : positions) {
      bool negated = NegatedBefore(text, p.span.begin, lexicon.negation_cues);
      out.push_back({"", p.term->canonical, !negated});
    }
    return out;
  }
  for (const Mention &e : entities) {
    const Mention *best = nullptr;
    size_t best_gap = std::numeric_limits<size_t>::max();
    for (const Mention &p : positions) {
      size_t gap = Gap(e.span, p.span);
      // Strict '<' keeps the earlier candidate on ties, except that a
      // position after the entity beats one before it.
      bool after = p.span.begin >= e.span.end;
      if (gap < best_gap ||
          (gap == best_gap && after && best->span.begin < e.span.begin)) {
        best = &p;
        best_gap = gap;
      }
    }
    bool negated = NegatedBefore(text, e.span.begin, lexicon.negation_cues);
    out.push_back({e.term->canonical, best ? best->term->canonical : "",
                   !negated});
  }
  return out;
}

Triplet Canonicalize(const Triplet &t, const CanonicalMap &map) {
  return map.Apply(t);
}

Question RenderQuestion(const Triplet &t) {
  if (t.entity.empty() && t.position.empty()) {
    throw Error(ErrorCode::kInvalidTriplet,
                "cannot render a question without entity or position");
  }
  Question q;
  q.source = t;
  if (t.entity.empty()) {
    q.text = "Is the " + t.position + " normal?";
  } else if (t.position.empty()) {
    q.text = "Can you observe " + t.entity + " in this CT scan?";
  } else {
    q.text = "Is there " + t.entity + " in the " + t.position + "?";
  }
  return q;
}

std::vector<Triplet> ReportToTriplets(std::string_view report_text,
                                      const Lexicon &lexicon,
                                      const CanonicalMap &map,
                                      std::vector<std::string> *warnings) {
  std::vector<Triplet> out;
  for (const std::string &sentence : SplitSentences(report_text)) {
    for (const Triplet &raw : ExtractTriplets(sentence, lexicon)) {
      Triplet t = map.Apply(raw);
      auto dup = std::find_if(out.begin(), out.end(), [&](const Triplet &o) {
        return o.SameKey(t);
      });
      if (dup == out.end()) {
        out.push_back(std::move(t));
      } else if (dup->exist != t.exist && warnings != nullptr) {
        warnings->push_back("conflicting exist flags for {" + t.entity +
                            ", " + t.position + "}; keeping the first (" +
                            (dup->exist ? "true" : "false") + ")");
      }
    }
  }
  return out;
}

nlohmann::ordered_json TripletToJson(const Triplet &t) {
  nlohmann::ordered_json j;
  j["entity"] = t.entity;
  j["position"] = t.position;
  j["exist"] = t.exist;
  return j;
}

}  // namespace radaug
