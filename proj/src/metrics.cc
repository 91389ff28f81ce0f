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

#include "radaug/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "file_util.h"
#include "radaug/errors.h"
#include "radaug/parallel.h"
#include "radaug/text.h"

namespace radaug {
namespace {

using nlohmann::json;

bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

std::unordered_map<std::string, int> NgramCounts(const TokenSeq &tokens,
                                                 int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

double WeightedF(double p, double r, double beta) {
  if (p <= 0.0 || r <= 0.0) return 0.0;
  double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

// Branch-and-bound over alignments in prediction order. Every state keeps the
// alignment able to reach the maximum match count, so only the chunk count
// is optimized.
class MeteorSearch {
 public:
  MeteorSearch(const std::vector<int> &pred, const std::vector<int> &ref,
               int num_types, size_t budget)
      : pred_(pred),
        ref_(ref),
        ref_positions_(num_types),
        quota_(num_types, 0),
        pred_left_(num_types, 0),
        used_(ref.size(), 0),
        budget_(budget) {
    std::vector<int> ref_count(num_types, 0);
    for (size_t j = 0; j < ref.size(); ++j) {
      ref_positions_[ref[j]].push_back(static_cast<int>(j));
      ++ref_count[ref[j]];
    }
    for (int w : pred) ++pred_left_[w];
    for (int w = 0; w < num_types; ++w) {
      quota_[w] = std::min(pred_left_[w], ref_count[w]);
      remaining_ += quota_[w];
    }
  }

  size_t MaxMatches() const { return remaining_; }

  MeteorAlignment Run(size_t initial_chunks) {
    best_ = initial_chunks;
    size_t matches = remaining_;
    Search(0, -1, 0);
    return {matches, best_, !aborted_};
  }

 private:
  void Search(size_t i, int prev, size_t chunks) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (remaining_ == 0) {
      best_ = std::min(best_, chunks);
      return;
    }
    if (i == pred_.size()) return;
    const int w = pred_[i];
    const int ext = prev + 1;
    bool can_extend = prev >= 0 && ext < static_cast<int>(ref_.size()) &&
                      !used_[ext] && ref_[ext] == w && quota_[w] > 0;
    if (chunks + (can_extend ? 0 : 1) >= best_) return;

    --pred_left_[w];
    if (quota_[w] > 0) {
      auto take = [&](int j, size_t cost) {
        used_[j] = 1;
        --quota_[w];
        --remaining_;
        Search(i + 1, j, chunks + cost);
        ++remaining_;
        ++quota_[w];
        used_[j] = 0;
      };
      if (can_extend) take(ext, 0);
      for (int j : ref_positions_[w]) {
        if (used_[j] || (can_extend && j == ext)) continue;
        take(j, 1);
      }
    }
    if (pred_left_[w] >= quota_[w]) Search(i + 1, -1, chunks);
    ++pred_left_[w];
  }

  const std::vector<int> &pred_;
  const std::vector<int> &ref_;
  std::vector<std::vector<int>> ref_positions_;
  std::vector<int> quota_;
  std::vector<int> pred_left_;
  std::vector<char> used_;
  size_t remaining_ = 0;
  size_t best_ = 0;
  size_t nodes_ = 0;
  size_t budget_;
  bool aborted_ = false;
};

size_t CountChunks(const std::vector<int> &align) {
  size_t chunks = 0;
  for (size_t i = 0; i < align.size(); ++i) {
    if (align[i] < 0) continue;
    bool continues = i > 0 && align[i - 1] >= 0 && align[i] == align[i - 1] + 1;
    if (!continues) ++chunks;
  }
  return chunks;
}

// Repeatedly takes the longest common run of unaligned tokens.
std::vector<int> GreedyTiling(const std::vector<int> &pred,
                              const std::vector<int> &ref) {
  const size_t n = pred.size();
  const size_t m = ref.size();
  std::vector<int> align(n, -1);
  std::vector<char> ref_used(m, 0);
  std::vector<size_t> run((n + 1) * (m + 1));
  while (true) {
    size_t best_len = 0, best_i = 0, best_j = 0;
    std::fill(run.begin(), run.end(), 0);
    for (size_t i = 1; i <= n; ++i) {
      for (size_t j = 1; j <= m; ++j) {
        if (align[i - 1] >= 0 || ref_used[j - 1] || pred[i - 1] != ref[j - 1]) {
          continue;
        }
        size_t len = run[(i - 1) * (m + 1) + (j - 1)] + 1;
        run[i * (m + 1) + j] = len;
        size_t start_i = i - len, start_j = j - len;
        if (len > best_len ||
            (len == best_len && (start_i < best_i ||
                                 (start_i == best_i && start_j < best_j)))) {
          best_len = len;
          best_i = start_i;
          best_j = start_j;
        }
      }
    }
    if (best_len == 0) break;
    for (size_t k = 0; k < best_len; ++k) {
      align[best_i + k] = static_cast<int>(best_j + k);
      ref_used[best_j + k] = 1;
    }
  }
  return align;
}

}  // namespace

TokenSeq Tokenize(std::string_view text) {
  TokenSeq tokens;
  std::string current;
  for (char c : text) {
    if (IsAsciiAlnum(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double Bleu(const TokenSeq &pred, const std::vector<TokenSeq> &refs,
            int max_n) {
  if (max_n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "BLEU max_n must be >= 1");
  }
  if (pred.empty()) throw Error(ErrorCode::kEmptyPrediction, "empty prediction");
  if (refs.empty()) throw Error(ErrorCode::kEmptyReference, "no references");
  for (const TokenSeq &r : refs) {
    if (r.empty()) throw Error(ErrorCode::kEmptyReference, "empty reference");
  }

  std::vector<double> matches(max_n + 1, 0.0), totals(max_n + 1, 0.0);
  bool any_zero = false;
  for (int n = 1; n <= max_n; ++n) {
    auto pred_counts = NgramCounts(pred, n);
    std::unordered_map<std::string, int> max_ref;
    for (const TokenSeq &r : refs) {
      for (const auto &[gram, c] : NgramCounts(r, n)) {
        int &slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    for (const auto &[gram, c] : pred_counts) {
      totals[n] += c;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches[n] += std::min(c, it->second);
    }
    if (matches[n] == 0.0) any_zero = true;
  }
  if (matches[1] == 0.0) return 0.0;

  double log_sum = std::log(matches[1] / totals[1]);
  for (int n = 2; n <= max_n; ++n) {
    double p = any_zero ? (matches[n] + 1.0) / (totals[n] + 1.0)
                        : matches[n] / totals[n];
    log_sum += std::log(p);
  }

  const double c = static_cast<double>(pred.size());
  double r = static_cast<double>(refs.front().size());
  for (const TokenSeq &ref : refs) {
    double len = static_cast<double>(ref.size());
    double d = std::abs(len - c), best = std::abs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }
  double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return std::clamp(bp * std::exp(log_sum / max_n), 0.0, 1.0);
}

size_t LcsLength(const TokenSeq &a, const TokenSeq &b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScores Rouge(const TokenSeq &pred, const TokenSeq &ref) {
  RougeScores out;
  if (pred.empty() || ref.empty()) return out;
  std::unordered_map<std::string, int> ref_counts;
  for (const std::string &t : ref) ++ref_counts[t];
  double overlap = 0.0;
  for (const std::string &t : pred) {
    auto it = ref_counts.find(t);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      overlap += 1.0;
    }
  }
  const double np = static_cast<double>(pred.size());
  const double nr = static_cast<double>(ref.size());
  out.rouge1_f = WeightedF(overlap / np, overlap / nr, kRougeBeta);
  const double lcs = static_cast<double>(LcsLength(pred, ref));
  out.rougeL_f = WeightedF(lcs / np, lcs / nr, kRougeBeta);
  return out;
}

MeteorAlignment AlignForMeteor(const TokenSeq &pred, const TokenSeq &ref,
                               size_t node_budget) {
  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string &t) {
    return ids.emplace(t, static_cast<int>(ids.size())).first->second;
  };
  std::vector<int> p, r;
  for (const std::string &t : pred) p.push_back(id_of(t));
  for (const std::string &t : ref) r.push_back(id_of(t));

  MeteorSearch search(p, r, static_cast<int>(ids.size()), node_budget);
  if (search.MaxMatches() == 0) return {0, 0, true};
  return search.Run(CountChunks(GreedyTiling(p, r)));
}

double MeteorFromAlignment(const MeteorAlignment &a, size_t pred_len,
                           size_t ref_len) {
  if (a.matches == 0 || pred_len == 0 || ref_len == 0) return 0.0;
  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(pred_len);
  const double r = m / static_cast<double>(ref_len);
  const double fmean = p * r / (kMeteorAlpha * p + (1.0 - kMeteorAlpha) * r);
  const double frag = static_cast<double>(a.chunks) / m;
  const double penalty = kMeteorGamma * std::pow(frag, kMeteorBeta);
  return fmean * (1.0 - penalty);
}

double Meteor(const TokenSeq &pred, const TokenSeq &ref) {
  return MeteorFromAlignment(AlignForMeteor(pred, ref), pred.size(),
                             ref.size());
}

PrecisionRecall TripletScores(const std::vector<Triplet> &pred,
                              const std::vector<Triplet> &ref) {
  std::set<Triplet> pred_set(pred.begin(), pred.end());
  std::set<Triplet> ref_set(ref.begin(), ref.end());
  PrecisionRecall out;
  if (pred_set.empty() && ref_set.empty()) return {1.0, 1.0, 1.0};
  if (pred_set.empty()) return {1.0, 0.0, 0.0};
  if (ref_set.empty()) return {0.0, 1.0, 0.0};
  double correct = 0.0;
  for (const Triplet &t : pred_set) correct += ref_set.count(t);
  out.precision = correct / static_cast<double>(pred_set.size());
  out.recall = correct / static_cast<double>(ref_set.size());
  if (correct > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

PrecisionRecall TripletF1(std::string_view pred_text, std::string_view ref_text,
                          const Lexicon &lexicon, const CanonicalMap &map) {
  return TripletScores(ReportToTriplets(pred_text, lexicon, map),
                       ReportToTriplets(ref_text, lexicon, map));
}

std::vector<ExternalScore> ParseExternalScores(std::istream &in) {
  std::vector<ExternalScore> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto malformed = [&](const std::string &why) {
      return Error(ErrorCode::kMalformedLine,
                   "scores line " + std::to_string(line_no) + ": " + why,
                   line_no);
    };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception &e) {
      throw malformed(e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
        !rec.contains("region") || !rec["region"].is_string() ||
        !rec.contains("metric") || !rec["metric"].is_string() ||
        !rec.contains("score") || !rec["score"].is_number()) {
      throw malformed("expected id, region, metric (strings) and score");
    }
    auto region = ParseRegion(rec["region"].get<std::string>());
    if (!region) throw malformed("unknown region");
    double score = rec["score"].get<double>();
    if (!std::isfinite(score)) throw malformed("score is not finite");
    out.push_back({rec["id"].get<std::string>(), *region,
                   rec["metric"].get<std::string>(), score});
  }
  return out;
}

std::vector<ExternalScore> LoadExternalScores(const std::string &path) {
  std::ifstream in = internal::OpenInput(path);
  return ParseExternalScores(in);
}

std::vector<std::string> DefaultMetrics(bool with_triplets) {
  std::vector<std::string> m = {"bleu", "rouge1", "rougeL", "meteor"};
  if (with_triplets) {
    m.insert(m.end(), {"triplet_precision", "triplet_recall", "triplet_f1"});
  }
  return m;
}

json MetricReport::ToJson() const {
  json doc = json::object();
  json regions = json::object();
  for (const auto &[region, scores] : per_region) {
    json r(scores);
    regions[std::string(RegionName(region))] = r;
  }
  json counts = json::object();
  for (const auto &[region, n] : cases) {
    counts[std::string(RegionName(region))] = n;
  }
  doc["per_region"] = regions;
  doc["cases"] = counts;
  doc["averages"] = json(averages);
  return doc;
}

MetricReport EvaluateCorpus(const Corpus &pred, const Corpus &ref,
                            const EvalConfig &config) {
  static const std::set<std::string> kKnown = {
      "bleu",   "rouge1",           "rougeL",         "meteor",
      "triplet_precision", "triplet_recall", "triplet_f1"};
  bool needs_triplets = false;
  for (const std::string &m : config.metrics) {
    if (!kKnown.contains(m)) {
      throw Error(ErrorCode::kInvalidConfig, "unknown metric '" + m + "'");
    }
    if (m.starts_with("triplet_")) needs_triplets = true;
  }
  if (needs_triplets && config.lexicon == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "triplet metrics need a lexicon");
  }
  static const CanonicalMap kIdentity;
  const CanonicalMap &map = config.map ? *config.map : kIdentity;

  for (const Report &p : pred.reports) {
    const Report *r = ref.Find(p.id);
    if (r == nullptr) {
      throw Error(ErrorCode::kIdMismatch,
                  "prediction " + p.id + " has no reference");
    }
    for (const auto &[region, text] : p.generated) {
      if (!r->findings.contains(region)) {
        throw Error(ErrorCode::kIdMismatch,
                    "prediction " + p.id + " has " +
                        std::string(RegionName(region)) +
                        " text but the reference does not");
      }
    }
  }

  struct Case {
    const Report *ref;
    const Report *pred;
    Region region;
    std::map<std::string, double> scores;
  };
  std::vector<Case> cases;
  for (const Report &r : ref.reports) {
    const Report *p = pred.Find(r.id);
    if (p == nullptr) {
      throw Error(ErrorCode::kIdMismatch,
                  "reference " + r.id + " has no prediction");
    }
    for (const auto &[region, text] : r.findings) {
      cases.push_back({&r, p, region, {}});
    }
  }

  auto wants = [&](const char *name) {
    return std::find(config.metrics.begin(), config.metrics.end(), name) !=
           config.metrics.end();
  };
  ParallelFor(cases.size(), config.jobs, [&](size_t i) {
    Case &c = cases[i];
    for (const std::string &m : config.metrics) c.scores[m] = 0.0;
    const std::string *gen = c.pred->Generated(c.region);
    if (gen == nullptr) return;
    const std::string &ref_text = *c.ref->Findings(c.region);
    TokenSeq pt = Tokenize(*gen);
    TokenSeq rt = Tokenize(ref_text);
    if (wants("bleu") && !pt.empty() && !rt.empty()) {
      c.scores["bleu"] = Bleu(pt, {rt}, config.max_n);
    }
    if (wants("rouge1") || wants("rougeL")) {
      RougeScores rs = Rouge(pt, rt);
      if (wants("rouge1")) c.scores["rouge1"] = rs.rouge1_f;
      if (wants("rougeL")) c.scores["rougeL"] = rs.rougeL_f;
    }
    if (wants("meteor")) c.scores["meteor"] = Meteor(pt, rt);
    if (needs_triplets) {
      PrecisionRecall pr = TripletF1(*gen, ref_text, *config.lexicon, map);
      if (wants("triplet_precision")) c.scores["triplet_precision"] = pr.precision;
      if (wants("triplet_recall")) c.scores["triplet_recall"] = pr.recall;
      if (wants("triplet_f1")) c.scores["triplet_f1"] = pr.f1;
    }
  });

  MetricReport report;
  std::map<Region, std::map<std::string, double>> sums;
  for (const Case &c : cases) {
    ++report.cases[c.region];
    for (const auto &[m, v] : c.scores) sums[c.region][m] += v;
  }
  for (const auto &[region, metric_sums] : sums) {
    double n = static_cast<double>(report.cases[region]);
    for (const auto &[m, v] : metric_sums) report.per_region[region][m] = v / n;
  }

  if (!config.external.empty()) {
    std::map<Region, std::map<std::string, std::pair<double, size_t>>> ext;
    for (const ExternalScore &s : config.external) {
      const Report *r = ref.Find(s.id);
      if (r == nullptr || !r->findings.contains(s.region)) {
        throw Error(ErrorCode::kIdMismatch,
                    "external score for unknown case (" + s.id + ", " +
                        std::string(RegionName(s.region)) + ")");
      }
      if (kKnown.contains(s.metric)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "external metric '" + s.metric +
                        "' clashes with a computed metric");
      }
      auto &slot = ext[s.region][s.metric];
      slot.first += s.score;
      ++slot.second;
    }
    for (const auto &[region, metrics] : ext) {
      for (const auto &[m, acc] : metrics) {
        report.per_region[region][m] =
            acc.first / static_cast<double>(acc.second);
      }
    }
  }

  std::map<std::string, std::pair<double, size_t>> avg;
  for (const auto &[region, scores] : report.per_region) {
    for (const auto &[m, v] : scores) {
      avg[m].first += v;
      ++avg[m].second;
    }
  }
  for (const auto &[m, acc] : avg) {
    report.averages[m] = acc.first / static_cast<double>(acc.second);
  }
  return report;
}

}  // namespace radaug
