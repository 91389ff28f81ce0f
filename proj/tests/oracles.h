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

// Direct-from-definition reference implementations used only by tests. They
// favour obviousness over speed and share no code with the library metrics.

#ifndef RADAUG_TESTS_ORACLES_H_
#define RADAUG_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace radaug::oracle_test {

using Tokens = std::vector<std::string>;

inline int CountOccurrences(const Tokens &seq, const Tokens &gram) {
  int count = 0;
  if (gram.size() > seq.size()) return 0;
  for (size_t i = 0; i + gram.size() <= seq.size(); ++i) {
    if (std::equal(gram.begin(), gram.end(), seq.begin() + i)) ++count;
  }
  return count;
}

// Sentence BLEU: clipped precisions, closest-reference brevity penalty,
// add-one on orders >= 2 once any order has zero matches.
inline double BruteBleu(const Tokens &pred, const std::vector<Tokens> &refs,
                        int max_n) {
  std::vector<double> match(max_n + 1), total(max_n + 1);
  bool zero = false;
  for (int n = 1; n <= max_n; ++n) {
    std::set<Tokens> seen;
    for (size_t i = 0; i + n <= pred.size(); ++i) {
      Tokens gram(pred.begin() + i, pred.begin() + i + n);
      total[n] += 1;
      if (!seen.insert(gram).second) continue;
      int in_pred = CountOccurrences(pred, gram);
      int in_ref = 0;
      for (const Tokens &r : refs) in_ref = std::max(in_ref, CountOccurrences(r, gram));
      match[n] += std::min(in_pred, in_ref);
    }
    if (match[n] == 0) zero = true;
  }
  if (match[1] == 0) return 0.0;
  double product = match[1] / total[1];
  for (int n = 2; n <= max_n; ++n) {
    product *= zero ? (match[n] + 1) / (total[n] + 1) : match[n] / total[n];
  }
  double c = pred.size();
  double best_r = -1;
  for (const Tokens &r : refs) {
    double len = r.size();
    if (best_r < 0 || std::fabs(len - c) < std::fabs(best_r - c) ||
        (std::fabs(len - c) == std::fabs(best_r - c) && len < best_r)) {
      best_r = len;
    }
  }
  double bp = c >= best_r ? 1.0 : std::exp(1.0 - best_r / c);
  return bp * std::pow(product, 1.0 / max_n);
}

// LCS by memoised recursion on suffixes.
inline size_t RecursiveLcs(const Tokens &a, const Tokens &b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> go = [&](size_t i, size_t j) -> size_t {
    if (i == a.size() || j == b.size()) return 0;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    size_t best = a[i] == b[j] ? 1 + go(i + 1, j + 1)
                               : std::max(go(i + 1, j), go(i, j + 1));
    memo[key] = best;
    return best;
  };
  return go(0, 0);
}

inline double FBeta(double p, double r, double beta) {
  if (p == 0 || r == 0) return 0.0;
  return (1 + beta * beta) * p * r / (r + beta * beta * p);
}

inline double BruteRouge1(const Tokens &pred, const Tokens &ref) {
  if (pred.empty() || ref.empty()) return 0.0;
  std::set<std::string> types(pred.begin(), pred.end());
  double overlap = 0;
  for (const std::string &t : types) {
    overlap += std::min(std::count(pred.begin(), pred.end(), t),
                        std::count(ref.begin(), ref.end(), t));
  }
  return FBeta(overlap / pred.size(), overlap / ref.size(), 1.2);
}

inline double BruteRougeL(const Tokens &pred, const Tokens &ref) {
  if (pred.empty() || ref.empty()) return 0.0;
  double lcs = RecursiveLcs(pred, ref);
  return FBeta(lcs / pred.size(), lcs / ref.size(), 1.2);
}

struct Alignment {
  size_t matches = 0;
  size_t chunks = 0;
};

// Enumerates every one-to-one exact alignment; keeps the most matches, then
// the fewest chunks.
inline Alignment ExhaustiveAlignment(const Tokens &pred, const Tokens &ref) {
  Alignment best;
  bool have = false;
  std::vector<int> align(pred.size(), -1);
  std::vector<bool> used(ref.size(), false);
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == pred.size()) {
      Alignment a;
      for (size_t k = 0; k < align.size(); ++k) {
        if (align[k] < 0) continue;
        ++a.matches;
        if (!(k > 0 && align[k - 1] >= 0 && align[k] == align[k - 1] + 1)) {
          ++a.chunks;
        }
      }
      if (!have || a.matches > best.matches ||
          (a.matches == best.matches && a.chunks < best.chunks)) {
        best = a;
        have = true;
      }
      return;
    }
    go(i + 1);
    for (size_t j = 0; j < ref.size(); ++j) {
      if (used[j] || ref[j] != pred[i]) continue;
      used[j] = true;
      align[i] = static_cast<int>(j);
      go(i + 1);
      align[i] = -1;
      used[j] = false;
    }
  };
  go(0);
  return best;
}

inline double BruteMeteor(const Tokens &pred, const Tokens &ref) {
  Alignment a = ExhaustiveAlignment(pred, ref);
  if (a.matches == 0) return 0.0;
  double p = double(a.matches) / pred.size();
  double r = double(a.matches) / ref.size();
  double fmean = p * r / (0.9 * p + 0.1 * r);
  double penalty = 0.5 * std::pow(double(a.chunks) / a.matches, 3.0);
  return fmean * (1 - penalty);
}

inline Tokens RandomTokens(std::mt19937 &rng, int min_len, int max_len,
                           int vocab) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> word(0, vocab - 1);
  Tokens out(len(rng));
  for (std::string &t : out) t = std::string(1, static_cast<char>('a' + word(rng)));
  return out;
}

}  // namespace radaug::oracle_test

#endif  // RADAUG_TESTS_ORACLES_H_
