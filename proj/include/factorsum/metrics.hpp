// Copyright 2026 The Authors.
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "factorsum/text.hpp"

namespace factorsum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Builds a score from raw counts; any zero denominator yields 0.
inline RougeScore make_rouge_score(std::size_t hits, std::size_t n_candidate,
                                   std::size_t n_reference) {
  RougeScore s;
  s.precision = n_candidate == 0 ? 0.0
                                 : static_cast<double>(hits) /
                                       static_cast<double>(n_candidate);
  s.recall = n_reference == 0 ? 0.0
                              : static_cast<double>(hits) /
                                    static_cast<double>(n_reference);
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

/// Multiset of n-grams, keyed by the space-joined tokens.
using NgramCounts = std::unordered_map<std::string, std::size_t>;

inline NgramCounts count_ngrams(std::span<const std::string> tokens,
                                std::size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  std::string key;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    key.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key.push_back(' ');
      key.append(tokens[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

inline std::size_t total_count(const NgramCounts& counts) {
  std::size_t n = 0;
  for (const auto& [_, c] : counts) n += c;
  return n;
}

/// Clipped multiset intersection size.
inline std::size_t overlap_count(const NgramCounts& a, const NgramCounts& b) {
  const NgramCounts& small = a.size() <= b.size() ? a : b;
  const NgramCounts& large = a.size() <= b.size() ? b : a;
  std::size_t hits = 0;
  for (const auto& [gram, c] : small) {
    auto it = large.find(gram);
    if (it != large.end()) hits += std::min(c, it->second);
  }
  return hits;
}

inline RougeScore rouge_n(std::span<const std::string> candidate,
                          std::span<const std::string> reference,
                          std::size_t n) {
  if (n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
  const NgramCounts c = count_ngrams(candidate, n);
  const NgramCounts r = count_ngrams(reference, n);
  return make_rouge_score(overlap_count(c, r), total_count(c), total_count(r));
}

inline std::size_t lcs_length(std::span<const std::string> a,
                              std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Whole-text LCS F-measure.
inline RougeScore rouge_l(std::span<const std::string> candidate,
                          std::span<const std::string> reference) {
  return make_rouge_score(lcs_length(candidate, reference), candidate.size(),
                          reference.size());
}

namespace detail {

// Indices into `ref` of one longest common subsequence with `hyp`.
inline std::vector<std::size_t> lcs_indices(std::span<const std::string> ref,
                                            std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::vector<std::size_t>> t(n + 1,
                                          std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      t[i][j] = ref[i - 1] == hyp[j - 1] ? t[i - 1][j - 1] + 1
                                         : std::max(t[i - 1][j], t[i][j - 1]);
  std::vector<std::size_t> out;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 && j > 0) {
    if (ref[i - 1] == hyp[j - 1]) {
      out.push_back(i - 1);
      --i;
      --j;
    } else if (t[i - 1][j] > t[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Summary-level LCS ("Lsum"): candidate and reference are lists of
/// tokenized sentences. For every reference sentence the union of its LCS
/// positions against each candidate sentence is taken; hits are clipped by
/// the global token counts on both sides.
inline RougeScore rouge_lsum(const std::vector<TokenSeq>& candidate,
                             const std::vector<TokenSeq>& reference) {
  std::map<std::string, std::size_t> ref_counts;
  std::map<std::string, std::size_t> hyp_counts;
  std::size_t n_ref = 0;
  std::size_t n_hyp = 0;
  for (const auto& s : reference)
    for (const auto& t : s) ++ref_counts[t], ++n_ref;
  for (const auto& s : candidate)
    for (const auto& t : s) ++hyp_counts[t], ++n_hyp;
  std::size_t hits = 0;
  for (const auto& r : reference) {
    std::vector<std::size_t> uni;
    for (const auto& h : candidate) {
      auto idx = detail::lcs_indices(r, h);
      std::vector<std::size_t> merged;
      std::set_union(uni.begin(), uni.end(), idx.begin(), idx.end(),
                     std::back_inserter(merged));
      uni = std::move(merged);
    }
    for (std::size_t i : uni) {
      const std::string& tok = r[i];
      auto rc = ref_counts.find(tok);
      auto hc = hyp_counts.find(tok);
      if (hc != hyp_counts.end() && hc->second > 0 && rc->second > 0) {
        ++hits;
        --hc->second;
        --rc->second;
      }
    }
  }
  return make_rouge_score(hits, n_hyp, n_ref);
}

inline std::size_t edit_distance(std::span<const std::string> a,
                                 std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Word-level edit distance divided by the longer length; 0 when both are
/// empty.
inline double normalized_levenshtein(std::span<const std::string> a,
                                     std::span<const std::string> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(edit_distance(a, b)) /
         static_cast<double>(longest);
}

/// Evaluation-style scores for a text pair (stemmed tokens).
struct TextRouge {
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
};

enum class RougeLVariant { kWholeText, kSummaryLevel };

inline TextRouge score_texts(std::string_view candidate,
                             std::string_view reference, bool stem = true,
                             RougeLVariant variant = RougeLVariant::kWholeText) {
  const TokenSeq c = tokenize_words(candidate, stem);
  const TokenSeq r = tokenize_words(reference, stem);
  TextRouge out;
  out.r1 = rouge_n(c, r, 1);
  out.r2 = rouge_n(c, r, 2);
  if (variant == RougeLVariant::kWholeText) {
    out.rl = rouge_l(c, r);
  } else {
    auto lines = [stem](std::string_view text) {
      std::vector<TokenSeq> out;
      std::size_t start = 0;
      while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        TokenSeq toks = tokenize_words(text.substr(start, end - start), stem);
        if (!toks.empty()) out.push_back(std::move(toks));
        start = end + 1;
      }
      return out;
    };
    out.rl = rouge_lsum(lines(candidate), lines(reference));
  }
  return out;
}

}  // namespace factorsum
