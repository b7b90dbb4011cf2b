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

// Extrinsic importance model: candidate pools, the budget/content energy,
// greedy composition and the guidance that parameterises it.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "factorsum/corpus.hpp"
#include "factorsum/metrics.hpp"
#include "factorsum/sampler.hpp"
#include "factorsum/text.hpp"
#include "factorsum/viewgen.hpp"

namespace factorsum {

/// Which ROUGE-1 component the content term rewards.
enum class ContentScore { kF1, kRecall, kPrecision };

enum class GreedyVariant {
  /// A pick is kept only if non-redundant and strictly lowers the best
  /// energy; other picks are dropped.
  kStrict,
  /// Line-by-line reading of the published pseudocode: non-improving picks
  /// are appended to the working summary and only the improving branch
  /// checks redundancy.
  kLiteral,
};

struct Guidance {
  double budget_words = 1.0;
  std::optional<std::string> content;
  double alpha = 1.0;
  double beta = 1.0;
  double redundancy_threshold = 0.4;
  std::size_t patience = 20;
  ContentScore content_score = ContentScore::kF1;
  GreedyVariant variant = GreedyVariant::kStrict;

  void validate() const {
    if (!(budget_words > 0.0))
      throw std::invalid_argument("budget must be > 0 words");
    if (alpha < 0.0 || beta < 0.0)
      throw std::invalid_argument("alpha and beta must be >= 0");
    if (beta > 0.0 && !content)
      throw std::invalid_argument("beta > 0 requires content guidance");
    if (redundancy_threshold < 0.0 || redundancy_threshold > 1.0)
      throw std::invalid_argument("redundancy threshold must be in [0, 1]");
    if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  }

  bool uses_content() const { return beta > 0.0 && content.has_value(); }
};

struct CandidateOrigin {
  std::string doc_id;
  std::size_t view_index = 0;
  std::size_t sentence_index = 0;
};

/// One sentence of a summary view.
struct Candidate {
  std::string text;
  std::size_t word_count = 0;
  CandidateOrigin origin;
  TokenSeq words;    // unstemmed, used for redundancy
  TokenSeq stemmed;  // used for the content term
};

inline Candidate make_candidate(std::string text, CandidateOrigin origin = {}) {
  Candidate c;
  c.words = tokenize_words(text, false);
  c.stemmed = tokenize_words(text, true);
  c.word_count = c.words.size();
  c.text = std::move(text);
  c.origin = std::move(origin);
  return c;
}

struct ComposedSummary {
  std::vector<Candidate> selected;
  std::size_t total_words = 0;
  double energy = 0.0;
  std::size_t iterations = 0;

  std::string text() const {
    std::vector<std::string> parts;
    parts.reserve(selected.size());
    for (const auto& c : selected) parts.push_back(c.text);
    return join(parts);
  }
};

/// Sentence-splits every view and takes the union: exact duplicate strings
/// keep their first occurrence, sentences without words are dropped.
inline std::vector<Candidate> build_candidate_pool(
    const std::vector<SummaryView>& views) {
  std::vector<Candidate> pool;
  std::unordered_set<std::string> seen;
  for (const auto& v : views) {
    const auto sentences = split_sentences(v.text);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (count_words(sentences[i]) == 0) continue;
      if (!seen.insert(sentences[i]).second) continue;
      pool.push_back(make_candidate(sentences[i], {v.doc_id, v.view_index, i}));
    }
  }
  return pool;
}

namespace detail {

inline double content_term(ContentScore which, std::size_t overlap,
                           std::size_t n_summary, std::size_t n_content) {
  const RougeScore s = make_rouge_score(overlap, n_summary, n_content);
  switch (which) {
    case ContentScore::kRecall:
      return s.recall;
    case ContentScore::kPrecision:
      return s.precision;
    case ContentScore::kF1:
      break;
  }
  return s.f1;
}

// Single arithmetic path for the energy so incremental and direct
// evaluation agree bit for bit.
inline double energy_from_counts(const Guidance& g, std::size_t words,
                                 std::size_t overlap, std::size_t n_content) {
  const double dev = static_cast<double>(words) / g.budget_words - 1.0;
  double e = g.alpha * dev * dev;
  if (g.uses_content())
    e -= g.beta * content_term(g.content_score, overlap, words, n_content);
  return e;
}

}  // namespace detail

/// alpha * (|S|/b - 1)^2 - beta * ROUGE-1(S, C), with S the space-joined
/// texts. |S| counts unstemmed words; ROUGE-1 uses stemmed tokens. The
/// content term is 0 when beta is 0 or no content is given.
inline double extrinsic_energy(const std::vector<std::string>& summary_texts,
                               const Guidance& guidance) {
  if (!(guidance.budget_words > 0.0))
    throw std::invalid_argument("extrinsic_energy: budget must be > 0");
  const std::string joined = join(summary_texts);
  const std::size_t words = count_words(joined);
  std::size_t overlap = 0;
  std::size_t n_content = 0;
  if (guidance.uses_content()) {
    const NgramCounts s = count_ngrams(tokenize_words(joined, true), 1);
    const NgramCounts c = count_ngrams(tokenize_words(*guidance.content, true), 1);
    overlap = overlap_count(s, c);
    n_content = total_count(c);
  }
  return detail::energy_from_counts(guidance, words, overlap, n_content);
}

inline double extrinsic_energy(const std::vector<Candidate>& summary,
                               const Guidance& guidance) {
  std::vector<std::string> texts;
  texts.reserve(summary.size());
  for (const auto& c : summary) texts.push_back(c.text);
  return extrinsic_energy(texts, guidance);
}

/// True iff some selected sentence is within normalized word-level edit
/// distance < t of the candidate.
inline bool is_redundant(const std::vector<Candidate>& current,
                         const Candidate& candidate, double t) {
  for (const auto& s : current)
    if (normalized_levenshtein(s.words, candidate.words) < t) return true;
  return false;
}

namespace detail {

// Running unigram state of a growing summary against fixed content.
class EnergyState {
 public:
  explicit EnergyState(const Guidance& g) : g_(g) {
    if (g_.uses_content()) {
      content_ = count_ngrams(tokenize_words(*g_.content, true), 1);
      n_content_ = total_count(content_);
    }
  }

  double energy() const {
    return energy_from_counts(g_, words_, overlap_, n_content_);
  }

  double energy_with(const Candidate& c) const {
    return energy_from_counts(g_, words_ + c.word_count,
                              overlap_ + overlap_gain(c), n_content_);
  }

  void add(const Candidate& c) {
    overlap_ += overlap_gain(c);
    words_ += c.word_count;
    if (g_.uses_content())
      for (const auto& t : c.stemmed) ++summary_[t];
  }

  std::size_t words() const { return words_; }

 private:
  std::size_t overlap_gain(const Candidate& c) const {
    if (!g_.uses_content()) return 0;
    std::unordered_map<std::string, std::size_t> local;
    for (const auto& t : c.stemmed) ++local[t];
    std::size_t gain = 0;
    for (const auto& [tok, n] : local) {
      auto ct = content_.find(tok);
      if (ct == content_.end()) continue;
      auto st = summary_.find(tok);
      const std::size_t have = st == summary_.end() ? 0 : st->second;
      gain += std::min(have + n, ct->second) - std::min(have, ct->second);
    }
    return gain;
  }

  const Guidance& g_;
  NgramCounts content_;
  NgramCounts summary_;
  std::size_t n_content_ = 0;
  std::size_t words_ = 0;
  std::size_t overlap_ = 0;
};

}  // namespace detail

/// Greedy minimisation of the extrinsic energy over a candidate pool.
///
/// Each iteration removes from the pool the candidate whose addition to the
/// working summary gives the lowest energy (first in pool order on ties).
/// Under GreedyVariant::kStrict the pick is accepted only when it is not
/// redundant and lowers the energy of the best summary so far; redundant
/// picks are discarded without touching the patience counter, other
/// rejected picks increment it. The loop ends when the pool is empty or the
/// counter exceeds the patience. Returns the best summary found.
inline ComposedSummary greedy_compose(const std::vector<Candidate>& pool,
                                      const Guidance& guidance) {
  guidance.validate();
  std::vector<std::size_t> remaining(pool.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});

  detail::EnergyState state(guidance);
  std::vector<Candidate> working;
  ComposedSummary best;
  best.energy = state.energy();
  std::size_t stale = 0;
  std::size_t iterations = 0;

  while (!remaining.empty() && stale <= guidance.patience) {
    ++iterations;
    std::size_t pick_pos = 0;
    double pick_energy = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const double e = state.energy_with(pool[remaining[i]]);
      if (e < pick_energy) {
        pick_energy = e;
        pick_pos = i;
      }
    }
    const Candidate& pick = pool[remaining[pick_pos]];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick_pos));

    if (guidance.variant == GreedyVariant::kStrict) {
      if (is_redundant(working, pick, guidance.redundancy_threshold)) continue;
      if (pick_energy < best.energy) {
        state.add(pick);
        working.push_back(pick);
        best.selected = working;
        best.energy = pick_energy;
        best.total_words = state.words();
        stale = 0;
      } else {
        ++stale;
      }
    } else {
      if (pick_energy > best.energy) {
        ++stale;
        state.add(pick);
        working.push_back(pick);
      } else if (!is_redundant(working, pick, guidance.redundancy_threshold)) {
        stale = 0;
        state.add(pick);
        working.push_back(pick);
        best.selected = working;
        best.energy = pick_energy;
        best.total_words = state.words();
      }
    }
  }
  best.iterations = iterations;
  return best;
}

//
// Guidance construction
//

/// Default fixed budgets (words) per dataset.
inline const std::map<std::string, double>& default_fixed_budgets() {
  static const std::map<std::string, double> table = {
      {"pubmed", 205.0}, {"arxiv", 165.0}, {"govreport", 648.0}};
  return table;
}

using LengthTable = std::unordered_map<std::string, double>;

/// Word counts of advisor summaries, for model-based budgets.
inline LengthTable advisor_lengths(const AdvisorTable& advisor) {
  LengthTable out;
  for (const auto& [id, summary] : advisor)
    out[id] = static_cast<double>(count_words(summary));
  return out;
}

struct BudgetMode {
  enum class Kind { kFixed, kOracle, kModel };

  Kind kind = Kind::kFixed;
  /// Fixed budget; when absent, `dataset` selects a default.
  std::optional<double> value;
  std::string dataset;
  /// Model mode: doc_id -> advisor summary length.
  std::shared_ptr<const LengthTable> lengths;
  double correction = 0.0;

  static BudgetMode fixed(double v, double correction = 0.0) {
    BudgetMode m;
    m.value = v;
    m.correction = correction;
    return m;
  }
  static BudgetMode fixed_for(std::string dataset, double correction = 0.0) {
    BudgetMode m;
    m.dataset = std::move(dataset);
    m.correction = correction;
    return m;
  }
  static BudgetMode oracle(double correction = 0.0) {
    BudgetMode m;
    m.kind = Kind::kOracle;
    m.correction = correction;
    return m;
  }
  static BudgetMode model(std::shared_ptr<const LengthTable> lengths,
                          double correction = 0.0) {
    BudgetMode m;
    m.kind = Kind::kModel;
    m.lengths = std::move(lengths);
    m.correction = correction;
    return m;
  }
};

inline const char* to_string(BudgetMode::Kind k) {
  switch (k) {
    case BudgetMode::Kind::kFixed:
      return "fixed";
    case BudgetMode::Kind::kOracle:
      return "oracle";
    case BudgetMode::Kind::kModel:
      return "model";
  }
  return "unknown";
}

/// Base budget for the mode plus the additive correction.
inline double make_budget(
    const BudgetMode& mode, const Document& doc,
    const std::map<std::string, double>& fixed_defaults = default_fixed_budgets()) {
  double base = 0.0;
  switch (mode.kind) {
    case BudgetMode::Kind::kFixed:
      if (mode.value) {
        base = *mode.value;
      } else {
        auto it = fixed_defaults.find(mode.dataset);
        if (it == fixed_defaults.end())
          throw std::invalid_argument("no default budget for dataset '" +
                                      mode.dataset + "'");
        base = it->second;
      }
      break;
    case BudgetMode::Kind::kOracle:
      if (!doc.reference)
        throw std::invalid_argument("oracle budget: document '" + doc.id +
                                    "' has no reference summary");
      base = static_cast<double>(count_words(doc.reference_text()));
      break;
    case BudgetMode::Kind::kModel: {
      if (!mode.lengths)
        throw std::invalid_argument("model budget: no advisor lengths loaded");
      auto it = mode.lengths->find(doc.id);
      if (it == mode.lengths->end())
        throw std::invalid_argument("model budget: no advisor summary for document '" +
                                    doc.id + "'");
      base = it->second;
      break;
    }
  }
  const double budget = base + mode.correction;
  if (!(budget > 0.0))
    throw std::invalid_argument("effective budget for document '" + doc.id +
                                "' is not positive (" + std::to_string(budget) +
                                ")");
  return budget;
}

struct ContentMode {
  enum class Kind { kNone, kLead, kModel, kReference };

  Kind kind = Kind::kNone;
  std::shared_ptr<const AdvisorTable> advisor;
};

inline const char* to_string(ContentMode::Kind k) {
  switch (k) {
    case ContentMode::Kind::kNone:
      return "none";
    case ContentMode::Kind::kLead:
      return "lead";
    case ContentMode::Kind::kModel:
      return "model";
    case ContentMode::Kind::kReference:
      return "reference";
  }
  return "unknown";
}

/// Lead: shortest prefix of the document with at least `budget` words (the
/// whole document if it is shorter). Model: the advisor summary. Reference:
/// the joined reference sentences.
inline std::optional<std::string> make_content(const ContentMode& mode,
                                               const Document& doc,
                                               double budget) {
  switch (mode.kind) {
    case ContentMode::Kind::kNone:
      return std::nullopt;
    case ContentMode::Kind::kLead: {
      std::vector<std::string> lead;
      std::size_t words = 0;
      for (const auto& s : doc.sentences) {
        lead.push_back(s);
        words += count_words(s);
        if (static_cast<double>(words) >= budget) break;
      }
      return join(lead);
    }
    case ContentMode::Kind::kModel: {
      if (!mode.advisor)
        throw std::invalid_argument("model content: no advisor summaries loaded");
      auto it = mode.advisor->find(doc.id);
      if (it == mode.advisor->end())
        throw std::invalid_argument("model content: no advisor summary for document '" +
                                    doc.id + "'");
      return it->second;
    }
    case ContentMode::Kind::kReference:
      if (!doc.reference)
        throw std::invalid_argument("reference content: document '" + doc.id +
                                    "' has no reference summary");
      return doc.reference_text();
  }
  return std::nullopt;
}

//
// Budget calibration
//

/// target_mean - mean(system_lengths).
inline double calibrate_budget_correction(
    const std::vector<std::size_t>& system_lengths, double target_mean) {
  if (system_lengths.empty())
    throw std::invalid_argument("calibration needs at least one system summary");
  const double sum = std::accumulate(system_lengths.begin(), system_lengths.end(), 0.0,
                                     [](double a, std::size_t b) {
                                       return a + static_cast<double>(b);
                                     });
  return target_mean - sum / static_cast<double>(system_lengths.size());
}

struct CalibrationRound {
  double correction = 0.0;
  double mean_length = 0.0;
};

struct CalibrationResult {
  double correction = 0.0;
  bool converged = false;
  std::vector<CalibrationRound> rounds;
};

/// Re-runs `run(correction)` (which returns system summary lengths) and
/// accumulates the additive correction until the mean length is within
/// `tolerance` words of the target or `max_rounds` runs have been made. The
/// returned correction is the one whose run came closest.
inline CalibrationResult calibrate_budget(
    const std::function<std::vector<std::size_t>(double)>& run, double target_mean,
    double initial_correction = 0.0, std::size_t max_rounds = 5,
    double tolerance = 2.0) {
  CalibrationResult result;
  double correction = initial_correction;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < max_rounds; ++r) {
    const auto lengths = run(correction);
    const double step = calibrate_budget_correction(lengths, target_mean);
    const double mean = target_mean - step;
    result.rounds.push_back({correction, mean});
    if (std::abs(step) < best_gap) {
      best_gap = std::abs(step);
      result.correction = correction;
    }
    if (std::abs(step) <= tolerance) {
      result.converged = true;
      break;
    }
    correction += step;
  }
  return result;
}

//
// Output ordering
//

/// Stable-sorts the selection by the index of each sentence's oracle match in
/// the sentence-split guidance text. Energy and membership are unchanged.
inline ComposedSummary reorder_by_guidance(const ComposedSummary& summary,
                                           const std::string& guidance_text) {
  const auto guide = tokenize_all(split_sentences(guidance_text));
  if (guide.empty()) return summary;
  std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (oracle, position)
  keyed.reserve(summary.selected.size());
  for (std::size_t i = 0; i < summary.selected.size(); ++i)
    keyed.emplace_back(oracle_match(guide, summary.selected[i].stemmed).first, i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ComposedSummary out = summary;
  out.selected.clear();
  for (const auto& [_, pos] : keyed) out.selected.push_back(summary.selected[pos]);
  return out;
}

}  // namespace factorsum
