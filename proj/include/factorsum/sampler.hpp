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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "factorsum/corpus.hpp"
#include "factorsum/io.hpp"
#include "factorsum/metrics.hpp"

namespace factorsum {

//
// Seeding
//

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent stream seed from a global seed and a key path.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view doc_id,
                                 std::uint64_t view_index,
                                 std::uint64_t attempt = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a64(doc_id));
  h = splitmix64(h ^ view_index);
  h = splitmix64(h ^ (attempt * 0x632be59bd9b4e019ULL));
  return h;
}

/// mt19937_64 with a distribution-free bounded draw, so sequences are the
/// same on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

//
// Types
//

struct SamplingConfig {
  double s_f = 0.2;
  std::size_t n_d = 20;
  std::uint64_t seed = 0;
  bool enforce_oracle = false;

  void validate() const {
    if (!(s_f > 0.0 && s_f <= 1.0))
      throw std::invalid_argument("sampling factor s_f must be in (0, 1]");
    if (n_d < 1) throw std::invalid_argument("n_d must be >= 1");
  }
};

struct DocumentView {
  std::string doc_id;
  std::size_t view_index = 0;
  std::vector<std::size_t> sentence_indices;
  std::uint64_t seed = 0;
};

struct OraclePair {
  std::size_t ref_index = 0;
  std::size_t doc_index = 0;
  double score = 0.0;
};

struct OracleAlignment {
  std::vector<OraclePair> pairs;

  /// Distinct oracle document indices, ascending.
  std::vector<std::size_t> doc_indices() const {
    std::set<std::size_t> s;
    for (const auto& p : pairs) s.insert(p.doc_index);
    return {s.begin(), s.end()};
  }
};

struct ViewRecord {
  DocumentView view;
  std::string source_text;
  std::string target_text;
  std::vector<std::size_t> target_ref_indices;
};

//
// Operations
//

/// max(1, round-half-up(s_f * n)), capped at n.
inline std::size_t view_size(double s_f, std::size_t n_sentences) {
  if (n_sentences == 0) return 0;
  const double raw = s_f * static_cast<double>(n_sentences);
  auto k = static_cast<std::size_t>(std::floor(raw + 0.5 + 1e-9));
  return std::clamp<std::size_t>(k, 1, n_sentences);
}

namespace detail {

inline std::vector<std::size_t> draw_indices(Rng& rng, std::size_t n,
                                             std::size_t k) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

/// Uniform order-preserving sample without replacement. Deterministic in
/// (config.seed, doc.id, view_index).
inline DocumentView sample_view(const Document& doc,
                                const SamplingConfig& config,
                                std::size_t view_index) {
  DocumentView v;
  v.doc_id = doc.id;
  v.view_index = view_index;
  v.seed = derive_seed(config.seed, doc.id, view_index);
  Rng rng(v.seed);
  v.sentence_indices = detail::draw_indices(
      rng, doc.sentences.size(), view_size(config.s_f, doc.sentences.size()));
  return v;
}

/// Index of the entry in `pool` maximising ROUGE-1 F1 + ROUGE-2 F1 against
/// `target`, smallest index on ties. Returns {0, 0.0} for an empty pool.
inline std::pair<std::size_t, double> oracle_match(
    const std::vector<TokenSeq>& pool, const TokenSeq& target) {
  std::size_t best = 0;
  double best_score = -1.0;
  const NgramCounts t1 = count_ngrams(target, 1);
  const NgramCounts t2 = count_ngrams(target, 2);
  const std::size_t n1 = total_count(t1);
  const std::size_t n2 = total_count(t2);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const NgramCounts c1 = count_ngrams(pool[i], 1);
    const NgramCounts c2 = count_ngrams(pool[i], 2);
    const double score =
        make_rouge_score(overlap_count(c1, t1), total_count(c1), n1).f1 +
        make_rouge_score(overlap_count(c2, t2), total_count(c2), n2).f1;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return {best, std::max(best_score, 0.0)};
}

inline std::vector<TokenSeq> tokenize_all(const std::vector<std::string>& xs,
                                          bool stem = true) {
  std::vector<TokenSeq> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(tokenize_words(x, stem));
  return out;
}

/// One pair per reference sentence: the document sentence maximising
/// ROUGE-1 F1 + ROUGE-2 F1 (stemmed tokens).
inline OracleAlignment align_oracle(const Document& doc) {
  if (!doc.reference || doc.reference->empty())
    throw std::invalid_argument("align_oracle: document '" + doc.id +
                                "' has no reference summary");
  const std::vector<TokenSeq> pool = tokenize_all(doc.sentences);
  OracleAlignment a;
  for (std::size_t i = 0; i < doc.reference->size(); ++i) {
    auto [idx, score] = oracle_match(pool, tokenize_words((*doc.reference)[i], true));
    a.pairs.push_back({i, idx, score});
  }
  return a;
}

/// Builds R_v: reference sentences whose oracle lies in the view, in
/// reference order.
inline ViewRecord make_view_record(const Document& doc, DocumentView view,
                                   const OracleAlignment* alignment) {
  ViewRecord rec;
  std::vector<std::string> src;
  src.reserve(view.sentence_indices.size());
  for (std::size_t i : view.sentence_indices) src.push_back(doc.sentences[i]);
  rec.source_text = join(src);
  if (alignment && doc.reference) {
    std::vector<std::string> tgt;
    for (const auto& p : alignment->pairs) {
      if (std::binary_search(view.sentence_indices.begin(),
                             view.sentence_indices.end(), p.doc_index)) {
        tgt.push_back((*doc.reference)[p.ref_index]);
        rec.target_ref_indices.push_back(p.ref_index);
      }
    }
    rec.target_text = join(tgt);
  }
  rec.view = std::move(view);
  return rec;
}

inline constexpr std::size_t kMaxResampleAttempts = 50;

/// All n_d views of one document. In training mode (enforce_oracle) each
/// view is resampled until it holds an oracle sentence; after
/// kMaxResampleAttempts failures a uniformly chosen oracle index replaces a
/// uniformly chosen view slot.
inline std::vector<ViewRecord> document_view_records(
    const Document& doc, const SamplingConfig& config) {
  std::optional<OracleAlignment> alignment;
  if (doc.reference && !doc.reference->empty()) alignment = align_oracle(doc);
  if (config.enforce_oracle && !alignment)
    throw std::invalid_argument("document '" + doc.id +
                                "' has no reference; required in training mode");
  std::vector<ViewRecord> out;
  out.reserve(config.n_d);
  const auto has_oracle = [&](const DocumentView& v) {
    for (const auto& p : alignment->pairs)
      if (std::binary_search(v.sentence_indices.begin(),
                             v.sentence_indices.end(), p.doc_index))
        return true;
    return false;
  };
  for (std::size_t vi = 0; vi < config.n_d; ++vi) {
    DocumentView view = sample_view(doc, config, vi);
    if (config.enforce_oracle && !has_oracle(view)) {
      bool found = false;
      for (std::size_t attempt = 1; attempt < kMaxResampleAttempts; ++attempt) {
        DocumentView retry = view;
        retry.seed = derive_seed(config.seed, doc.id, vi, attempt);
        Rng rng(retry.seed);
        retry.sentence_indices =
            detail::draw_indices(rng, doc.sentences.size(),
                                 view.sentence_indices.size());
        if (has_oracle(retry)) {
          view = std::move(retry);
          found = true;
          break;
        }
      }
      if (!found) {
        Rng rng(derive_seed(config.seed, doc.id, vi, kMaxResampleAttempts));
        const auto oracles = alignment->doc_indices();
        const std::size_t pick = oracles[rng.below(oracles.size())];
        const std::size_t slot = rng.below(view.sentence_indices.size());
        view.sentence_indices[slot] = pick;
        std::sort(view.sentence_indices.begin(), view.sentence_indices.end());
      }
    }
    out.push_back(make_view_record(doc, std::move(view),
                                   alignment ? &*alignment : nullptr));
  }
  return out;
}

/// T': |corpus| * n_d records, documents in corpus order.
inline std::vector<ViewRecord> build_view_dataset(const Corpus& corpus,
                                                  const SamplingConfig& config) {
  config.validate();
  std::vector<ViewRecord> out;
  out.reserve(corpus.size() * config.n_d);
  for (const auto& doc : corpus) {
    auto recs = document_view_records(doc, config);
    std::move(recs.begin(), recs.end(), std::back_inserter(out));
  }
  return out;
}

struct CoverageStats {
  double coverage_pct = 0.0;
  double mean_view_sentences = 0.0;
};

/// Fraction (percent) of distinct oracle sentences that appear in at least
/// one of the n_d views, averaged over documents; plus the mean view size.
inline CoverageStats coverage_stats(const Corpus& corpus, double s_f,
                                    std::size_t n_d, std::uint64_t seed) {
  SamplingConfig cfg{s_f, n_d, seed, false};
  cfg.validate();
  CoverageStats out;
  double cov_sum = 0.0;
  std::size_t n_docs = 0;
  double size_sum = 0.0;
  std::size_t n_views = 0;
  for (const auto& doc : corpus) {
    const auto oracles = align_oracle(doc).doc_indices();
    std::vector<bool> seen(doc.sentences.size(), false);
    for (std::size_t vi = 0; vi < n_d; ++vi) {
      const DocumentView v = sample_view(doc, cfg, vi);
      for (std::size_t i : v.sentence_indices) seen[i] = true;
      size_sum += static_cast<double>(v.sentence_indices.size());
      ++n_views;
    }
    std::size_t hit = 0;
    for (std::size_t o : oracles) hit += seen[o] ? 1 : 0;
    cov_sum += static_cast<double>(hit) / static_cast<double>(oracles.size());
    ++n_docs;
  }
  if (n_docs) out.coverage_pct = 100.0 * cov_sum / static_cast<double>(n_docs);
  if (n_views) out.mean_view_sentences = size_sum / static_cast<double>(n_views);
  return out;
}

inline json to_json(const ViewRecord& r) {
  return json{{"doc_id", r.view.doc_id},
              {"view_index", r.view.view_index},
              {"sentence_indices", r.view.sentence_indices},
              {"source", r.source_text},
              {"target", r.target_text}};
}

/// Writes the view dataset in the training-file layout
/// `{doc_id, view_index, sentence_indices, source, target}`.
inline void export_view_dataset(const std::filesystem::path& path,
                                const std::vector<ViewRecord>& records) {
  std::vector<json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(to_json(r));
  write_jsonl(path, rows);
}

inline std::vector<ViewRecord> load_view_dataset(
    const std::filesystem::path& path) {
  std::vector<ViewRecord> out;
  const std::string p = path.string();
  for_each_json(path, [&](std::size_t lineno, const json& obj) {
    for (const char* key :
         {"doc_id", "view_index", "sentence_indices", "source", "target"})
      if (!obj.contains(key))
        throw InputError(p, lineno, std::string("missing field '") + key + "'");
    ViewRecord r;
    try {
      r.view.doc_id = obj.at("doc_id").get<std::string>();
      r.view.view_index = obj.at("view_index").get<std::size_t>();
      r.view.sentence_indices =
          obj.at("sentence_indices").get<std::vector<std::size_t>>();
      r.source_text = obj.at("source").get<std::string>();
      r.target_text = obj.at("target").get<std::string>();
    } catch (const json::exception& e) {
      throw InputError(p, lineno, e.what());
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace factorsum
