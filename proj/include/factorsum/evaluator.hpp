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
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorsum/corpus.hpp"
#include "factorsum/io.hpp"
#include "factorsum/metrics.hpp"
#include "factorsum/sampler.hpp"

namespace factorsum {

struct DocScore {
  std::string doc_id;
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
  std::size_t words = 0;
};

struct EvalReport {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
  double mean_words = 0.0;
  std::size_t n = 0;
  std::vector<DocScore> per_doc;
};

/// doc_id -> predicted summary.
using Predictions = std::unordered_map<std::string, std::string>;

struct EvalOptions {
  bool stem = true;
  RougeLVariant rouge_l = RougeLVariant::kWholeText;
};

/// Macro-averaged ROUGE-1/2/L F1 and word counts. per_doc follows corpus
/// order. Every prediction must name a corpus document with a reference.
inline EvalReport evaluate(const Predictions& predictions, const Corpus& references,
                           const EvalOptions& opts = {}) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : references) by_id.emplace(d.id, &d);
  std::vector<std::string> unmatched;
  for (const auto& [id, _] : predictions) {
    auto it = by_id.find(id);
    if (it == by_id.end() || !it->second->reference) unmatched.push_back(id);
  }
  if (!unmatched.empty()) {
    std::sort(unmatched.begin(), unmatched.end());
    std::string msg = "predictions without a matching reference:";
    for (const auto& id : unmatched) msg += " " + id;
    throw std::invalid_argument(msg);
  }
  EvalReport report;
  for (const auto& doc : references) {
    auto it = predictions.find(doc.id);
    if (it == predictions.end()) continue;
    std::string ref_text;
    if (opts.rouge_l == RougeLVariant::kSummaryLevel) {
      ref_text = join(*doc.reference, "\n");
    } else {
      ref_text = doc.reference_text();
    }
    const TextRouge s = score_texts(it->second, ref_text, opts.stem, opts.rouge_l);
    report.per_doc.push_back(
        {doc.id, s.r1.f1, s.r2.f1, s.rl.f1, count_words(it->second)});
  }
  report.n = report.per_doc.size();
  if (report.n) {
    for (const auto& d : report.per_doc) {
      report.r1 += d.r1;
      report.r2 += d.r2;
      report.rl += d.rl;
      report.mean_words += static_cast<double>(d.words);
    }
    const double n = static_cast<double>(report.n);
    report.r1 /= n;
    report.r2 /= n;
    report.rl /= n;
    report.mean_words /= n;
  }
  return report;
}

/// Two-sided paired bootstrap p-value for mean(a - b) != 0. Resampled mean
/// differences are centred on the observed mean; the p-value is the share of
/// resamples at least as far from it as the observed mean is from zero.
inline double paired_bootstrap(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t resamples = 10000,
                               std::uint64_t seed = 0) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired_bootstrap: length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  if (a.size() < 2)
    throw std::invalid_argument("paired_bootstrap: need at least 2 pairs");
  if (resamples == 0)
    throw std::invalid_argument("paired_bootstrap: resamples must be > 0");
  const std::size_t n = a.size();
  std::vector<double> d(n);
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a[i] - b[i];
    observed += d[i];
  }
  observed /= static_cast<double>(n);
  const double threshold = std::abs(observed) - 1e-12;
  Rng rng(splitmix64(seed));
  std::size_t extreme = 0;
  for (std::size_t r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += d[rng.below(n)];
    if (std::abs(sum / static_cast<double>(n) - observed) >= threshold) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(resamples);
}

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Percentile bootstrap interval for the mean.
inline ConfidenceInterval bootstrap_ci(const std::vector<double>& xs,
                                       double level = 0.95,
                                       std::size_t resamples = 10000,
                                       std::uint64_t seed = 0) {
  if (xs.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("bootstrap_ci: level must be in (0, 1)");
  const std::size_t n = xs.size();
  Rng rng(splitmix64(seed ^ 0x5bd1e995ULL));
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += xs[rng.below(n)];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(
        std::clamp(std::floor(q * static_cast<double>(resamples - 1) + 0.5), 0.0,
                   static_cast<double>(resamples - 1)));
    return means[idx];
  };
  return {at(tail), at(1.0 - tail)};
}

inline json to_json(const EvalReport& r) {
  json per_doc = json::array();
  for (const auto& d : r.per_doc)
    per_doc.push_back({{"doc_id", d.doc_id},
                       {"r1", d.r1},
                       {"r2", d.r2},
                       {"rl", d.rl},
                       {"words", d.words}});
  return json{{"r1", r.r1},
              {"r2", r.r2},
              {"rl", r.rl},
              {"mean_words", r.mean_words},
              {"n", r.n},
              {"per_doc", per_doc}};
}

/// Aligned-column summary for terminals.
inline std::string format_report(const EvalReport& r) {
  char buf[256];
  std::ostringstream out;
  std::snprintf(buf, sizeof(buf), "%-8s %8s %8s %8s %10s\n", "n", "R-1", "R-2",
                "R-L", "words");
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-8zu %8.2f %8.2f %8.2f %10.1f\n", r.n,
                100.0 * r.r1, 100.0 * r.r2, 100.0 * r.rl, r.mean_words);
  out << buf;
  return out.str();
}

inline Predictions load_predictions(const std::filesystem::path& path) {
  Predictions out;
  const std::string p = path.string();
  for_each_json(path, [&](std::size_t lineno, const json& obj) {
    for (const char* key : {"doc_id", "summary"})
      if (!obj.contains(key))
        throw InputError(p, lineno, std::string("missing field '") + key + "'");
    try {
      out[obj.at("doc_id").get<std::string>()] = obj.at("summary").get<std::string>();
    } catch (const json::exception& e) {
      throw InputError(p, lineno, e.what());
    }
  });
  return out;
}

}  // namespace factorsum
