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

// End-to-end wiring: corpus -> views -> summary views -> candidate pool ->
// guided greedy composition -> evaluation.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "factorsum/config.hpp"
#include "factorsum/corpus.hpp"
#include "factorsum/evaluator.hpp"
#include "factorsum/optimizer.hpp"
#include "factorsum/sampler.hpp"
#include "factorsum/viewgen.hpp"

namespace factorsum {

/// Failure tied to a pipeline stage and, when known, a document.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, std::string doc_id, const std::string& what)
      : std::runtime_error(stage + (doc_id.empty() ? "" : " [doc " + doc_id + "]") +
                           ": " + what),
        stage_(std::move(stage)),
        doc_id_(std::move(doc_id)) {}

  const std::string& stage() const { return stage_; }
  const std::string& doc_id() const { return doc_id_; }

 private:
  std::string stage_;
  std::string doc_id_;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// (lowest index) is rethrown after all workers finish.
inline void parallel_for(std::size_t n, std::size_t jobs,
                         const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Resolved, loaded form of a RunConfig.
struct Pipeline {
  RunConfig config;
  std::unique_ptr<ViewProvider> provider;
  BudgetMode budget;
  ContentMode content;
  Guidance guidance_template;
};

inline ContentScore parse_content_score(const std::string& s) {
  if (s == "f1") return ContentScore::kF1;
  if (s == "recall") return ContentScore::kRecall;
  if (s == "precision") return ContentScore::kPrecision;
  throw ConfigError("unknown content score '" + s + "' (f1|recall|precision)");
}

inline GreedyVariant parse_greedy_variant(const std::string& s) {
  if (s == "strict") return GreedyVariant::kStrict;
  if (s == "literal") return GreedyVariant::kLiteral;
  throw ConfigError("unknown greedy variant '" + s + "' (strict|literal)");
}

/// Checks every precondition that does not need the corpus contents:
/// referenced files exist and each mode has the data it needs.
inline void validate_config(const RunConfig& c, bool needs_corpus = true) {
  auto must_exist = [](const std::string& what, const std::string& path) {
    if (path.empty()) throw ConfigError(what + " path is required");
    if (!std::filesystem::exists(path))
      throw ConfigError(what + " file does not exist: " + path);
  };
  if (needs_corpus) must_exist("corpus", c.corpus_path);
  if (!(c.s_f > 0.0 && c.s_f <= 1.0)) throw ConfigError("s_f must be in (0, 1]");
  if (c.n_d < 1) throw ConfigError("n_d must be >= 1");
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (c.provider == "file") {
    if (c.views.size() != 1)
      throw ConfigError("file provider needs exactly one --views file");
    must_exist("views", c.views.front());
  } else if (c.provider == "ensemble") {
    if (c.views.empty())
      throw ConfigError("ensemble provider needs at least one --views file");
    for (const auto& v : c.views) must_exist("views", v);
  } else if (c.provider == "extractive") {
    if (c.extractive_k < 1) throw ConfigError("extractive k must be >= 1");
  } else if (c.provider != "oracle") {
    throw ConfigError("unknown provider '" + c.provider +
                      "' (file|extractive|oracle|ensemble)");
  }
  if (c.budget_mode == "fixed") {
    if (!c.budget_value && !default_fixed_budgets().count(c.dataset))
      throw ConfigError("fixed budget needs --budget or a known dataset "
                        "(pubmed|arxiv|govreport)");
  } else if (c.budget_mode == "model") {
    if (c.advisor.empty())
      throw ConfigError("model budget mode requires an --advisor file");
    must_exist("advisor", c.advisor);
  } else if (c.budget_mode != "oracle") {
    throw ConfigError("unknown budget mode '" + c.budget_mode +
                      "' (fixed|oracle|model)");
  }
  if (c.content_mode == "model") {
    if (c.advisor.empty())
      throw ConfigError("model content mode requires an --advisor file");
    must_exist("advisor", c.advisor);
  } else if (c.content_mode != "none" && c.content_mode != "lead" &&
             c.content_mode != "reference") {
    throw ConfigError("unknown content mode '" + c.content_mode +
                      "' (none|lead|model|reference)");
  }
  if (c.alpha < 0.0 || c.beta < 0.0) throw ConfigError("alpha/beta must be >= 0");
  if (c.redundancy_t < 0.0 || c.redundancy_t > 1.0)
    throw ConfigError("redundancy threshold must be in [0, 1]");
  if (c.patience && *c.patience < 1) throw ConfigError("patience must be >= 1");
  parse_content_score(c.content_score);
  parse_greedy_variant(c.greedy_variant);
  if (c.rouge_l != "text" && c.rouge_l != "sum")
    throw ConfigError("unknown rouge_l variant '" + c.rouge_l + "' (text|sum)");
}

inline std::unique_ptr<ViewProvider> make_provider(const RunConfig& c) {
  if (c.provider == "file") return std::make_unique<FileProvider>(c.views.front());
  if (c.provider == "extractive")
    return std::make_unique<ExtractiveProvider>(c.extractive_k);
  if (c.provider == "oracle") return std::make_unique<OracleProvider>();
  std::vector<std::filesystem::path> paths(c.views.begin(), c.views.end());
  return std::make_unique<EnsembleProvider>(paths);
}

/// Validates the config and loads provider and advisor data. The corpus is
/// loaded by the caller.
inline Pipeline make_pipeline(const RunConfig& c) {
  validate_config(c, false);
  Pipeline p;
  p.config = c;
  p.provider = make_provider(c);
  std::shared_ptr<const AdvisorTable> advisor;
  if (!c.advisor.empty())
    advisor = std::make_shared<const AdvisorTable>(load_advisor_table(c.advisor));
  if (c.budget_mode == "fixed") {
    p.budget = c.budget_value ? BudgetMode::fixed(*c.budget_value, c.budget_correction)
                              : BudgetMode::fixed_for(c.dataset, c.budget_correction);
  } else if (c.budget_mode == "oracle") {
    p.budget = BudgetMode::oracle(c.budget_correction);
  } else {
    p.budget = BudgetMode::model(
        std::make_shared<const LengthTable>(advisor_lengths(*advisor)),
        c.budget_correction);
  }
  if (c.content_mode == "none") p.content.kind = ContentMode::Kind::kNone;
  if (c.content_mode == "lead") p.content.kind = ContentMode::Kind::kLead;
  if (c.content_mode == "reference") p.content.kind = ContentMode::Kind::kReference;
  if (c.content_mode == "model") {
    p.content.kind = ContentMode::Kind::kModel;
    p.content.advisor = advisor;
  }
  Guidance& g = p.guidance_template;
  g.alpha = c.alpha;
  g.beta = p.content.kind == ContentMode::Kind::kNone ? 0.0 : c.beta;
  g.redundancy_threshold = c.redundancy_t;
  g.patience = c.patience.value_or(c.n_d);
  g.content_score = parse_content_score(c.content_score);
  g.variant = parse_greedy_variant(c.greedy_variant);
  return p;
}

/// Views and candidate pool of one document; independent of guidance.
struct PreparedDoc {
  const Document* doc = nullptr;
  std::vector<SummaryView> views;
  std::vector<Candidate> pool;
};

inline PreparedDoc prepare_document(const Pipeline& p, const Document& doc) {
  PreparedDoc out;
  out.doc = &doc;
  std::vector<DocumentView> doc_views;
  try {
    const SamplingConfig sc = p.config.sampling();
    doc_views.reserve(sc.n_d);
    for (std::size_t vi = 0; vi < sc.n_d; ++vi)
      doc_views.push_back(sample_view(doc, sc, vi));
  } catch (const std::exception& e) {
    throw PipelineError("sample", doc.id, e.what());
  }
  try {
    out.views = p.provider->provide(doc, doc_views);
  } catch (const std::exception& e) {
    throw PipelineError("provide", doc.id, e.what());
  }
  out.pool = build_candidate_pool(out.views);
  return out;
}

inline std::vector<PreparedDoc> prepare_corpus(const Pipeline& p, const Corpus& corpus) {
  std::vector<PreparedDoc> out(corpus.size());
  parallel_for(corpus.size(), p.config.jobs, [&](std::size_t i) {
    out[i] = prepare_document(p, corpus[i]);
  });
  return out;
}

struct DocResult {
  std::string doc_id;
  std::string summary;
  std::size_t words = 0;
  double energy = 0.0;
  double budget = 0.0;
  std::string guidance_mode;
  ComposedSummary composed;
};

/// Guidance and composition for one prepared document. `budget_override`
/// replaces the mode's base budget (the correction is still added).
inline DocResult compose_document(const Pipeline& p, const PreparedDoc& prep,
                                  std::optional<double> budget_override = {},
                                  std::optional<double> correction_override = {}) {
  const Document& doc = *prep.doc;
  DocResult r;
  r.doc_id = doc.id;
  Guidance g = p.guidance_template;
  try {
    BudgetMode mode = p.budget;
    if (budget_override) {
      mode.kind = BudgetMode::Kind::kFixed;
      mode.value = *budget_override;
    }
    if (correction_override) mode.correction = *correction_override;
    g.budget_words = make_budget(mode, doc);
    g.content = make_content(p.content, doc, g.budget_words);
    if (!g.content) g.beta = 0.0;
  } catch (const std::exception& e) {
    throw PipelineError("guidance", doc.id, e.what());
  }
  try {
    r.composed = greedy_compose(prep.pool, g);
    if (g.content && !is_blank(*g.content))
      r.composed = reorder_by_guidance(r.composed, *g.content);
  } catch (const std::exception& e) {
    throw PipelineError("compose", doc.id, e.what());
  }
  r.summary = r.composed.text();
  r.words = r.composed.total_words;
  r.energy = r.composed.energy;
  r.budget = g.budget_words;
  r.guidance_mode = p.config.budget_mode + "/" + p.config.content_mode;
  return r;
}

inline std::vector<DocResult> compose_corpus(
    const Pipeline& p, const std::vector<PreparedDoc>& prepared,
    std::optional<double> budget_override = {},
    std::optional<double> correction_override = {}) {
  std::vector<DocResult> out(prepared.size());
  parallel_for(prepared.size(), p.config.jobs, [&](std::size_t i) {
    out[i] = compose_document(p, prepared[i], budget_override, correction_override);
  });
  return out;
}

inline json to_json(const DocResult& r) {
  return json{{"doc_id", r.doc_id},
              {"summary", r.summary},
              {"words", r.words},
              {"energy", r.energy},
              {"budget", r.budget},
              {"guidance_mode", r.guidance_mode}};
}

inline Predictions to_predictions(const std::vector<DocResult>& results) {
  Predictions out;
  for (const auto& r : results) out[r.doc_id] = r.summary;
  return out;
}

inline EvalOptions eval_options(const RunConfig& c) {
  return {c.eval_stem,
          c.rouge_l == "sum" ? RougeLVariant::kSummaryLevel : RougeLVariant::kWholeText};
}

inline bool all_have_references(const Corpus& corpus) {
  return std::all_of(corpus.begin(), corpus.end(),
                     [](const Document& d) { return d.has_reference(); });
}

struct GenerateOutputs {
  std::vector<DocResult> results;
  std::optional<EvalReport> report;
};

/// Full generate run. Writes `summaries.jsonl`, optionally
/// `summary_views.jsonl`, and `report.json` / `report.txt` when every
/// document has a reference.
inline GenerateOutputs run_generate(const RunConfig& c, const Corpus& corpus) {
  const Pipeline p = make_pipeline(c);
  const auto prepared = prepare_corpus(p, corpus);
  GenerateOutputs out;
  out.results = compose_corpus(p, prepared);
  const std::filesystem::path dir(c.out);
  std::vector<json> rows;
  rows.reserve(out.results.size());
  for (const auto& r : out.results) rows.push_back(to_json(r));
  write_jsonl(dir / "summaries.jsonl", rows);
  if (c.write_views) {
    std::vector<SummaryView> all;
    for (const auto& prep : prepared)
      all.insert(all.end(), prep.views.begin(), prep.views.end());
    export_summary_views(dir / "summary_views.jsonl", all);
  }
  if (!corpus.empty() && all_have_references(corpus)) {
    try {
      out.report = evaluate(to_predictions(out.results), corpus, eval_options(c));
    } catch (const std::exception& e) {
      throw PipelineError("evaluate", "", e.what());
    }
    write_text(dir / "report.json", to_json(*out.report).dump(2) + "\n");
    write_text(dir / "report.txt", format_report(*out.report));
  }
  return out;
}

/// One evaluation per budget over a candidate pool built once.
inline std::vector<std::pair<double, EvalReport>> budget_sweep(
    const Pipeline& p, const Corpus& corpus, const std::vector<double>& budgets) {
  const auto prepared = prepare_corpus(p, corpus);
  std::vector<std::pair<double, EvalReport>> rows;
  for (double b : budgets) {
    const auto results = compose_corpus(p, prepared, b);
    rows.emplace_back(b, evaluate(to_predictions(results), corpus,
                                  eval_options(p.config)));
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<std::pair<double, EvalReport>>& rows) {
  std::string out = "budget,r1,r2,rl,mean_words\n";
  char buf[256];
  for (const auto& [b, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", b, r.r1, r.r2,
                  r.rl, r.mean_words);
    out += buf;
  }
  return out;
}

/// Mean reference length in words over documents with references.
inline double mean_reference_words(const Corpus& corpus) {
  return corpus_stats(corpus).mean_summary_words;
}

/// Iterative additive budget correction against `target_mean` words.
inline CalibrationResult run_calibration(const Pipeline& p, const Corpus& corpus,
                                         double target_mean) {
  const auto prepared = prepare_corpus(p, corpus);
  auto run = [&](double correction) {
    const auto results = compose_corpus(p, prepared, std::nullopt, correction);
    std::vector<std::size_t> lengths;
    lengths.reserve(results.size());
    for (const auto& r : results) lengths.push_back(r.words);
    return lengths;
  };
  return calibrate_budget(run, target_mean, p.config.budget_correction,
                          p.config.calibrate_rounds, p.config.calibrate_tolerance);
}

}  // namespace factorsum
