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

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorsum/corpus.hpp"
#include "factorsum/io.hpp"
#include "factorsum/sampler.hpp"
#include "factorsum/text.hpp"

namespace factorsum {

enum class Provenance { kExternalModel, kExtractive, kOracle, kEnsemble };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kExternalModel:
      return "external-model";
    case Provenance::kExtractive:
      return "extractive";
    case Provenance::kOracle:
      return "oracle";
    case Provenance::kEnsemble:
      return "ensemble";
  }
  return "unknown";
}

/// A short summary produced for one document view.
struct SummaryView {
  std::string doc_id;
  std::size_t view_index = 0;
  std::string text;
  Provenance provenance = Provenance::kExternalModel;
};

/// Supplies summary views for the sampled views of a document. Returns one
/// SummaryView per input view, except views whose summary is empty, which
/// are skipped. Implementations are read-only after construction.
class ViewProvider {
 public:
  virtual ~ViewProvider() = default;

  virtual std::vector<SummaryView> provide(
      const Document& doc, std::span<const DocumentView> views) const = 0;

  virtual Provenance provenance() const = 0;
};

using WarningSink = std::function<void(const std::string&)>;

inline WarningSink stderr_warnings() {
  return [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
}

/// Serves stored views keyed by (doc_id, view_index) from a JSONL file of
/// `{doc_id, view_index, text}` rows. Rows with blank text or an `error`
/// field are recorded as skips.
class FileProvider final : public ViewProvider {
 public:
  explicit FileProvider(const std::filesystem::path& path) : path_(path) {
    const std::string p = path.string();
    for_each_json(path, [&](std::size_t lineno, const json& obj) {
      for (const char* key : {"doc_id", "view_index"})
        if (!obj.contains(key))
          throw InputError(p, lineno, std::string("missing field '") + key + "'");
      std::string doc_id;
      std::size_t view_index = 0;
      std::string text;
      try {
        doc_id = obj.at("doc_id").get<std::string>();
        view_index = obj.at("view_index").get<std::size_t>();
        if (obj.contains("text") && !obj.at("text").is_null())
          text = obj.at("text").get<std::string>();
      } catch (const json::exception& e) {
        throw InputError(p, lineno, e.what());
      }
      if (obj.contains("error") && !obj.at("error").is_null()) text.clear();
      else if (!obj.contains("text"))
        throw InputError(p, lineno, "missing field 'text'");
      auto key = std::make_pair(doc_id, view_index);
      if (!views_.emplace(std::move(key), std::move(text)).second)
        throw InputError(p, lineno,
                         "duplicate view (" + doc_id + ", " +
                             std::to_string(view_index) + ")");
    });
  }

  std::vector<SummaryView> provide(
      const Document& doc, std::span<const DocumentView> views) const override {
    std::vector<SummaryView> out;
    out.reserve(views.size());
    for (const auto& v : views) {
      auto it = views_.find({doc.id, v.view_index});
      if (it == views_.end())
        throw std::out_of_range(path_.string() + ": no summary view for (" +
                                doc.id + ", " + std::to_string(v.view_index) +
                                ")");
      if (is_blank(it->second)) continue;
      out.push_back({doc.id, v.view_index, it->second, provenance()});
    }
    return out;
  }

  Provenance provenance() const override { return Provenance::kExternalModel; }

  /// Number of stored rows, skips included.
  std::size_t size() const { return views_.size(); }

 private:
  std::filesystem::path path_;
  std::map<std::pair<std::string, std::size_t>, std::string> views_;
};

/// Lead-k of each document view.
class ExtractiveProvider final : public ViewProvider {
 public:
  explicit ExtractiveProvider(std::size_t k) : k_(k) {
    if (k_ < 1) throw std::invalid_argument("extractive provider: k must be >= 1");
  }

  std::vector<SummaryView> provide(
      const Document& doc, std::span<const DocumentView> views) const override {
    std::vector<SummaryView> out;
    out.reserve(views.size());
    for (const auto& v : views) {
      std::vector<std::string> lead;
      for (std::size_t i = 0; i < v.sentence_indices.size() && i < k_; ++i)
        lead.push_back(doc.sentences.at(v.sentence_indices[i]));
      std::string text = join(lead);
      if (is_blank(text)) continue;
      out.push_back({doc.id, v.view_index, std::move(text), provenance()});
    }
    return out;
  }

  Provenance provenance() const override { return Provenance::kExtractive; }

 private:
  std::size_t k_;
};

/// Each view's summary is its reference view R_v; views with empty R_v are
/// skipped.
class OracleProvider final : public ViewProvider {
 public:
  std::vector<SummaryView> provide(
      const Document& doc, std::span<const DocumentView> views) const override {
    if (!doc.reference || doc.reference->empty())
      throw std::invalid_argument("oracle provider: document '" + doc.id +
                                  "' has no reference summary");
    const OracleAlignment alignment = align_oracle(doc);
    std::vector<SummaryView> out;
    for (const auto& v : views) {
      ViewRecord rec = make_view_record(doc, v, &alignment);
      if (rec.target_text.empty()) continue;
      out.push_back({doc.id, v.view_index, std::move(rec.target_text),
                     provenance()});
    }
    return out;
  }

  Provenance provenance() const override { return Provenance::kOracle; }
};

/// doc_id -> whole-document summary, from `{doc_id, summary}` JSONL.
using AdvisorTable = std::unordered_map<std::string, std::string>;

inline AdvisorTable load_advisor_table(const std::filesystem::path& path) {
  AdvisorTable table;
  const std::string p = path.string();
  for_each_json(path, [&](std::size_t lineno, const json& obj) {
    for (const char* key : {"doc_id", "summary"})
      if (!obj.contains(key))
        throw InputError(p, lineno, std::string("missing field '") + key + "'");
    try {
      table[obj.at("doc_id").get<std::string>()] =
          obj.at("summary").get<std::string>();
    } catch (const json::exception& e) {
      throw InputError(p, lineno, e.what());
    }
  });
  return table;
}

/// Whole-document summaries from several models used as the candidate views.
/// Model i contributes view index i. A model lacking the document is skipped
/// with a warning.
class EnsembleProvider final : public ViewProvider {
 public:
  explicit EnsembleProvider(const std::vector<std::filesystem::path>& paths,
                            WarningSink warn = stderr_warnings())
      : warn_(std::move(warn)) {
    if (paths.empty())
      throw std::invalid_argument("ensemble provider: no summary files given");
    for (const auto& p : paths) {
      names_.push_back(p.string());
      tables_.push_back(load_advisor_table(p));
    }
  }

  std::vector<SummaryView> provide(
      const Document& doc, std::span<const DocumentView>) const override {
    std::vector<SummaryView> out;
    for (std::size_t m = 0; m < tables_.size(); ++m) {
      auto it = tables_[m].find(doc.id);
      if (it == tables_[m].end()) {
        if (warn_) warn_(names_[m] + ": no summary for document '" + doc.id +
                         "', skipping this model");
        continue;
      }
      if (is_blank(it->second)) continue;
      out.push_back({doc.id, m, it->second, provenance()});
    }
    return out;
  }

  Provenance provenance() const override { return Provenance::kEnsemble; }

 private:
  std::vector<std::string> names_;
  std::vector<AdvisorTable> tables_;
  WarningSink warn_;
};

inline json to_json(const SummaryView& v) {
  return json{{"doc_id", v.doc_id}, {"view_index", v.view_index}, {"text", v.text}};
}

/// Writes `{doc_id, view_index, text}` rows, the format FileProvider reads.
inline void export_summary_views(const std::filesystem::path& path,
                                 const std::vector<SummaryView>& views) {
  std::vector<json> rows;
  rows.reserve(views.size());
  for (const auto& v : views) rows.push_back(to_json(v));
  write_jsonl(path, rows);
}

}  // namespace factorsum
