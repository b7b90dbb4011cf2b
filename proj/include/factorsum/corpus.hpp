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
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "factorsum/io.hpp"
#include "factorsum/text.hpp"

namespace factorsum {

/// One source article, sentence-split, with an optional reference summary.
struct Document {
  std::string id;
  std::vector<std::string> sentences;
  std::optional<std::vector<std::string>> reference;

  bool has_reference() const { return reference.has_value(); }

  std::string reference_text() const {
    return reference ? join(*reference) : std::string();
  }
};

using Corpus = std::vector<Document>;

struct CorpusStats {
  std::size_t n_documents = 0;
  double mean_summary_sentences = 0.0;
  double mean_summary_words = 0.0;
  double mean_document_sentences = 0.0;
};

namespace detail {

// Reads either `<stem>_sentences` (list of strings) or `<stem>_text` (string,
// split here). Returns nullopt when neither field exists. Blank sentences are
// dropped.
inline std::optional<std::vector<std::string>> read_sentence_field(
    const json& obj, const std::string& stem, const std::string& path,
    std::size_t lineno) {
  const std::string list_key = stem + "_sentences";
  const std::string text_key = stem + "_text";
  std::vector<std::string> raw;
  if (obj.contains(list_key)) {
    const json& v = obj.at(list_key);
    if (!v.is_array())
      throw InputError(path, lineno, "field '" + list_key + "' must be a list");
    for (const auto& s : v) {
      if (!s.is_string())
        throw InputError(path, lineno,
                         "field '" + list_key + "' must contain strings");
      raw.push_back(s.get<std::string>());
    }
  } else if (obj.contains(text_key)) {
    const json& v = obj.at(text_key);
    if (!v.is_string())
      throw InputError(path, lineno, "field '" + text_key + "' must be a string");
    raw = split_sentences(v.get<std::string>());
  } else {
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (auto& s : raw) {
    std::string t = trim(s);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

/// Loads a JSONL corpus. Each line holds `id` (optional), `article_sentences`
/// or `article_text`, and optionally `abstract_sentences` or `abstract_text`.
/// Records whose article is empty, or whose abstract is present but empty,
/// are dropped. Missing ids become `<split>-<line>`.
inline Corpus load_corpus(const std::filesystem::path& path,
                          const std::string& split = "test") {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  const std::string p = path.string();
  for_each_json(path, [&](std::size_t lineno, const json& obj) {
    Document doc;
    if (obj.contains("id") && !obj.at("id").is_null()) {
      const json& id = obj.at("id");
      doc.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      doc.id = split + "-" + std::to_string(lineno);
    }
    auto article = detail::read_sentence_field(obj, "article", p, lineno);
    if (!article)
      throw InputError(p, lineno,
                       "missing required field 'article_sentences' or "
                       "'article_text'");
    doc.sentences = std::move(*article);
    doc.reference = detail::read_sentence_field(obj, "abstract", p, lineno);
    if (doc.sentences.empty()) return;
    if (doc.reference && doc.reference->empty()) return;
    if (!seen.insert(doc.id).second)
      throw InputError(p, lineno, "duplicate document id '" + doc.id + "'");
    corpus.push_back(std::move(doc));
  });
  return corpus;
}

inline json document_to_json(const Document& doc) {
  json row;
  row["id"] = doc.id;
  row["article_sentences"] = doc.sentences;
  if (doc.reference) row["abstract_sentences"] = *doc.reference;
  return row;
}

inline void save_corpus(const std::filesystem::path& path,
                        const Corpus& corpus) {
  std::vector<json> rows;
  rows.reserve(corpus.size());
  for (const auto& d : corpus) rows.push_back(document_to_json(d));
  write_jsonl(path, rows);
}

/// Summary means are over documents that carry a reference.
inline CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.n_documents = corpus.size();
  std::size_t with_ref = 0;
  double sum_ref_sents = 0.0;
  double sum_ref_words = 0.0;
  double sum_doc_sents = 0.0;
  for (const auto& d : corpus) {
    sum_doc_sents += static_cast<double>(d.sentences.size());
    if (!d.reference) continue;
    ++with_ref;
    sum_ref_sents += static_cast<double>(d.reference->size());
    for (const auto& sent : *d.reference)
      sum_ref_words += static_cast<double>(count_words(sent));
  }
  if (!corpus.empty())
    s.mean_document_sentences = sum_doc_sents / static_cast<double>(corpus.size());
  if (with_ref) {
    s.mean_summary_sentences = sum_ref_sents / static_cast<double>(with_ref);
    s.mean_summary_words = sum_ref_words / static_cast<double>(with_ref);
  }
  return s;
}

inline json to_json(const CorpusStats& s) {
  return json{{"n_documents", s.n_documents},
              {"mean_summary_sentences", s.mean_summary_sentences},
              {"mean_summary_words", s.mean_summary_words},
              {"mean_document_sentences", s.mean_document_sentences}};
}

}  // namespace factorsum
