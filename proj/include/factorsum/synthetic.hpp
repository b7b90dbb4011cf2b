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
#include <cstdint>
#include <string>
#include <vector>

#include "factorsum/corpus.hpp"
#include "factorsum/sampler.hpp"

namespace factorsum {

/// Shape of a generated toy corpus.
struct ToyCorpusSpec {
  std::size_t n_docs = 50;
  std::size_t min_sentences = 30;
  std::size_t max_sentences = 60;
  std::size_t min_words = 8;
  std::size_t max_words = 20;
  std::size_t min_reference = 3;
  std::size_t max_reference = 6;
  std::size_t common_vocab = 400;
  std::size_t topic_vocab = 40;
  /// Share of sentence words drawn from the document's topic vocabulary.
  double topic_share = 0.4;
  /// Per-word probabilities used when paraphrasing a source sentence into a
  /// reference sentence.
  double drop_prob = 0.2;
  double swap_prob = 0.15;
  std::uint64_t seed = 7;
};

namespace detail {

inline std::string pseudo_word(Rng& rng) {
  static constexpr char kCons[] = "bcdfghklmnprstvz";
  static constexpr char kVow[] = "aeiou";
  const std::size_t syllables = 2 + rng.below(2);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w.push_back(kCons[rng.below(sizeof(kCons) - 1)]);
    w.push_back(kVow[rng.below(sizeof(kVow) - 1)]);
  }
  if (rng.below(2)) w.push_back(kCons[rng.below(sizeof(kCons) - 1)]);
  return w;
}

inline std::string to_sentence(const std::vector<std::string>& words) {
  std::string s = join(words);
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s + ".";
}

inline std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

}  // namespace detail

/// Documents of random pseudo-word sentences. Each reference sentence is a
/// perturbed copy of a distinct source sentence, so every reference sentence
/// has a clear oracle.
inline Corpus make_toy_corpus(const ToyCorpusSpec& spec) {
  Rng rng(splitmix64(spec.seed));
  std::vector<std::string> common;
  common.reserve(spec.common_vocab);
  for (std::size_t i = 0; i < spec.common_vocab; ++i)
    common.push_back(detail::pseudo_word(rng));
  Corpus corpus;
  corpus.reserve(spec.n_docs);
  for (std::size_t d = 0; d < spec.n_docs; ++d) {
    std::vector<std::string> topic;
    for (std::size_t i = 0; i < spec.topic_vocab; ++i)
      topic.push_back(detail::pseudo_word(rng));
    Document doc;
    doc.id = "toy-" + std::to_string(d);
    const std::size_t n_sent =
        detail::between(rng, spec.min_sentences, spec.max_sentences);
    std::vector<std::vector<std::string>> sents;
    for (std::size_t s = 0; s < n_sent; ++s) {
      const std::size_t n_words = detail::between(rng, spec.min_words, spec.max_words);
      std::vector<std::string> words;
      for (std::size_t w = 0; w < n_words; ++w) {
        const bool from_topic = rng.uniform() < spec.topic_share;
        words.push_back(from_topic ? topic[rng.below(topic.size())]
                                   : common[rng.below(common.size())]);
      }
      doc.sentences.push_back(detail::to_sentence(words));
      sents.push_back(std::move(words));
    }
    const std::size_t n_ref = std::min(
        n_sent, detail::between(rng, spec.min_reference, spec.max_reference));
    std::vector<std::size_t> order(n_sent);
    for (std::size_t i = 0; i < n_sent; ++i) order[i] = i;
    for (std::size_t i = 0; i < n_ref; ++i)
      std::swap(order[i], order[i + rng.below(n_sent - i)]);
    std::vector<std::size_t> picked(order.begin(), order.begin() + n_ref);
    std::sort(picked.begin(), picked.end());
    std::vector<std::string> reference;
    for (std::size_t src : picked) {
      std::vector<std::string> words;
      for (const auto& w : sents[src]) {
        const double u = rng.uniform();
        if (u < spec.drop_prob) continue;
        if (u < spec.drop_prob + spec.swap_prob) {
          words.push_back(common[rng.below(common.size())]);
        } else {
          words.push_back(w);
        }
      }
      if (words.empty()) words.push_back(sents[src].front());
      reference.push_back(detail::to_sentence(words));
    }
    doc.reference = std::move(reference);
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace factorsum
