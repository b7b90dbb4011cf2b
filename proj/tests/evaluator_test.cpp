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

#include <gtest/gtest.h>

#include <random>

#include "factorsum/evaluator.hpp"
#include "factorsum/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

namespace factorsum {
namespace {

Corpus refs(std::vector<std::pair<std::string, std::string>> items) {
  Corpus c;
  for (auto& [id, ref] : items)
    c.push_back({id, {"irrelevant."}, std::vector<std::string>{ref}});
  return c;
}

TEST(Evaluate, Examples) {
  const Corpus c = refs({{"a", "the cat"}, {"b", "x y z"}, {"c", "one two"}});
  EXPECT_DOUBLE_EQ(evaluate({{"b", "x y z"}}, c).r1, 1.0);
  EXPECT_NEAR(evaluate({{"a", "the cat sat"}}, c).r1, 0.8, 1e-12);
  EXPECT_EQ(evaluate({{"c", "three four"}}, c).r1, 0.0);
}

TEST(Evaluate, UnmatchedIdsListed) {
  const Corpus c = refs({{"a", "the cat"}});
  try {
    evaluate({{"zz", "x"}, {"a", "y"}, {"mm", "x"}}, c);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("mm zz"), std::string::npos);
  }
  Corpus no_ref{{"n", {"s."}, std::nullopt}};
  EXPECT_THROW(evaluate({{"n", "x"}}, no_ref), std::invalid_argument);
}

TEST(Evaluate, MeansArePerDocAveragesInCorpusOrder) {
  ToyCorpusSpec spec;
  spec.n_docs = 15;
  const Corpus c = make_toy_corpus(spec);
  Predictions preds;
  for (std::size_t i = 0; i < c.size(); ++i)
    preds[c[i].id] = join({c[i].sentences[0], c[i].sentences[i % c[i].sentences.size()]});
  const EvalReport r = evaluate(preds, c);
  ASSERT_EQ(r.n, c.size());
  double r1 = 0, r2 = 0, rl = 0, words = 0;
  for (std::size_t i = 0; i < r.per_doc.size(); ++i) {
    EXPECT_EQ(r.per_doc[i].doc_id, c[i].id);
    r1 += r.per_doc[i].r1;
    r2 += r.per_doc[i].r2;
    rl += r.per_doc[i].rl;
    words += static_cast<double>(r.per_doc[i].words);
  }
  EXPECT_NEAR(r.r1, r1 / 15.0, 1e-12);
  EXPECT_NEAR(r.r2, r2 / 15.0, 1e-12);
  EXPECT_NEAR(r.rl, rl / 15.0, 1e-12);
  EXPECT_NEAR(r.mean_words, words / 15.0, 1e-12);

  // Reversing the corpus permutes per_doc but keeps the means.
  Corpus reversed(c.rbegin(), c.rend());
  const EvalReport rr = evaluate(preds, reversed);
  EXPECT_NEAR(rr.r1, r.r1, 1e-12);
  EXPECT_NEAR(rr.rl, r.rl, 1e-12);
  EXPECT_EQ(rr.per_doc.front().doc_id, c.back().id);
}

TEST(Evaluate, UnrelatedSentenceNeverRaisesPrecision) {
  ToyCorpusSpec spec;
  spec.n_docs = 20;
  const Corpus c = make_toy_corpus(spec);
  std::mt19937_64 rng(4);
  for (const auto& doc : c) {
    std::string summary = doc.sentences[rng() % doc.sentences.size()];
    for (int step = 0; step < 4; ++step) {
      const auto before = score_texts(summary, doc.reference_text());
      // digits never occur in the pseudo-word vocabulary
      summary += " " + std::to_string(rng() % 1000) + " " + std::to_string(rng() % 1000) + ".";
      const auto after = score_texts(summary, doc.reference_text());
      EXPECT_LE(after.r1.precision, before.r1.precision);
      EXPECT_LE(after.r2.precision, before.r2.precision);
      EXPECT_LE(after.rl.precision, before.rl.precision);
    }
  }
}

TEST(Evaluate, SummaryLevelVariantJoinsReferenceLines) {
  Corpus c{{"d", {"s."}, std::vector<std::string>{"a b", "c d"}}};
  EvalOptions opts;
  opts.rouge_l = RougeLVariant::kSummaryLevel;
  EXPECT_NEAR(evaluate({{"d", "c d\na b"}}, c, opts).rl, 1.0, 1e-12);
  EXPECT_LT(evaluate({{"d", "c d a b"}}, c).rl, 1.0);
}

TEST(Bootstrap, IdenticalSystemsGiveOne) {
  const std::vector<double> a{0.1, 0.5, 0.3, 0.9, 0.2};
  EXPECT_DOUBLE_EQ(paired_bootstrap(a, a, 1000, 3), 1.0);
}

TEST(Bootstrap, ClearShiftIsSignificant) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> a(200), b(200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    b[i] = 0.4 + noise(rng);
    a[i] = b[i] + 0.05 + noise(rng) * 0.2;
  }
  EXPECT_LT(paired_bootstrap(a, b, 5000, 0), 0.01);
}

TEST(Bootstrap, AgreesWithIndependentImplementation) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::vector<double> a(60), b(60);
    for (std::size_t i = 0; i < a.size(); ++i) {
      b[i] = 0.3 + noise(rng);
      a[i] = b[i] + 0.02 + noise(rng);
    }
    EXPECT_NEAR(paired_bootstrap(a, b, 10000, seed), oracle::paired_bootstrap(a, b, 10000, seed),
                0.03);
  }
}

TEST(Bootstrap, InputValidation) {
  EXPECT_THROW(paired_bootstrap({1, 2}, {1}), std::invalid_argument);
  EXPECT_THROW(paired_bootstrap({1}, {1}), std::invalid_argument);
  EXPECT_THROW(paired_bootstrap({1, 2}, {1, 2}, 0), std::invalid_argument);
}

TEST(Bootstrap, ConfidenceIntervalBracketsMean) {
  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(i % 10 / 10.0);
  const auto ci = bootstrap_ci(xs, 0.95, 2000, 1);
  EXPECT_LT(ci.lower, 0.45);
  EXPECT_GT(ci.upper, 0.45);
  EXPECT_GT(ci.lower, 0.35);
  EXPECT_LT(ci.upper, 0.55);
  EXPECT_THROW(bootstrap_ci({}), std::invalid_argument);
}

TEST(Predictions, LoadAndReportFormats) {
  testing_support::TempDir tmp;
  const auto p = tmp.write("p.jsonl", R"({"doc_id": "a", "summary": "the cat"})" "\n");
  const Predictions preds = load_predictions(p);
  ASSERT_EQ(preds.size(), 1u);
  const EvalReport r = evaluate(preds, refs({{"a", "the cat"}}));
  const json j = to_json(r);
  EXPECT_DOUBLE_EQ(j.at("r1").get<double>(), 1.0);
  EXPECT_EQ(j.at("per_doc").size(), 1u);
  EXPECT_NE(format_report(r).find("100.00"), std::string::npos);
  EXPECT_THROW(load_predictions(tmp.write("bad.jsonl", R"({"doc_id": "a"})" "\n")),
               InputError);
}

}  // namespace
}  // namespace factorsum
