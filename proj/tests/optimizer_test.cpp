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

#include <cctype>
#include <random>
#include <set>

#include "factorsum/optimizer.hpp"
#include "support/oracles.hpp"

namespace factorsum {
namespace {

std::string words_sentence(const std::string& stem, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + stem + std::to_string(i);
  return s;
}

std::vector<Candidate> candidates(const std::vector<std::string>& texts) {
  std::vector<Candidate> out;
  for (const auto& t : texts) out.push_back(make_candidate(t));
  return out;
}

Guidance length_only(double budget) {
  Guidance g;
  g.budget_words = budget;
  g.beta = 0.0;
  return g;
}

// Random sentences of 2-character tokens, so stemming and tokenisation are
// the identity and the oracles can split on spaces.
std::string random_sentence(std::mt19937_64& rng, std::size_t min_len,
                            std::size_t max_len, int vocab) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> w(0, vocab - 1);
  const std::size_t n = len(rng);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    const int k = w(rng);
    s += (i ? " " : "");
    s += static_cast<char>('a' + k / 10);
    s += static_cast<char>('0' + k % 10);
  }
  return s;
}

TEST(CandidatePool, SplitsDedupesAndDropsEmpty) {
  const std::vector<SummaryView> views{
      {"d", 0, "One two. Three four five.", Provenance::kOracle},
      {"d", 1, "One two. ... Six.", Provenance::kOracle}};
  const auto pool = build_candidate_pool(views);
  ASSERT_EQ(pool.size(), 3u);
  EXPECT_EQ(pool[0].text, "One two.");
  EXPECT_EQ(pool[1].text, "Three four five.");
  EXPECT_EQ(pool[1].word_count, 3u);
  EXPECT_EQ(pool[2].text, "Six.");
  EXPECT_EQ(pool[2].origin.view_index, 1u);
}

TEST(CandidatePool, CardinalityIsDistinctSentences) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SummaryView> views;
    std::set<std::string> distinct;
    for (std::size_t v = 0; v < 5; ++v) {
      std::string text;
      for (int s = 0; s < 4; ++s) {
        std::string sent = random_sentence(rng, 1, 3, 3) + ".";
        sent[0] = static_cast<char>(std::toupper(sent[0]));
        distinct.insert(sent);
        text += (s ? " " : "") + sent;
      }
      views.push_back({"d", v, text, Provenance::kExtractive});
    }
    EXPECT_EQ(build_candidate_pool(views).size(), distinct.size());
  }
}

TEST(Energy, Examples) {
  Guidance g = length_only(3.0);
  EXPECT_DOUBLE_EQ(extrinsic_energy(std::vector<std::string>{"a b c"}, g), 0.0);
  EXPECT_DOUBLE_EQ(extrinsic_energy(std::vector<std::string>{}, g), 1.0);
  g.beta = 1.0;
  g.content = "a b c";
  EXPECT_DOUBLE_EQ(extrinsic_energy(std::vector<std::string>{"a b c"}, g), -1.0);
  g.budget_words = 0.0;
  EXPECT_THROW(extrinsic_energy(std::vector<std::string>{"a"}, g), std::invalid_argument);
}

TEST(Energy, StemmedContentUnstemmedLength) {
  Guidance g;
  g.budget_words = 2.0;
  g.content = "runs dog";
  EXPECT_DOUBLE_EQ(extrinsic_energy(std::vector<std::string>{"Running, dogs!"}, g), -1.0);
}

TEST(Energy, MatchesOracleOnRandomSets) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> sents;
    const int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) sents.push_back(random_sentence(rng, 1, 8, 12));
    Guidance g;
    g.budget_words = 1.0 + static_cast<double>(rng() % 20);
    g.alpha = 0.5 + static_cast<double>(rng() % 3);
    g.beta = static_cast<double>(rng() % 3);
    g.content = random_sentence(rng, 1, 12, 12);
    EXPECT_NEAR(extrinsic_energy(sents, g),
                oracle::energy(sents, g.budget_words, g.alpha, g.beta, *g.content), 1e-12);
  }
}

TEST(Redundancy, Examples) {
  const auto a = make_candidate(words_sentence("a", 10));
  const auto same = make_candidate(words_sentence("a", 10));
  std::string half = words_sentence("a", 5) + " " + words_sentence("b", 5);
  const auto h = make_candidate(half);
  EXPECT_TRUE(is_redundant({a}, same, 0.4));
  EXPECT_FALSE(is_redundant({a}, h, 0.4));  // distance exactly 0.5
  EXPECT_TRUE(is_redundant({a}, h, 0.6));
  EXPECT_FALSE(is_redundant({}, a, 0.4));
}

TEST(Greedy, EmptyPool) {
  const Guidance g = length_only(10.0);
  const auto s = greedy_compose({}, g);
  EXPECT_TRUE(s.selected.empty());
  EXPECT_DOUBLE_EQ(s.energy, g.alpha);
}

TEST(Greedy, SkipsRedundantCopy) {
  const std::string a = words_sentence("a", 10);
  const std::string c = words_sentence("c", 5);
  const auto s = greedy_compose(candidates({a, a + ".", c}), length_only(15.0));
  ASSERT_EQ(s.selected.size(), 2u);
  EXPECT_EQ(s.selected[0].text, a);
  EXPECT_EQ(s.selected[1].text, c);
  EXPECT_DOUBLE_EQ(s.energy, 0.0);
  EXPECT_EQ(s.total_words, 15u);
}

TEST(Greedy, LengthOnlyPicksLongestFirst) {
  const auto pool = candidates(
      {words_sentence("a", 3), words_sentence("b", 9), words_sentence("c", 6)});
  const auto s = greedy_compose(pool, length_only(100.0));
  ASSERT_FALSE(s.selected.empty());
  EXPECT_EQ(s.selected[0].word_count, 9u);
}

TEST(Greedy, RejectsInvalidGuidance) {
  Guidance g;
  g.budget_words = 10;
  g.beta = 1.0;  // no content
  EXPECT_THROW(greedy_compose({}, g), std::invalid_argument);
  EXPECT_THROW(greedy_compose({}, length_only(0.0)), std::invalid_argument);
}

TEST(Greedy, TieIsNotAnImprovementUnderStrictOnly) {
  // Budget 8: {6 words} has energy 1/16 and {6, 4} lands on 10 words with the
  // same energy.
  const auto pool = candidates({words_sentence("x", 6), words_sentence("y", 4)});
  Guidance g = length_only(8.0);
  const auto strict = greedy_compose(pool, g);
  EXPECT_EQ(strict.selected.size(), 1u);
  g.variant = GreedyVariant::kLiteral;
  const auto literal = greedy_compose(pool, g);
  EXPECT_EQ(literal.selected.size(), 2u);
  EXPECT_DOUBLE_EQ(literal.energy, strict.energy);
}

TEST(Greedy, PatienceStopsEarly) {
  // After the first pick every addition overshoots; patience 1 allows two
  // stale iterations.
  std::vector<std::string> texts{words_sentence("a", 10)};
  for (int i = 0; i < 6; ++i) texts.push_back(words_sentence(std::string(1, 'b' + i), 9));
  Guidance g = length_only(10.0);
  g.patience = 1;
  const auto s = greedy_compose(candidates(texts), g);
  EXPECT_EQ(s.selected.size(), 1u);
  EXPECT_EQ(s.iterations, 3u);
}

struct RandomPool {
  std::vector<std::string> texts;
  Guidance guidance;
};

RandomPool random_pool(std::mt19937_64& rng, std::size_t max_n) {
  RandomPool rp;
  const std::size_t n = 1 + rng() % max_n;
  for (std::size_t i = 0; i < n; ++i) rp.texts.push_back(random_sentence(rng, 1, 10, 15));
  rp.guidance.budget_words = 3.0 + static_cast<double>(rng() % 25);
  rp.guidance.alpha = 1.0;
  rp.guidance.beta = static_cast<double>(rng() % 3);
  rp.guidance.content = random_sentence(rng, 3, 20, 15);
  return rp;
}

TEST(GreedyProperties, SandwichedByExhaustiveOptimum) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const RandomPool rp = random_pool(rng, 8);
    const auto s = greedy_compose(candidates(rp.texts), rp.guidance);
    const double best = oracle::best_subset_energy(rp.texts, rp.guidance.budget_words,
                                                   rp.guidance.alpha, rp.guidance.beta,
                                                   *rp.guidance.content, 0.4);
    EXPECT_GE(s.energy, best - 1e-12);
    EXPECT_LE(s.energy, rp.guidance.alpha + 1e-12);
  }
}

TEST(GreedyProperties, ReportedEnergyMatchesSelection) {
  std::mt19937_64 rng(405);
  for (auto variant : {GreedyVariant::kStrict, GreedyVariant::kLiteral}) {
    for (int trial = 0; trial < 150; ++trial) {
      RandomPool rp = random_pool(rng, 12);
      rp.guidance.variant = variant;
      const auto s = greedy_compose(candidates(rp.texts), rp.guidance);
      std::vector<std::string> chosen;
      for (const auto& c : s.selected) chosen.push_back(c.text);
      EXPECT_DOUBLE_EQ(s.energy, extrinsic_energy(chosen, rp.guidance));
      EXPECT_NEAR(s.energy,
                  oracle::energy(chosen, rp.guidance.budget_words, rp.guidance.alpha,
                                 rp.guidance.beta, *rp.guidance.content),
                  1e-12);
    }
  }
}

TEST(GreedyProperties, SelectionIsRedundancyFreeAndDeterministic) {
  std::mt19937_64 rng(406);
  for (int trial = 0; trial < 150; ++trial) {
    const RandomPool rp = random_pool(rng, 15);
    const auto pool = candidates(rp.texts);
    const auto s = greedy_compose(pool, rp.guidance);
    for (std::size_t i = 0; i < s.selected.size(); ++i)
      for (std::size_t j = i + 1; j < s.selected.size(); ++j)
        EXPECT_GE(normalized_levenshtein(s.selected[i].words, s.selected[j].words), 0.4);
    const auto again = greedy_compose(pool, rp.guidance);
    EXPECT_EQ(again.text(), s.text());
    EXPECT_EQ(again.energy, s.energy);
  }
}

TEST(GreedyProperties, LengthOnlyLandsNearBudget) {
  std::mt19937_64 rng(407);
  for (double budget : {100.0, 205.0, 648.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::string> texts;
      std::size_t total = 0;
      std::size_t longest = 0;
      // distinct prefixes keep every pair non-redundant
      while (texts.size() < 40 || static_cast<double>(total) < budget) {
        const std::size_t n = 5 + rng() % 26;
        texts.push_back(words_sentence("s" + std::to_string(texts.size()) + "w", n));
        total += n;
        longest = std::max(longest, n);
      }
      const auto s = greedy_compose(candidates(texts), length_only(budget));
      EXPECT_LE(std::abs(static_cast<double>(s.total_words) - budget),
                static_cast<double>(longest))
          << "budget " << budget;
    }
  }
}

Document doc_with(std::string id, std::vector<std::string> sentences,
                  std::optional<std::vector<std::string>> ref = std::nullopt) {
  return {std::move(id), std::move(sentences), std::move(ref)};
}

TEST(Budget, FixedDefaultsAndCorrection) {
  const Document d = doc_with("d", {"x."});
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::fixed_for("pubmed", 8.0), d), 213.0);
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::fixed_for("arxiv"), d), 165.0);
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::fixed_for("govreport"), d), 648.0);
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::fixed(50.0, -5.0), d), 45.0);
  EXPECT_THROW(make_budget(BudgetMode::fixed_for("unknown"), d), std::invalid_argument);
  EXPECT_THROW(make_budget(BudgetMode::fixed(5.0, -5.0), d), std::invalid_argument);
}

TEST(Budget, OracleAndModel) {
  const Document d = doc_with("d", {"x."}, std::vector<std::string>{"a b c.", "d e."});
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::oracle(), d), 5.0);
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::oracle(2.0), d), 7.0);
  const auto lengths = std::make_shared<const LengthTable>(
      advisor_lengths(AdvisorTable{{"d", "one two three four"}}));
  EXPECT_DOUBLE_EQ(make_budget(BudgetMode::model(lengths), d), 4.0);
  const Document other = doc_with("other", {"x."});
  try {
    make_budget(BudgetMode::model(lengths), other);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("other"), std::string::npos);
  }
  EXPECT_THROW(make_budget(BudgetMode::oracle(), other), std::invalid_argument);
}

TEST(Content, Modes) {
  const std::string s100 = words_sentence("w", 100);
  const Document d = doc_with("d", {s100, s100, s100}, std::vector<std::string>{"R1.", "R2."});
  ContentMode lead{ContentMode::Kind::kLead, nullptr};
  EXPECT_EQ(*make_content(lead, d, 205.0), join({s100, s100, s100}));
  EXPECT_EQ(*make_content(lead, d, 50.0), s100);
  EXPECT_EQ(*make_content(lead, d, 100.0), s100);
  EXPECT_EQ(*make_content(lead, d, 10000.0), join({s100, s100, s100}));
  EXPECT_FALSE(make_content({}, d, 10.0).has_value());
  EXPECT_EQ(*make_content({ContentMode::Kind::kReference, nullptr}, d, 10.0), "R1. R2.");
  auto advisor = std::make_shared<const AdvisorTable>(AdvisorTable{{"d", "Advice."}});
  EXPECT_EQ(*make_content({ContentMode::Kind::kModel, advisor}, d, 10.0), "Advice.");
  const Document other = doc_with("other", {"x."});
  EXPECT_THROW(make_content({ContentMode::Kind::kModel, advisor}, other, 10.0),
               std::invalid_argument);
  EXPECT_THROW(make_content({ContentMode::Kind::kReference, nullptr}, other, 10.0),
               std::invalid_argument);
}

TEST(Calibration, Correction) {
  EXPECT_DOUBLE_EQ(calibrate_budget_correction({190, 190}, 200.0), 10.0);
  EXPECT_DOUBLE_EQ(calibrate_budget_correction({200}, 200.0), 0.0);
  EXPECT_THROW(calibrate_budget_correction({}, 200.0), std::invalid_argument);
}

TEST(Calibration, ConvergesOnAffineSystem) {
  // System undershoots: length = 0.8 * (150 + correction).
  auto run = [](double correction) {
    return std::vector<std::size_t>(
        4, static_cast<std::size_t>(std::lround(0.8 * (150.0 + correction))));
  };
  const auto r = calibrate_budget(run, 150.0);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.rounds.size(), 5u);
  EXPECT_LE(std::abs(r.rounds.back().mean_length - 150.0), 2.0);
  EXPECT_DOUBLE_EQ(r.correction, r.rounds.back().correction);
}

TEST(Calibration, ReportsNonConvergence) {
  auto run = [](double) { return std::vector<std::size_t>{10}; };
  const auto r = calibrate_budget(run, 100.0, 0.0, 3);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.rounds.size(), 3u);
}

TEST(Reorder, SortsByGuidancePosition) {
  ComposedSummary s;
  s.selected = candidates({"gamma three here.", "alpha one here.", "beta two here."});
  s.energy = -0.5;
  const auto r = reorder_by_guidance(s, "Alpha one. Beta two. Gamma three.");
  ASSERT_EQ(r.selected.size(), 3u);
  EXPECT_EQ(r.text(), "alpha one here. beta two here. gamma three here.");
  EXPECT_EQ(r.energy, s.energy);
  EXPECT_EQ(reorder_by_guidance(s, "").text(), s.text());
}

TEST(Reorder, StableForEqualKeys) {
  ComposedSummary s;
  s.selected = candidates({"zeta alpha.", "alpha one extra.", "beta two."});
  const auto r = reorder_by_guidance(s, "Alpha one. Beta two.");
  EXPECT_EQ(r.text(), "zeta alpha. alpha one extra. beta two.");
}

TEST(Reorder, MatchesBruteForceKeys) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> guide;
    for (int i = 0; i < 5; ++i) guide.push_back(random_sentence(rng, 2, 6, 10));
    ComposedSummary s;
    for (int i = 0; i < 5; ++i) s.selected.push_back(make_candidate(random_sentence(rng, 1, 6, 10)));
    std::string guide_text;
    for (const auto& g : guide) guide_text += (guide_text.empty() ? "" : "\n") + g;
    std::vector<std::pair<std::size_t, std::size_t>> keys;
    for (std::size_t i = 0; i < s.selected.size(); ++i) {
      const auto w = oracle::words(s.selected[i].text);
      double best = -1;
      std::size_t arg = 0;
      for (std::size_t j = 0; j < guide.size(); ++j) {
        const auto gw = oracle::words(guide[j]);
        const double score = oracle::rouge_n(gw, w, 1).f + oracle::rouge_n(gw, w, 2).f;
        if (score > best + 1e-15) best = score, arg = j;
      }
      keys.emplace_back(arg, i);
    }
    std::stable_sort(keys.begin(), keys.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto r = reorder_by_guidance(s, guide_text);
    ASSERT_EQ(r.selected.size(), keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      EXPECT_EQ(r.selected[i].text, s.selected[keys[i].second].text);
  }
}

}  // namespace
}  // namespace factorsum
