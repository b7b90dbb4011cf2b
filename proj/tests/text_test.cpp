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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "factorsum/text.hpp"

namespace factorsum {
namespace {

using Strings = std::vector<std::string>;

TEST(TokenizeWords, EmptyInput) { EXPECT_TRUE(tokenize_words("").empty()); }

TEST(TokenizeWords, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(tokenize_words("The cat, sat."), (Strings{"the", "cat", "sat"}));
  EXPECT_EQ(tokenize_words("  A-b  (c)\td9 "), (Strings{"a", "b", "c", "d9"}));
}

TEST(TokenizeWords, StemmingOnlyWhenRequested) {
  EXPECT_EQ(tokenize_words("running runs", true), (Strings{"run", "run"}));
  EXPECT_EQ(tokenize_words("running runs", false), (Strings{"running", "runs"}));
}

TEST(TokenizeWords, NonAsciiBytesSeparate) {
  EXPECT_EQ(tokenize_words("caf\xc3\xa9 ol\xc3\xa9"), (Strings{"caf", "ol"}));
}

TEST(TokenizeWords, CountWordsAgreesWithTokenizer) {
  for (const char* s : {"", "a", "The cat, sat.", "x--y z", "3.5 mg/kg of drug"})
    EXPECT_EQ(count_words(s), tokenize_words(s).size()) << s;
}

// Reference stems produced by NLTK's PorterStemmer in ORIGINAL_ALGORITHM
// mode, frozen into tests/data/porter_reference.txt. That mode strips the
// "s" of two-letter words ("is" -> "i"); like Porter's own C release we
// leave words of two letters or fewer alone, so those rows are skipped.
TEST(PorterStem, MatchesFrozenReference) {
  std::ifstream in(FACTORSUM_TEST_DATA "/porter_reference.txt");
  ASSERT_TRUE(in) << "missing porter_reference.txt";
  std::string word;
  std::string expected;
  int n = 0;
  while (in >> word >> expected) {
    if (word.size() <= 2) continue;
    EXPECT_EQ(porter_stem(word), expected) << word;
    ++n;
  }
  EXPECT_GT(n, 100);
}

TEST(PorterStem, ShortWordsUnchanged) {
  EXPECT_EQ(porter_stem("as"), "as");
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("a"), "a");
}

TEST(SplitSentences, TerminalPeriods) {
  EXPECT_EQ(split_sentences("A. B."), (Strings{"A.", "B."}));
}

TEST(SplitSentences, DecimalsDoNotSplit) {
  EXPECT_EQ(split_sentences("He got 3.5 mg. Then left."),
            (Strings{"He got 3.5 mg.", "Then left."}));
}

TEST(SplitSentences, NoTerminator) {
  EXPECT_EQ(split_sentences("no terminator"), (Strings{"no terminator"}));
}

TEST(SplitSentences, EmptyAndBlank) {
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_TRUE(split_sentences("   \n ").empty());
}

TEST(SplitSentences, ConcatenationPreservesText) {
  const std::string text =
      "First one.  Second one!\nThird (really?) one... Fourth \"quoted.\" Fifth";
  std::string glued;
  for (const auto& s : split_sentences(text)) {
    EXPECT_FALSE(s.empty());
    glued += s;
  }
  std::string squeezed;
  for (char c : text)
    if (c != ' ' && c != '\n') squeezed.push_back(c);
  std::string glued_squeezed;
  for (char c : glued)
    if (c != ' ') glued_squeezed.push_back(c);
  EXPECT_EQ(glued_squeezed, squeezed);
}

// Hand-labelled sample: 50 sentences in scientific/news register with
// abbreviations, decimals, initials, quotes and brackets.
TEST(SplitSentences, HandLabelledSample) {
  const Strings gold = {
      "We enrolled 120 patients between 2010 and 2015.",
      "The mean age was 54.3 years (SD 11.2).",
      "Dr. Smith performed all procedures.",
      "Results are shown in Fig. 2 and Table 3.",
      "Expression increased 2.5-fold after treatment.",
      "This agrees with Wang et al. (2019) and others.",
      "Is the effect causal?",
      "We believe so!",
      "Samples were stored at -80 C. until analysis.",
      "Mice received 0.1 mg/kg daily.",
      "The U.S. cohort was smaller.",
      "Several markers, e.g. IL-6 and TNF, were elevated.",
      "Adverse events (i.e. nausea) were rare.",
      "Follow-up lasted 12 months.",
      "J. R. Tolkien is not an author of this study.",
      "The p-value was 0.003.",
      "\"It works,\" the authors wrote.",
      "The trial stopped early.",
      "See Eq. 4 for the full model.",
      "Prof. Lee supervised the analysis.",
      "The device costs approx. 300 dollars.",
      "Patients were randomized 1:1.",
      "No. 7 was the outlier.",
      "Outcomes improved in both arms.",
      "Table 1 lists baseline characteristics.",
      "Mr. and Mrs. Jones consented.",
      "The response rate was 45.2%.",
      "Why did the second cohort differ?",
      "Recruitment was slower than expected.",
      "Data are available on request.",
      "Vol. 12 of the journal covers this topic.",
      "A total of 3.14159 units were used.",
      "Treatment lasted (on average) 6 weeks.",
      "The model was fit with R version 4.1.2 software.",
      "Remarkably, no deaths occurred!",
      "Three sites withdrew.",
      "Inclusion criteria are described in Sec. 2 of the appendix.",
      "Cells were imaged every 0.5 s.",
      "This was unexpected.",
      "Results from St. Louis were consistent.",
      "The dose was escalated to 10 mg.",
      "Effects persisted after 1 yr.",
      "Limitations include sample size.",
      "Future work will extend the cohort.",
      "Funding was provided by the institute.",
      "All authors approved the final text.",
      "The code is public.",
      "Questions remain open.",
      "We thank the participants.",
      "The end.",
  };
  ASSERT_EQ(gold.size(), 50u);
  std::string text;
  for (const auto& s : gold) text += (text.empty() ? "" : " ") + s;
  EXPECT_EQ(split_sentences(text), gold);
}

TEST(Join, JoinsWithSeparator) {
  EXPECT_EQ(join({"a", "b", "c"}), "a b c");
  EXPECT_EQ(join({"a", "b"}, "\n"), "a\nb");
  EXPECT_EQ(join({}), "");
}

}  // namespace
}  // namespace factorsum
