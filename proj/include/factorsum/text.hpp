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
#include <iterator>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace factorsum {

/// Ordered lowercase word tokens. Never contains empty strings.
using TokenSeq = std::vector<std::string>;

namespace detail {

inline bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Porter (1980) suffix stripper, original algorithm. Operates on a lowercase
// ASCII word held in a buffer; `end_` is the index of the last character.
class PorterStemmer {
 public:
  std::string stem(std::string_view word) {
    b_.assign(word.begin(), word.end());
    if (b_.size() <= 2) return b_;
    end_ = static_cast<int>(b_.size()) - 1;
    step1ab();
    if (end_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(static_cast<std::size_t>(end_) + 1);
    return b_;
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0..j_].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_cons(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > end_ + 1) return false;
    if (std::string_view(b_).substr(end_ - len + 1, len) != s) return false;
    j_ = end_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    const int len = static_cast<int>(s.size());
    b_.resize(static_cast<std::size_t>(j_) + 1);
    b_.append(s);
    end_ = j_ + len;
  }

  void r(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (b_[end_] == 's') {
      if (ends("sses")) {
        end_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_[end_ - 1] != 's') {
        --end_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --end_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      end_ = j_;
      b_.resize(static_cast<std::size_t>(end_) + 1);
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(end_)) {
        const char ch = b_[end_];
        if (ch != 'l' && ch != 's' && ch != 'z') --end_;
      } else {
        j_ = end_;
        if (m() == 1 && cvc(end_)) set_to("e");
      }
    }
    b_.resize(static_cast<std::size_t>(end_) + 1);
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[end_] = 'i';
  }

  void step2() {
    if (end_ < 1) return;
    switch (b_[end_ - 1]) {
      case 'a':
        if (ends("ational")) { r("ate"); break; }
        if (ends("tional")) { r("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { r("ence"); break; }
        if (ends("anci")) { r("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { r("ize"); break; }
        break;
      case 'l':
        if (ends("abli")) { r("able"); break; }
        if (ends("alli")) { r("al"); break; }
        if (ends("entli")) { r("ent"); break; }
        if (ends("eli")) { r("e"); break; }
        if (ends("ousli")) { r("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { r("ize"); break; }
        if (ends("ation")) { r("ate"); break; }
        if (ends("ator")) { r("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { r("al"); break; }
        if (ends("iveness")) { r("ive"); break; }
        if (ends("fulness")) { r("ful"); break; }
        if (ends("ousness")) { r("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { r("al"); break; }
        if (ends("iviti")) { r("ive"); break; }
        if (ends("biliti")) { r("ble"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[end_]) {
      case 'e':
        if (ends("icate")) { r("ic"); break; }
        if (ends("ative")) { r(""); break; }
        if (ends("alize")) { r("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { r("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { r("ic"); break; }
        if (ends("ful")) { r(""); break; }
        break;
      case 's':
        if (ends("ness")) { r(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (end_ < 1) return;
    switch (b_[end_ - 1]) {
      case 'a':
        if (ends("al")) break;
        return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e':
        if (ends("er")) break;
        return;
      case 'i':
        if (ends("ic")) break;
        return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
        if (ends("ou")) break;
        return;
      case 's':
        if (ends("ism")) break;
        return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u':
        if (ends("ous")) break;
        return;
      case 'v':
        if (ends("ive")) break;
        return;
      case 'z':
        if (ends("ize")) break;
        return;
      default:
        return;
    }
    if (m() > 1) end_ = j_;
  }

  void step5() {
    j_ = end_;
    if (b_[end_] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(end_ - 1))) --end_;
    }
    j_ = end_;
    if (b_[end_] == 'l' && double_cons(end_) && m() > 1) --end_;
  }

  std::string b_;
  int end_ = 0;
  int j_ = 0;
};

}  // namespace detail

/// Porter-stems a single lowercase ASCII token. Tokens of length <= 2 are
/// returned unchanged.
inline std::string porter_stem(std::string_view token) {
  detail::PorterStemmer stemmer;
  return stemmer.stem(token);
}

/// Lowercases `text`, treats every non-[a-z0-9] byte as a separator and
/// returns the remaining words, Porter-stemmed when `stem` is set.
inline TokenSeq tokenize_words(std::string_view text, bool stem = false) {
  TokenSeq out;
  std::string cur;
  detail::PorterStemmer stemmer;
  auto flush = [&] {
    if (cur.empty()) return;
    out.push_back(stem ? stemmer.stem(cur) : cur);
    cur.clear();
  };
  for (char c : text) {
    if (detail::is_ascii_alnum(c)) {
      cur.push_back(detail::ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

/// Number of words in `text` under the unstemmed tokenizer.
inline std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool alnum = detail::is_ascii_alnum(c);
    if (alnum && !in_word) ++n;
    in_word = alnum;
  }
  return n;
}

namespace detail {

// Lowercased tokens (without the trailing period) after which a period does
// not end a sentence.
inline constexpr std::string_view kAbbreviations[] = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "sr",    "jr",   "st",
    "vs",   "etc",  "e.g",  "i.e",  "al",   "fig",   "figs", "eq",
    "eqs",  "ref",  "refs", "no",   "vol",  "pp",    "approx", "ca",
    "cf",   "inc",  "ltd",  "co",   "corp", "dept",  "univ", "jan",
    "feb",  "mar",  "apr",  "jun",  "jul",  "aug",   "sep",  "sept",
    "oct",  "nov",  "dec",  "gen",  "u.s",  "tab",  "sec",  "secs"};

inline std::string_view strip_leading_punct(std::string_view word) {
  while (!word.empty() && !is_ascii_alnum(word.front())) word.remove_prefix(1);
  return word;
}

inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

inline bool is_initial(std::string_view word) {
  word = strip_leading_punct(word);
  return word.size() == 1 && is_upper(word[0]);
}

// After an initial ending at `pos`: the period is not a boundary when the
// text continues in lowercase ("80 C. until") or, past any further
// initials, with a capitalised name ("J. R. Tolkien").
inline bool initial_continues(std::string_view text, std::size_t pos) {
  const std::size_t n = text.size();
  auto skip_space = [&](std::size_t k) {
    while (k < n && is_space(text[k])) ++k;
    return k;
  };
  std::size_t k = skip_space(pos);
  if (k >= n) return false;
  if (is_lower(text[k])) return true;
  while (k + 1 < n && is_upper(text[k]) && text[k + 1] == '.' &&
         (k + 2 >= n || is_space(text[k + 2])))
    k = skip_space(k + 2);
  return k + 1 < n && is_upper(text[k]) && is_lower(text[k + 1]);
}

inline bool is_abbreviation(std::string_view word) {
  // strip leading punctuation such as "(" or quotes
  word = strip_leading_punct(word);
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) lower.push_back(ascii_lower(c));
  return std::find(std::begin(kAbbreviations), std::end(kAbbreviations), lower) !=
         std::end(kAbbreviations);
}

inline bool is_closing(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Rule-based sentence splitter. A boundary is a run of `.`, `!` or `?`
/// (optionally followed by closing quotes or brackets) that is followed by
/// whitespace, where a lone `.` after a known abbreviation or a single
/// letter does not count. Newlines that separate non-empty text are also
/// boundaries.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = detail::trim(text.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
  };
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      emit(i);
      ++i;
      continue;
    }
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    bool only_period = true;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) {
      if (text[j] != '.') only_period = false;
      ++j;
    }
    const bool single_period = only_period && j == i + 1;
    while (j < n && detail::is_closing(text[j])) ++j;
    if (j < n && !detail::is_space(text[j])) {
      i = j;
      continue;
    }
    if (single_period) {
      std::size_t w = i;
      while (w > start && !detail::is_space(text[w - 1])) --w;
      const std::string_view word = text.substr(w, i - w);
      if (detail::is_abbreviation(word) ||
          (detail::is_initial(word) && detail::initial_continues(text, j))) {
        i = j;
        continue;
      }
    }
    emit(j);
    i = j;
  }
  emit(n);
  return out;
}

/// Joins strings with a single space.
inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

/// True when `s` has no non-whitespace character.
inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), detail::is_space);
}

}  // namespace factorsum
