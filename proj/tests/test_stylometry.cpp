#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "urdet/stylometry.hpp"

namespace urdet::stylometry {
namespace {

template <typename F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

TEST(ExtractFeatures, TwoSentenceExample) {
  const auto f = extract_features(std::string_view("یہ کتاب ہے۔ یہ اچھی ہے۔"));
  EXPECT_EQ(f.word_count, 6u);
  EXPECT_EQ(f.sentence_count, 2u);
  // یہ, کتاب, ہے, یہ, اچھی, ہے: four distinct forms.
  EXPECT_DOUBLE_EQ(f.ttr, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(f.sentence_length_std, 0.0);
  EXPECT_DOUBLE_EQ(f.avg_sentence_length, 3.0);
  EXPECT_EQ(f.char_count, 23u);
  EXPECT_DOUBLE_EQ(f.punctuation_density, 2.0 / 23.0);
  // letters: 2+4+2+2+4+2
  EXPECT_DOUBLE_EQ(f.avg_word_length, 16.0 / 6.0);
  // bigrams: (یہ کتاب)(کتاب ہے)(ہے یہ)(یہ اچھی)(اچھی ہے): all distinct
  EXPECT_DOUBLE_EQ(*f.bigram_uniqueness, 1.0);
  EXPECT_DOUBLE_EQ(*f.trigram_uniqueness, 1.0);
}

TEST(ExtractFeatures, SingleWord) {
  const auto f = extract_features(std::string_view("کتاب"));
  EXPECT_EQ(f.word_count, 1u);
  EXPECT_EQ(f.sentence_count, 1u);
  EXPECT_DOUBLE_EQ(f.ttr, 1.0);
  EXPECT_DOUBLE_EQ(f.sentence_length_std, 0.0);
  EXPECT_FALSE(f.bigram_uniqueness.has_value());
  EXPECT_FALSE(f.trigram_uniqueness.has_value());
  EXPECT_FALSE(metric(f, "bigram_uniqueness").has_value());
}

TEST(ExtractFeatures, RepeatedWord) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += i ? " کتاب" : "کتاب";
  const auto f = extract_features(std::string_view(text));
  EXPECT_DOUBLE_EQ(f.ttr, 0.1);
  EXPECT_DOUBLE_EQ(*f.bigram_uniqueness, 1.0 / 9.0);
}

TEST(ExtractFeatures, UnevenSentences) {
  // 1 word then 3 words: population std is 1.
  const auto f = extract_features(std::string_view("الف۔ ب ج د؟"));
  EXPECT_EQ(f.sentence_count, 2u);
  EXPECT_DOUBLE_EQ(f.avg_sentence_length, 2.0);
  EXPECT_DOUBLE_EQ(f.sentence_length_std, 1.0);
}

TEST(ExtractFeatures, NoWordsIsAnError) {
  EXPECT_EQ(error_of([] { extract_features(std::string_view("۔ ، ؟")); }), ErrorKind::NoWords);
  EXPECT_EQ(error_of([] { extract_features(std::string_view("")); }), ErrorKind::NoWords);
}

TEST(ExtractFeatures, DegenerateCharacterRatios) {
  EXPECT_DOUBLE_EQ(extract_features(std::string_view("ب")).char_diversity, 1.0);
  EXPECT_DOUBLE_EQ(extract_features(std::string_view("یہ کتاب ہے")).punctuation_density, 0.0);
}

TEST(TypeTokenRatio, Examples) {
  EXPECT_NEAR(type_token_ratio(std::vector<std::string>{"الف", "ب", "الف"}), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(type_token_ratio(std::vector<std::string>{"الف", "ب", "ج"}), 1.0);
  EXPECT_EQ(error_of([] { type_token_ratio(std::vector<std::string>{}); }), ErrorKind::NoWords);
}

TEST(NgramTable, Examples) {
  const auto t = ngram_table({"ا", "ب", "ا", "ب"}, 2);
  EXPECT_EQ(t.total, 3u);
  EXPECT_EQ(t.unique, 2u);
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.entries[0].gram, (std::vector<std::string>{"ا", "ب"}));
  EXPECT_EQ(t.entries[0].frequency, 2u);
  EXPECT_EQ(t.entries[1].frequency, 1u);

  const auto d = ngram_table({"a", "b", "c", "d", "e"}, 2);
  EXPECT_EQ(d.total, 4u);
  EXPECT_EQ(d.unique, 4u);

  EXPECT_EQ(error_of([] { ngram_table({"ا"}, 2); }), ErrorKind::TooShort);
}

TEST(NgramTable, TiesAreLexicographicAndLimitKeepsTotals) {
  NgramCounter c(1);
  c.add({"c", "b", "a", "b"});
  const auto t = c.table(2);
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.entries[0].gram[0], "b");
  EXPECT_EQ(t.entries[1].gram[0], "a");
  EXPECT_EQ(t.total, 4u);
  EXPECT_EQ(t.unique, 3u);
}

TEST(NgramCounter, WindowsDoNotCrossSequences) {
  NgramCounter c(2);
  c.add({"a", "b"});
  c.add({"c", "d"});
  EXPECT_EQ(c.table().total, 2u);
}

TEST(CorpusSummary, TwoTextExample) {
  const auto s = corpus_summary({{"1", "الف ب", Label::human}, {"2", "الف ج", Label::human}});
  const auto& g = s.groups.at(Label::human);
  EXPECT_EQ(g.total_texts, 2u);
  EXPECT_EQ(g.total_words, 4u);
  EXPECT_EQ(g.unique_words, 3u);
  EXPECT_DOUBLE_EQ(g.vocabulary_richness, 2.0);
  EXPECT_DOUBLE_EQ(g.avg_words_per_text, 2.0);
}

TEST(CorpusSummary, SingleTextAveragesEqualItsValues) {
  const auto s = corpus_summary({{"1", "یہ کتاب ہے۔", Label::ai}});
  const auto& g = s.groups.at(Label::ai);
  EXPECT_DOUBLE_EQ(g.avg_text_length, 11.0);
  EXPECT_DOUBLE_EQ(g.avg_words_per_text, 3.0);
  EXPECT_DOUBLE_EQ(g.vocabulary_richness, 3.0);
  EXPECT_EQ(s.groups.count(Label::human), 0u);
}

TEST(CorpusSummary, SkipsWordlessDocuments) {
  const auto s = corpus_summary({{"1", "؟", Label::ai}, {"2", "الف", Label::ai}});
  ASSERT_EQ(s.skipped.size(), 1u);
  EXPECT_EQ(s.skipped[0].id, "1");
  EXPECT_EQ(s.groups.at(Label::ai).total_texts, 1u);
}

// ---------------------------------------------------------------------------
// Properties on synthetic text (letters, single spaces, ۔ after some words)

struct NaiveCounts {
  std::vector<std::u32string> words;
  std::vector<size_t> sentence_lengths;
};

NaiveCounts naive_counts(const std::u32string& s) {
  NaiveCounts out;
  size_t in_sentence = 0;
  std::u32string word;
  for (size_t i = 0; i <= s.size(); ++i) {
    const char32_t c = i < s.size() ? s[i] : U' ';
    if (c == U' ') {
      if (!word.empty()) out.words.push_back(word), ++in_sentence;
      word.clear();
    } else if (c == U'۔') {
      if (!word.empty()) out.words.push_back(word), ++in_sentence;
      word.clear();
      if (in_sentence) out.sentence_lengths.push_back(in_sentence);
      in_sentence = 0;
    } else {
      word.push_back(c);
    }
  }
  if (in_sentence) out.sentence_lengths.push_back(in_sentence);
  return out;
}

TEST(FeatureProperties, AgreeWithNaiveCountsOnSyntheticText) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = oracle::synthetic_text(rng, 5 + rng() % 400, 8);
    const auto naive = naive_counts(s);
    const auto f = extract_features(std::u32string_view(s));
    ASSERT_EQ(f.word_count, naive.words.size());
    ASSERT_EQ(f.sentence_count, naive.sentence_lengths.size());
    const std::set<std::u32string> types(naive.words.begin(), naive.words.end());
    EXPECT_DOUBLE_EQ(f.ttr, static_cast<double>(types.size()) / static_cast<double>(naive.words.size()));
    const size_t n = naive.words.size();
    if (n >= 2) {
      std::set<std::pair<std::u32string, std::u32string>> bigrams;
      for (size_t k = 0; k + 1 < n; ++k) bigrams.insert({naive.words[k], naive.words[k + 1]});
      EXPECT_DOUBLE_EQ(*f.bigram_uniqueness, static_cast<double>(bigrams.size()) / static_cast<double>(n - 1));
    }
    const std::set<char32_t> chars(s.begin(), s.end());
    EXPECT_DOUBLE_EQ(f.char_diversity, static_cast<double>(chars.size()) / static_cast<double>(s.size()));
    for (auto v : {f.ttr, f.char_diversity}) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(f.punctuation_density, 0.0);
    EXPECT_LT(f.punctuation_density, 1.0);
  }
}

TEST(FeatureProperties, DuplicatingTokensNeverRaisesTtr) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto tokens = text::tokenize_words(std::u32string_view(oracle::synthetic_text(rng, 3 + rng() % 200, 4)));
    if (tokens.empty()) continue;
    auto doubled = tokens;
    doubled.insert(doubled.end(), tokens.begin(), tokens.end());
    EXPECT_LE(type_token_ratio(doubled), type_token_ratio(tokens) / 2.0 + 1e-15);
  }
}

TEST(FeatureProperties, NgramUniqueBoundedByTotal) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto s = oracle::synthetic_text(rng, 3 + rng() % 200, 3);
    std::vector<std::string> tokens;
    for (const auto& t : text::tokenize_words(std::u32string_view(s))) tokens.push_back(unicode::to_utf8(t));
    for (size_t n : {1u, 2u, 3u}) {
      if (tokens.size() < n) continue;
      const auto t = ngram_table(tokens, n);
      EXPECT_EQ(t.total, tokens.size() - n + 1);
      EXPECT_LE(t.unique, t.total);
      size_t sum = 0;
      for (const auto& e : t.entries) sum += e.frequency;
      EXPECT_EQ(sum, t.total);
    }
  }
}

TEST(FeatureProperties, CorpusSummaryIgnoresOrder) {
  std::mt19937_64 rng(8);
  std::vector<LabeledText> docs;
  for (int i = 0; i < 30; ++i) {
    docs.push_back({std::to_string(i), unicode::to_utf8(oracle::synthetic_text(rng, 20 + rng() % 100, 5)),
                    i % 3 ? Label::human : Label::ai});
  }
  const auto a = corpus_summary(docs);
  std::shuffle(docs.begin(), docs.end(), rng);
  const auto b = corpus_summary(docs);
  for (auto label : {Label::human, Label::ai}) {
    const auto& x = a.groups.at(label);
    const auto& y = b.groups.at(label);
    EXPECT_EQ(x.total_words, y.total_words);
    EXPECT_EQ(x.unique_words, y.unique_words);
    EXPECT_EQ(x.total_chars, y.total_chars);
    EXPECT_DOUBLE_EQ(x.vocabulary_richness, y.vocabulary_richness);
  }
}

}  // namespace
}  // namespace urdet::stylometry
